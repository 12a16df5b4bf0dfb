#include "hreg/eos.hpp"

#include <cmath>
#include <string>

#include "hreg/errors.hpp"

namespace hreg {

namespace {

void require_density(double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw DomainError("density must be positive and finite, got " + std::to_string(rho));
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(what) + " must be > 0");
}

}  // namespace

EquationOfState::EquationOfState(EosKind kind, double gamma, double rho_bar, double p_bar, double g)
    : kind_(kind), gamma_(gamma), rho_bar_(rho_bar), p_bar_(p_bar), g_(g) {
    w_bar_ = (kind == EosKind::isothermal ? 1.0 : gamma) * p_bar / rho_bar;
}

EquationOfState EquationOfState::isentropic(double gamma, double rho_bar, double p_bar) {
    require_positive(gamma, "gamma");
    if (gamma == 1.0) throw DomainError("gamma must differ from 1 (use the isothermal law)");
    require_positive(rho_bar, "rho_bar");
    require_positive(p_bar, "p_bar");
    return {EosKind::isentropic, gamma, rho_bar, p_bar, 0.0};
}

EquationOfState EquationOfState::isothermal(double rho_bar, double p_bar) {
    require_positive(rho_bar, "rho_bar");
    require_positive(p_bar, "p_bar");
    return {EosKind::isothermal, 1.0, rho_bar, p_bar, 0.0};
}

EquationOfState EquationOfState::shallow_water(double g, double rho_bar) {
    require_positive(g, "g");
    require_positive(rho_bar, "rho_bar");
    return {EosKind::shallow_water, 2.0, rho_bar, 0.5 * g * rho_bar * rho_bar, g};
}

double EquationOfState::pressure(double rho) const {
    require_density(rho);
    const double x = rho / rho_bar_;
    return polytropic() ? p_bar_ * std::pow(x, gamma_) : p_bar_ * x;
}

double EquationOfState::dpressure(double rho) const {
    require_density(rho);
    if (!polytropic()) return w_bar_;
    return w_bar_ * std::pow(rho / rho_bar_, gamma_ - 1.0);
}

double EquationOfState::d2pressure(double rho) const {
    require_density(rho);
    if (!polytropic()) return 0.0;
    return w_bar_ * (gamma_ - 1.0) / rho_bar_ * std::pow(rho / rho_bar_, gamma_ - 2.0);
}

double EquationOfState::enthalpy(double rho) const {
    require_density(rho);
    const double lx = std::log(rho / rho_bar_);
    if (!polytropic()) return w_bar_ * lx;
    // expm1 keeps gamma close to 1 accurate
    return w_bar_ * std::expm1((gamma_ - 1.0) * lx) / (gamma_ - 1.0);
}

double EquationOfState::potential(double rho) const {
    require_density(rho);
    const double x = rho / rho_bar_;
    if (!polytropic()) return p_bar_ * (x * std::log(x) - x + 1.0);
    // d/drho (rho w - P) = w, and the combination vanishes at rho_bar
    return rho * enthalpy(rho) - (pressure(rho) - p_bar_);
}

PotentialDerivatives EquationOfState::potential_derivatives(double rho) const {
    const double dp = dpressure(rho);
    const double d2p = d2pressure(rho);
    return {enthalpy(rho), dp / rho, (d2p * rho - dp) / (rho * rho)};
}

double EquationOfState::sound_speed(double rho) const { return std::sqrt(dpressure(rho)); }

}  // namespace hreg

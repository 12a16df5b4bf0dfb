#include "hreg/regularizer.hpp"

#include <cmath>
#include <string>

#include "hreg/errors.hpp"

namespace hreg {

namespace {

void require_epsilon(double eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("epsilon must be >= 0");
}

}  // namespace

Regulariser Regulariser::cubic(double epsilon) {
    require_epsilon(epsilon);
    return {RegKind::cubic, epsilon, 0.0, 3.0, 1.0};
}

Regulariser Regulariser::inverse(double a, double rho_bar, double epsilon) {
    require_epsilon(epsilon);
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a must be > 0");
    if (!(rho_bar > 0.0) || !std::isfinite(rho_bar)) throw DomainError("rho_bar must be > 0");
    return {RegKind::inverse, epsilon, a, -1.0, rho_bar};
}

Regulariser Regulariser::power(double p, double epsilon) {
    require_epsilon(epsilon);
    if (p == 0.0 || !std::isfinite(p)) throw DomainError("p must be nonzero");
    return {RegKind::power, epsilon, 0.0, p, 1.0};
}

Regulariser Regulariser::with_epsilon(double epsilon) const {
    require_epsilon(epsilon);
    Regulariser r = *this;
    r.epsilon_ = epsilon;
    return r;
}

Regulariser Regulariser::negated() const {
    Regulariser r = *this;
    r.sign_ = -sign_;
    return r;
}

RegDerivatives Regulariser::derivatives(double rho) const {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw DomainError("density must be positive and finite, got " + std::to_string(rho));
    RegDerivatives d{};
    switch (kind_) {
        case RegKind::cubic:
            d = {rho * rho * rho / 6.0, 0.5 * rho * rho, rho, 1.0};
            break;
        case RegKind::inverse: {
            const double c = a_ * rho_bar_;
            const double r2 = rho * rho;
            d = {-c / rho, c / r2, -2.0 * c / (r2 * rho), 6.0 * c / (r2 * r2)};
            break;
        }
        case RegKind::power: {
            const double a1 = std::pow(rho, p_ - 1.0);
            d = {a1 * rho / p_, a1, (p_ - 1.0) * a1 / rho, (p_ - 1.0) * (p_ - 2.0) * a1 / (rho * rho)};
            break;
        }
    }
    if (sign_ < 0.0) d = {-d.a, -d.a1, -d.a2, -d.a3};
    return d;
}

CompositeCoefficients composite_coefficients(const Regulariser& reg, const EquationOfState& eos,
                                             double rho) {
    const auto a = reg.derivatives(rho);
    const auto v = eos.potential_derivatives(rho);
    return {2.0 * rho * a.a1 + rho * rho * a.a2, (v.second + rho * v.third) * a.a1 - rho * v.second * a.a2};
}

}  // namespace hreg

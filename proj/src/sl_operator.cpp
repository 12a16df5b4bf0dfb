#include "hreg/sl_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hreg/errors.hpp"

namespace hreg {

namespace {

Field kappa_of(const Field& rho, const Regulariser& reg) {
    std::vector<double> k(rho.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = rho[i] * reg.derivatives(rho[i]).a1;
    Ghosts g{};
    if (!rho.grid().is_periodic()) {
        g.left = rho.ghosts().left * reg.derivatives(rho.ghosts().left).a1;
        g.right = rho.ghosts().right * reg.derivatives(rho.ghosts().right).a1;
    }
    return Field(rho.grid(), std::move(k), g);
}

const Field& check_positive(const Field& rho) {
    for (std::size_t i = 0; i < rho.size(); ++i)
        if (!(rho[i] > 0.0))
            throw VacuumError("vacuum: density " + std::to_string(rho[i]) + " at node " + std::to_string(i));
    if (!rho.grid().is_periodic() && !(rho.ghosts().left > 0.0 && rho.ghosts().right > 0.0))
        throw VacuumError("vacuum: non-positive far-field density");
    return rho;
}

}  // namespace

SLSystem::SLSystem(const Field& rho, const Regulariser& reg, bool factorise)
    : rho_(check_positive(rho)), kappa_(kappa_of(rho, reg)), eps_(reg.epsilon()) {
    const std::size_t n = rho.size();
    const double c = 2.0 * eps_ / (grid().dx() * grid().dx());
    lower_.resize(n);
    diag_.resize(n);
    upper_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::ptrdiff_t>(i);
        const double km = 0.5 * (kappa_.extended(j - 1) + kappa_[i]);
        const double kp = 0.5 * (kappa_[i] + kappa_.extended(j + 1));
        lower_[i] = -c * km;
        upper_[i] = -c * kp;
        diag_[i] = rho[i] + c * (km + kp);
    }
    if (!factorise) return;

    std::vector<double> b = diag_;
    double gamma = 0.0;
    if (grid().is_periodic()) {
        gamma = -diag_[0];
        b[0] -= gamma;
        b[n - 1] -= upper_[n - 1] * lower_[0] / gamma;
    }
    cprime_.resize(n);
    inv_denom_.resize(n);
    double cp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double den = b[i] - (i > 0 ? lower_[i] * cp : 0.0);
        if (!(std::abs(den) > 0.0) || !std::isfinite(den))
            throw NumericalBreakdown("zero pivot in tridiagonal factorisation at row " + std::to_string(i));
        inv_denom_[i] = 1.0 / den;
        cp = (i + 1 < n ? upper_[i] : 0.0) * inv_denom_[i];
        cprime_[i] = cp;
    }
    if (grid().is_periodic()) {
        std::vector<double> u(n, 0.0);
        u[0] = gamma;
        u[n - 1] = upper_[n - 1];
        z_ = thomas(std::move(u));
        corner_beta_over_gamma_ = lower_[0] / gamma;
        sm_denominator_ = 1.0 + z_[0] + corner_beta_over_gamma_ * z_[n - 1];
        if (!(std::abs(sm_denominator_) > 0.0))
            throw NumericalBreakdown("singular rank-one correction in cyclic solve");
    }
}

std::vector<double> SLSystem::thomas(std::vector<double> d) const {
    const std::size_t n = d.size();
    d[0] *= inv_denom_[0];
    for (std::size_t i = 1; i < n; ++i) d[i] = (d[i] - lower_[i] * d[i - 1]) * inv_denom_[i];
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= cprime_[i] * d[i + 1];
    return d;
}

Field SLSystem::apply(const Field& u) const {
    if (u.grid() != grid()) throw UsageError("field and operator live on different grids");
    const std::size_t n = u.size();
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::ptrdiff_t>(i);
        r[i] = lower_[i] * u.extended(j - 1) + diag_[i] * u[i] + upper_[i] * u.extended(j + 1);
    }
    Ghosts g{};
    if (!grid().is_periodic()) g = {rho_.ghosts().left * u.ghosts().left, rho_.ghosts().right * u.ghosts().right};
    return Field(grid(), std::move(r), g);
}

Field SLSystem::solve(const Field& f) const {
    if (f.grid() != grid()) throw UsageError("field and operator live on different grids");
    if (inv_denom_.empty()) throw UsageError("operator was assembled without factorisation");
    const std::size_t n = f.size();
    std::vector<double> d = f.vector();
    Ghosts g{};
    if (!grid().is_periodic()) {
        g = {f.ghosts().left / rho_.ghosts().left, f.ghosts().right / rho_.ghosts().right};
        d[0] -= lower_[0] * g.left;
        d[n - 1] -= upper_[n - 1] * g.right;
    }
    std::vector<double> x = thomas(std::move(d));
    if (grid().is_periodic()) {
        const double s = (x[0] + corner_beta_over_gamma_ * x[n - 1]) / sm_denominator_;
        for (std::size_t i = 0; i < n; ++i) x[i] -= s * z_[i];
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(x[i])) throw NumericalBreakdown("non-finite value in tridiagonal solve");
    Field u(grid(), std::move(x), g);

    const Field r = apply(u);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(r[i] - f[i]));
    if (res > 1e-10 * f.max_abs())
        throw NumericalBreakdown("solve residual " + std::to_string(res) + " exceeds tolerance");
    return u;
}

Field SLSystem::solve_dx(const Field& psi) const { return solve(ddx(psi)); }

Field SLSystem::apply_J(const Field& psi) const {
    if (eps_ == 0.0) return psi;
    const Field w = ddx(solve_dx(psi));
    std::vector<double> r(psi.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = psi[i] + 2.0 * eps_ * kappa_[i] * w[i];
    return Field(grid(), std::move(r), psi.ghosts());
}

SLSystem assemble(const Field& rho, const Regulariser& reg) { return SLSystem(rho, reg); }

double kernel_J(double xi, double width) { return std::exp(-std::abs(xi) / width) / (2.0 * width); }

Field convolution_R_special(const Field& upsilon, const EquationOfState& eos, const Regulariser& reg) {
    if (reg.kind() != RegKind::inverse || reg.sign() < 0.0)
        throw UsageError("the convolution form needs the inverse regulariser family");
    const auto& g = upsilon.grid();
    const std::size_t n = upsilon.size();
    std::vector<double> rho(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(upsilon[i] > 0.0)) throw DomainError("specific volume must be > 0");
        rho[i] = 1.0 / upsilon[i];
    }
    Ghosts rg{};
    if (!g.is_periodic()) rg = {1.0 / upsilon.ghosts().left, 1.0 / upsilon.ghosts().right};
    const Field rho_f(g, rho, rg);
    const Field rxi = ddx(rho_f);
    const double arb = reg.a() * reg.rho_bar();
    std::vector<double> src(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = eos.potential_derivatives(rho[i]);
        src[i] = arb * (rho[i] * v.third + 3.0 * v.second) * rxi[i] * rxi[i];
    }
    const double width = std::sqrt(2.0 * reg.epsilon() * arb);
    if (width == 0.0) return Field(g, std::move(src));

    const double h = g.dx();
    const auto reach = static_cast<std::ptrdiff_t>(std::ceil(40.0 * width / h));
    const auto N = static_cast<std::ptrdiff_t>(n);
    std::vector<double> R(n, 0.0);
    for (std::ptrdiff_t i = 0; i < N; ++i) {
        double s = 0.0;
        for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - reach); j <= std::min(N - 1, i + reach); ++j)
            s += kernel_J(static_cast<double>(i - j) * h, width) * src[static_cast<std::size_t>(j)];
        R[static_cast<std::size_t>(i)] = s * h;
    }
    return Field(g, std::move(R));
}

}  // namespace hreg

#include "hreg/ghs_solver.hpp"

#include <algorithm>
#include <cmath>

#include "hreg/errors.hpp"
#include "hreg/sl_operator.hpp"
#include "run_loop.hpp"

namespace hreg {

double Forcing::operator()(double t) const {
    if (table.empty()) return constant;
    if (t <= table.front().first) return table.front().second;
    if (t >= table.back().first) return table.back().second;
    const auto hi = std::upper_bound(table.begin(), table.end(), t,
                                     [](double x, const auto& p) { return x < p.first; });
    const auto lo = hi - 1;
    const double w = (t - lo->first) / (hi->first - lo->first);
    return (1.0 - w) * lo->second + w * hi->second;
}

namespace {

void require_periodic(const GhsState& s) {
    if (!s.rho.grid().is_periodic()) throw UsageError("the gHS system is solved on periodic grids only");
    for (std::size_t i = 0; i < s.rho.size(); ++i)
        if (!(s.rho[i] > 0.0)) throw VacuumError("vacuum: density " + std::to_string(s.rho[i]));
}

}  // namespace

Field ghs_source(const GhsState& s, const Regulariser& reg, const EquationOfState& eos) {
    require_periodic(s);
    const Field du = ddx(s.u);
    const Field dr = ddx(s.rho);
    std::vector<double> src(s.rho.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double r = s.rho[i];
        const auto a = reg.derivatives(r);
        const auto v = eos.potential_derivatives(r);
        // A''/A' is unchanged by A -> -A
        const double q = a.a2 / a.a1;
        src[i] = (1.0 + 0.5 * r * q) * du[i] * du[i] + ((v.second + r * v.third) / (2.0 * r) - 0.5 * v.second * q) * dr[i] * dr[i];
    }
    return Field(s.rho.grid(), std::move(src));
}

Rates ghs_rhs(const GhsState& s, const Regulariser& reg, const EquationOfState& eos, const Forcing& g) {
    const Field src = ghs_source(s, reg, eos);
    Rates base = classical_rhs(s, eos);
    const std::size_t n = s.rho.size();
    // subtract c/(rho A') so that the source has zero mean and u stays periodic
    std::vector<double> w(n), corrected(n);
    double sw = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 1.0 / (s.rho[i] * reg.derivatives(s.rho[i]).a1);
        sw += w[i];
        ss += src[i];
    }
    const double c = ss / sw;
    for (std::size_t i = 0; i < n; ++i) corrected[i] = src[i] - c * w[i];
    const Field up = antiderivative(Field(s.rho.grid(), std::move(corrected)));
    const double gt = g(s.t);
    std::vector<double> ut = base.u.vector();
    for (std::size_t i = 0; i < n; ++i) ut[i] += up[i] + gt;
    return {std::move(base.rho), Field(s.u.grid(), std::move(ut))};
}

GhsState ghs_step(const GhsState& s, double dt, const Regulariser& reg, const EquationOfState& eos,
                  const Forcing& g) {
    return detail::rk4(s, dt, [&](const State& x) { return ghs_rhs(x, reg, eos, g); });
}

double ghs_energy(const GhsState& s, const Regulariser& reg, const EquationOfState& eos) {
    const Field du = ddx(s.u);
    const Field dr = ddx(s.rho);
    std::vector<double> e(s.rho.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double r = s.rho[i];
        const double a1 = reg.derivatives(r).a1;
        e[i] = r * a1 * du[i] * du[i] + a1 * eos.potential_derivatives(r).second * dr[i] * dr[i];
    }
    return integrate(Field(s.rho.grid(), std::move(e)));
}

RunResult ghs_run(const GhsState& initial, const SolverConfig& cfg, const Regulariser& reg,
                  const EquationOfState& eos, const Forcing& g, const SnapshotSink& sink) {
    require_periodic(initial);
    detail::LoopHooks h;
    h.step = [&](const State& s, double dt) { return ghs_step(s, dt, reg, eos, g); };
    h.dt = [&](const State& s) { return cfl_dt(s, eos, cfg.cfl); };
    h.record = [&](const State& s, double dt) {
        const Field dr = ddx(s.rho), du = ddx(s.u);
        std::vector<double> q(s.rho.size());
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = s.rho[i] * s.u[i];
        return DiagnosticRecord{s.t, dt, integrate(s.rho), integrate(Field(s.rho.grid(), std::move(q))),
                                ghs_energy(s, reg, eos), std::max(dr.max_abs(), du.max_abs())};
    };
    h.snapshot = [&](const State& s) {
        return Snapshot{s.t, s.rho, s.u, SLSystem(s.rho, reg, false).apply(s.u), std::nullopt};
    };
    return detail::run_loop(initial, cfg, h, sink);
}

WaveSpeed vwe_speed(const EquationOfState& eos, double upsilon) {
    if (!(upsilon > 0.0)) throw DomainError("specific volume must be > 0");
    const double r = 1.0 / upsilon;
    const auto v = eos.potential_derivatives(r);
    const double w2 = r * r * r * v.second;
    const double w3 = -r * r * r * r * (3.0 * v.second + r * v.third);
    if (!(w2 > 0.0)) throw DomainError("wave equation lost hyperbolicity");
    const double c = std::sqrt(w2);
    return {c, 0.5 * w3 / c};
}

Field vwe_rhs(const Field& upsilon, const EquationOfState& eos) {
    const auto n = static_cast<std::ptrdiff_t>(upsilon.size());
    const double h = upsilon.grid().dx();
    std::vector<double> out(upsilon.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double vm = upsilon.extended(i - 1), v0 = upsilon.extended(i), vp = upsilon.extended(i + 1);
        const auto w = vwe_speed(eos, v0);
        const double d1 = (vp - vm) / (2.0 * h);
        const double d2 = (vp - 2.0 * v0 + vm) / (h * h);
        out[static_cast<std::size_t>(i)] = w.c * w.c * d2 + w.c * w.dc * d1 * d1;
    }
    return Field(upsilon.grid(), std::move(out));
}

Field vwe_leapfrog(const Field& upsilon0, const Field& upsilon_tau0, double dtau, std::size_t steps,
                   const EquationOfState& eos) {
    if (steps == 0) return upsilon0;
    const std::size_t n = upsilon0.size();
    const Ghosts gh = upsilon0.ghosts();
    std::vector<double> prev = upsilon0.vector(), cur(n);
    const Field a0 = vwe_rhs(upsilon0, eos);
    for (std::size_t i = 0; i < n; ++i) cur[i] = prev[i] + dtau * upsilon_tau0[i] + 0.5 * dtau * dtau * a0[i];
    for (std::size_t k = 1; k < steps; ++k) {
        const Field a = vwe_rhs(Field(upsilon0.grid(), cur, gh), eos);
        for (std::size_t i = 0; i < n; ++i) {
            const double nx = 2.0 * cur[i] - prev[i] + dtau * dtau * a[i];
            prev[i] = cur[i];
            cur[i] = nx;
        }
    }
    return Field(upsilon0.grid(), std::move(cur), gh);
}

}  // namespace hreg

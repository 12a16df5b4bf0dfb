#include "hreg/rbe_solver.hpp"

#include <algorithm>
#include <cmath>

#include "hreg/errors.hpp"
#include "hreg/sl_operator.hpp"
#include "run_loop.hpp"

namespace hreg {

namespace {

Ghosts far_ghosts(const Grid& g, double FarField::*left, double FarField::*right) {
    if (g.is_periodic()) return {};
    return {g.far_field().*left, g.far_field().*right};
}

void require_positive(const Field& rho) {
    for (std::size_t i = 0; i < rho.size(); ++i)
        if (!(rho[i] > 0.0)) throw VacuumError("vacuum: density " + std::to_string(rho[i]) + " at node " + std::to_string(i));
}

// field of f(rho) with ghosts f(rho_inf)
template <class F>
Field map_rho(const Field& rho, F&& f) {
    std::vector<double> v(rho.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(rho[i]);
    Ghosts g{};
    if (!rho.grid().is_periodic()) g = {f(rho.ghosts().left), f(rho.ghosts().right)};
    return Field(rho.grid(), std::move(v), g);
}

Field product(const Field& a, const Field& b) {
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
    return Field(a.grid(), std::move(v), {a.ghosts().left * b.ghosts().left, a.ghosts().right * b.ghosts().right});
}

}  // namespace

State make_state(const Grid& grid, std::vector<double> rho, std::vector<double> u, double t) {
    return {t, Field(grid, std::move(rho), far_ghosts(grid, &FarField::rho_left, &FarField::rho_right)),
            Field(grid, std::move(u), far_ghosts(grid, &FarField::u_left, &FarField::u_right))};
}

Field reg_source(const State& s, const Regulariser& reg, const EquationOfState& eos) {
    require_positive(s.rho);
    const Field du = ddx(s.u);
    const Field dr = ddx(s.rho);
    std::vector<double> psi(s.rho.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const auto c = composite_coefficients(reg, eos, s.rho[i]);
        psi[i] = c.c_u * du[i] * du[i] + c.c_rho * dr[i] * dr[i];
    }
    return Field(s.rho.grid(), std::move(psi));
}

Rates classical_rhs(const State& s, const EquationOfState& eos) {
    require_positive(s.rho);
    const Field flux = ddx(product(s.rho, s.u));
    const Field du = ddx(s.u);
    // P_x / rho rather than the enthalpy gradient keeps the discrete momentum exactly conserved
    const Field dp = ddx(map_rho(s.rho, [&](double r) { return eos.pressure(r); }));
    const std::size_t n = s.rho.size();
    std::vector<double> rt(n), ut(n);
    for (std::size_t i = 0; i < n; ++i) {
        rt[i] = -flux[i];
        ut[i] = -s.u[i] * du[i] - dp[i] / s.rho[i];
    }
    return {Field(s.rho.grid(), std::move(rt)), Field(s.u.grid(), std::move(ut))};
}

Rates rbe_rhs(const State& s, const Regulariser& reg, const EquationOfState& eos) {
    Rates r = classical_rhs(s, eos);
    if (reg.epsilon() == 0.0) return r;
    const SLSystem sys(s.rho, reg);
    const Field v = sys.solve_dx(reg_source(s, reg, eos));
    std::vector<double> ut = r.u.vector();
    for (std::size_t i = 0; i < ut.size(); ++i) ut[i] -= reg.epsilon() * v[i];
    return {std::move(r.rho), Field(s.u.grid(), std::move(ut))};
}

State step(const State& s, double dt, const Regulariser& reg, const EquationOfState& eos) {
    return detail::rk4(s, dt, [&](const State& x) { return rbe_rhs(x, reg, eos); });
}

double characteristic_dt(double dx, double max_speed, double cfl) {
    if (!(max_speed > 0.0)) return dx;
    return std::min(cfl * dx / max_speed, dx);
}

double cfl_dt(const State& s, const EquationOfState& eos, double cfl) {
    double speed = 0.0;
    for (std::size_t i = 0; i < s.rho.size(); ++i)
        speed = std::max(speed, std::abs(s.u[i]) + eos.sound_speed(s.rho[i]));
    return characteristic_dt(s.rho.grid().dx(), speed, cfl);
}

Diagnostics diagnostics(const State& s, const Regulariser& reg, const EquationOfState& eos) {
    const SLSystem sys(s.rho, reg, false);
    const Field du = ddx(s.u);
    const Field dr = ddx(s.rho);
    const double eps = reg.epsilon();
    const std::size_t n = s.rho.size();
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = s.rho[i];
        const double a1 = reg.derivatives(r).a1;
        const double v2 = eos.potential_derivatives(r).second;
        e[i] = 0.5 * r * s.u[i] * s.u[i] + eps * r * a1 * du[i] * du[i] + eos.potential(r) +
               eps * a1 * v2 * dr[i] * dr[i];
    }
    Ghosts eg{};
    if (!s.rho.grid().is_periodic()) {
        const auto far = [&](double r, double u) { return 0.5 * r * u * u + eos.potential(r); };
        eg = {far(s.rho.ghosts().left, s.u.ghosts().left), far(s.rho.ghosts().right, s.u.ghosts().right)};
    }
    const Field ef(s.rho.grid(), std::move(e), eg);
    return {integrate(ef), integrate(s.rho), integrate(product(s.rho, s.u)), sys.apply(s.u),
            std::max(dr.max_abs(), du.max_abs())};
}

Field regularising_term(const State& s, const Regulariser& reg, const EquationOfState& eos) {
    const Field psi = reg_source(s, reg, eos);
    if (reg.epsilon() == 0.0) return psi;
    return SLSystem(s.rho, reg).apply_J(psi);
}

RunResult run(const State& initial, const SolverConfig& cfg, const Regulariser& reg,
              const EquationOfState& eos, const SnapshotSink& sink) {
    detail::LoopHooks h;
    h.step = [&](const State& s, double dt) { return step(s, dt, reg, eos); };
    h.dt = [&](const State& s) { return cfl_dt(s, eos, cfg.cfl); };
    h.record = [&](const State& s, double dt) {
        const Diagnostics d = diagnostics(s, reg, eos);
        return DiagnosticRecord{s.t, dt, d.mass, d.momentum, d.energy, d.sup_wx};
    };
    h.snapshot = [&](const State& s) {
        return Snapshot{s.t, s.rho, s.u, diagnostics(s, reg, eos).m, regularising_term(s, reg, eos)};
    };
    return detail::run_loop(initial, cfg, h, sink);
}

State rusanov_run(const State& initial, double t_end, double cfl, const EquationOfState& eos) {
    const Grid& g = initial.rho.grid();
    const std::size_t n = g.size();
    const double dx = g.dx();
    const auto N = static_cast<std::ptrdiff_t>(n);
    std::vector<double> r = initial.rho.vector(), q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = r[i] * initial.u[i];
    const Ghosts rg = initial.rho.ghosts();
    const Ghosts qg{rg.left * initial.u.ghosts().left, rg.right * initial.u.ghosts().right};
    const bool periodic = g.is_periodic();
    auto at = [&](const std::vector<double>& v, Ghosts gh, std::ptrdiff_t i) {
        if (i >= 0 && i < N) return v[static_cast<std::size_t>(i)];
        if (periodic) return v[static_cast<std::size_t>((i + N) % N)];
        return i < 0 ? gh.left : gh.right;
    };

    double t = initial.t;
    std::vector<double> fr(n + 1), fq(n + 1);
    while (t < t_end) {
        double smax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(r[i] > 0.0)) throw IntegrationFailure("vacuum in reference scheme", t);
            smax = std::max(smax, std::abs(q[i] / r[i]) + eos.sound_speed(r[i]));
        }
        double dt = cfl * dx / smax;
        if (t + dt > t_end) dt = t_end - t;
        // interface i sits between cells i-1 and i
        for (std::ptrdiff_t i = 0; i <= N; ++i) {
            const double rl = at(r, rg, i - 1), rr = at(r, rg, i);
            const double ql = at(q, qg, i - 1), qr = at(q, qg, i);
            const double ul = ql / rl, ur = qr / rr;
            const double a = std::max(std::abs(ul) + eos.sound_speed(rl), std::abs(ur) + eos.sound_speed(rr));
            const auto k = static_cast<std::size_t>(i);
            fr[k] = 0.5 * (ql + qr) - 0.5 * a * (rr - rl);
            fq[k] = 0.5 * (ql * ul + eos.pressure(rl) + qr * ur + eos.pressure(rr)) - 0.5 * a * (qr - ql);
        }
        for (std::size_t i = 0; i < n; ++i) {
            r[i] -= dt / dx * (fr[i + 1] - fr[i]);
            q[i] -= dt / dx * (fq[i + 1] - fq[i]);
        }
        t += dt;
    }
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = q[i] / r[i];
    return {t, Field(g, std::move(r), rg), Field(g, std::move(u), initial.u.ghosts())};
}

}  // namespace hreg

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "hreg/analysis.hpp"
#include "hreg/errors.hpp"
#include "hreg/ghs_solver.hpp"
#include "hreg/rbe_solver.hpp"
#include "hreg/sl_operator.hpp"

using namespace hreg;
constexpr double pi = std::numbers::pi;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

void verdict(int id, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double drift(double a, double b) { return std::abs(b - a) / std::abs(a); }

State sample_state(const Grid& g, const Profile& r, const Profile& u) {
    std::vector<double> rv(g.size()), uv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        rv[i] = r(g.x(i));
        uv[i] = u(g.x(i));
    }
    return make_state(g, rv, uv);
}

// smooth periodic data on [0, 2 pi): sine plus a gaussian bump in the density
State sine_bump(std::size_t n, double a) {
    const Grid g = Grid::periodic(2 * pi, n);
    return sample_state(
        g, [a](double x) { return 1 + a * std::sin(x) + a * std::exp(-(x - pi) * (x - pi)); },
        [a](double x) { return a * std::sin(x); });
}

// criteria 1 and 2 share the runs
void conservation() {
    struct Case {
        const char* name;
        EquationOfState eos;
        Regulariser reg;
    };
    const Case cases[] = {
        {"gamma=2/cubic", EquationOfState::shallow_water(1.0), Regulariser::cubic(0.1)},
        {"isothermal/inverse", EquationOfState::isothermal(1.0, 1.0), Regulariser::inverse(1.0, 1.0, 0.1)},
    };
    for (const auto& c : cases) {
        Timer tm;
        SolverConfig cfg;
        cfg.cfl = 0.2;
        cfg.t_end = 1.0;
        const RunResult r = run(sine_bump(512, 0.02), cfg, c.reg, c.eos);
        const double secs = tm.seconds();
        const auto& a = r.series.front();
        const auto& b = r.series.back();
        const double de = drift(a.energy, b.energy), dm = drift(a.mass, b.mass), dp = drift(a.momentum, b.momentum);
        const bool done = r.outcome == Outcome::completed && r.final_state.t == 1.0;
        verdict(1, done && de <= 1e-6 && secs <= 30,
                fmt("%s energy drift %.3e (<= 1e-6), %zu steps, %.1f s (<= 30)", c.name, de, r.steps, secs));
        verdict(2, done && dm <= 1e-12 && dp <= 1e-8,
                fmt("%s mass drift %.3e (<= 1e-12), momentum drift %.3e (<= 1e-8)", c.name, dm, dp));
    }
}

void dispersionless() {
    Timer tm;
    const auto eos = EquationOfState::shallow_water(1.0);
    const double c0 = std::sqrt(eos.rho_bar() * eos.potential_derivatives(eos.rho_bar()).second);
    const double eps_list[] = {0.0, 0.1, 1.0};
    double worst = 0.0, worst_spread = 0.0;
    for (double k : {1.0, 2.0, 4.0, 8.0}) {
        double lo = 1e300, hi = -1e300;
        for (double e : eps_list) {
            const double c = dispersion_speed_measured(eos, Regulariser::cubic(e), k, 1e-6);
            worst = std::max(worst, std::abs(c - c0) / c0);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        worst_spread = std::max(worst_spread, (hi - lo) / c0);
    }
    const double secs = tm.seconds();
    verdict(3, worst <= 0.01 && worst_spread <= 0.01 && secs <= 60,
            fmt("max |c - c0|/c0 %.3e (<= 1e-2), spread across eps %.3e (<= 1e-2), %.1f s (<= 60)", worst,
                worst_spread, secs));
}

void operator_correctness() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst_res = 0.0;
    int max_principle_violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 16 + static_cast<std::size_t>(U(rng) * 240);
        const bool periodic = trial % 2 == 0;
        const double eps = std::pow(10.0, -3.0 + 4.0 * U(rng));
        const int fam = trial % 3;
        const Regulariser reg = fam == 0   ? Regulariser::cubic(eps)
                                : fam == 1 ? Regulariser::inverse(0.5 + U(rng), 1.0, eps)
                                           : Regulariser::power(1.5 + 2 * U(rng), eps);
        std::vector<double> rv(n), fv(n);
        for (auto& v : rv) v = 0.2 + 2.0 * U(rng);
        for (auto& v : fv) v = 2.0 * U(rng) - 1.0;
        const double rl = 0.2 + 2.0 * U(rng), rr = 0.2 + 2.0 * U(rng);
        const Grid g = periodic ? Grid::periodic(1.0 + 5.0 * U(rng), n)
                                : Grid::line(-3.0, 3.0, n, {rl, rr, 0.0, 0.0});
        const Field rho(g, rv, periodic ? Ghosts{} : Ghosts{rl, rr});
        const Field f(g, fv);  // zero far field
        const SLSystem sys(rho, reg);
        const Field x = sys.solve(f);
        const Field back = sys.apply(x);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(back[i] - f[i]));
        worst_res = std::max(worst_res, res / f.max_abs());
        if (x.max_abs() > f.max_abs() / rho.min() * (1 + 1e-12)) ++max_principle_violations;
    }
    // constant coefficients: (1 - eps d2/dx2)^{-1} cos(kx) = cos(kx)/(1 + eps k^2)
    std::vector<double> err;
    const double eps = 0.1, k = 3.0;
    const auto reg = Regulariser::cubic(eps);  // rho = 1: A' = 1/2, so L = 1 - eps d2/dx2
    for (std::size_t n : {32, 64, 128, 256, 512}) {
        const Grid g = Grid::periodic(2 * pi, n);
        const SLSystem sys(Field::constant(g, 1.0), reg);
        const Field x = sys.solve(Field::sample(g, [&](double s) { return std::cos(k * s); }));
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(x[i] - std::cos(k * g.x(i)) / (1 + eps * k * k)));
        err.push_back(e);
    }
    double lo = 1e9, hi = -1e9;
    for (std::size_t i = 1; i < err.size(); ++i) {
        const double p = std::log2(err[i - 1] / err[i]);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    verdict(4, worst_res <= 1e-10 && max_principle_violations == 0 && lo >= 1.8 && hi <= 2.2,
            fmt("worst relative residual %.2e (<= 1e-10), max-principle violations %d/100, observed orders [%.3f, "
                "%.3f] (2 +- 0.2)",
                worst_res, max_principle_violations, lo, hi));
}

void singularity() {
    const auto eos = EquationOfState::shallow_water(1.0);
    const auto reg = Regulariser::cubic(0.1);
    const double I = 1.0, rho_far = 1.2;
    const double rho_conj = conjugate_density(rho_far, I / rho_far, eos);
    const double rs = sonic_density(I, eos);
    SteadyOptions opt;
    opt.max_length = 50.0;
    opt.samples = 4001;
    bool ok = true;
    std::string detail;
    for (double far : {rho_far, rho_conj}) {
        const SteadyFluxes fl = far_field_fluxes(far, I / far, eos);
        const double start = far > rs ? rs + 0.05 : rs - 0.05;
        const SteadyProfile p = integrate_steady_profile(fl, eos, reg, start, far > rs ? -1 : 1, opt);
        if (p.stop != SteadyStop::sonic) {
            ok = false;
            detail += fmt("far %.4f: no sonic point reached; ", far);
            continue;
        }
        FitOptions fo;
        fo.base = rs;
        try {
            const SingularityFit fit = fit_singularity_exponent(p.rho, p.x_end, fo);
            const double pred = predicted_cusp_amplitude(fl, eos, reg);
            const double amp = fit.rho_amp_left ? *fit.rho_amp_left : *fit.rho_amp_right;
            const double rel = std::abs(amp - pred) / std::abs(pred);
            const bool good = std::abs(fit.alpha() - 2.0 / 3.0) <= 0.05 && fit.r_squared() >= 0.99 && rel <= 0.05;
            ok = ok && good;
            detail += fmt("far %.4f: alpha %.4f, r2 %.5f, amplitude %.4f vs %.4f (rel %.2e); ", far, fit.alpha(),
                          fit.r_squared(), amp, pred, rel);
        } catch (const FitUnreliable& e) {
            ok = false;
            detail += fmt("far %.4f: %s; ", far, e.what());
        }
    }
    verdict(5, ok, detail + "(alpha 2/3 +- 0.05, r2 >= 0.99, amplitude 5%)");
}

void ghs_energy_and_sign() {
    Timer tm;
    const auto eos = EquationOfState::shallow_water(1.0);
    const auto reg = Regulariser::cubic(1.0);
    const double a = 0.02;
    const Grid g = Grid::periodic(1.0, 512);
    const State s0 = sample_state(
        g,
        [a](double x) {
            return 1 + a * std::sin(2 * pi * x) + a * std::exp(-((x - 0.5) / 0.25) * ((x - 0.5) / 0.25));
        },
        [a](double x) { return a * std::sin(2 * pi * x); });
    SolverConfig cfg;
    cfg.t_end = 0.5;
    cfg.cfl = 0.5;
    const RunResult r = ghs_run(s0, cfg, reg, eos);
    const double de = drift(r.series.front().energy, r.series.back().energy);
    const Rates p = ghs_rhs(s0, reg, eos), m = ghs_rhs(s0, reg.negated(), eos);
    bool identical = true;
    for (std::size_t i = 0; i < g.size(); ++i)
        identical = identical && p.rho[i] == m.rho[i] && p.u[i] == m.u[i];
    verdict(6, r.outcome == Outcome::completed && de <= 1e-6 && identical,
            fmt("gradient-energy drift %.3e (<= 1e-6), A -> -A right-hand sides bitwise identical: %s, %.1f s", de,
                identical ? "yes" : "no", tm.seconds()));
}

void convolution_consistency() {
    const auto eos = EquationOfState::isothermal(1.0, 1.0);
    const auto reg = Regulariser::inverse(1.0, 1.0, 0.1);
    const double A = 0.3, x0 = -20.0, x1 = 20.0;
    const std::size_t n = 4096;
    auto rho = [A](double x) { return 1 + A * std::exp(-x * x); };
    // mass coordinate from x0, in closed form
    auto xi_of = [&](double x) { return (x - x0) + A * std::sqrt(pi) / 2 * (std::erf(x) - std::erf(x0)); };
    const Grid gx = Grid::line(x0, x1, n, {1.0, 1.0, 0.0, 0.0});
    const State s = sample_state(gx, rho, [](double) { return 0.0; });
    const Field Rx = regularising_term(s, reg, eos);

    const double xi_end = xi_of(x1);
    const Grid gxi = Grid::line(0.0, xi_end, n, {1.0, 1.0, 0.0, 0.0});
    std::vector<double> ups(n);
    double x = x0;
    for (std::size_t j = 0; j < n; ++j) {
        const double target = gxi.x(j);
        for (int it = 0; it < 50; ++it) {
            const double dx = (xi_of(x) - target) / rho(x);
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        ups[j] = 1.0 / rho(x);
    }
    const Field Rxi = convolution_R_special(Field(gxi, ups, {1.0, 1.0}), eos, reg);
    const boost::math::interpolators::cardinal_cubic_b_spline<double> spline(Rxi.vector().begin(), Rxi.vector().end(),
                                                                              0.0, gxi.dx());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num = std::max(num, std::abs(Rx[i] - spline(std::clamp(xi_of(gx.x(i)), 0.0, xi_end))));
        den = std::max(den, std::abs(Rx[i]));
    }
    verdict(7, num / den <= 1e-2, fmt("relative L-inf difference %.3e (<= 1e-2) at n = %zu", num / den, n));
}

void blowup() {
    const auto eos = EquationOfState::shallow_water(1.0);
    const FarField far{1.0, 1.0, 1.0, -1.0};
    const Grid g = Grid::line(-10.0, 10.0, 2048, far);
    const State s0 = sample_state(g, [](double) { return 1.0; }, [](double x) { return -std::tanh(x / 0.2); });
    SolverConfig cfg;
    cfg.cfl = 0.5;
    cfg.blowup_factor = 10.0;
    cfg.t_end = 2.0;
    const RunResult small = run(s0, cfg, Regulariser::cubic(1e-4), eos);
    const RunResult large = run(s0, cfg, Regulariser::cubic(1.0), eos);
    const bool ok = small.outcome == Outcome::blowup && large.outcome == Outcome::completed;
    verdict(8, ok,
            fmt("eps 1e-4: %s%s; eps 1: %s, final sup|W_x| %.3f vs threshold %.3f",
                small.outcome == Outcome::blowup ? "blow-up at t = " : "completed",
                small.blowup_time ? fmt("%.4f", *small.blowup_time).c_str() : "",
                large.outcome == Outcome::blowup ? "blow-up" : "completed", large.series.back().sup_wx,
                large.threshold));
}

void epsilon_limit() {
    Timer tm;
    const auto eos = EquationOfState::shallow_water(1.0);
    const Grid g = Grid::periodic(2 * pi, 256);
    const double eps[] = {1e-1, 1e-2, 1e-3};
    const auto pts = epsilon_sweep(
        g, [](double x) { return 1 + 0.2 * std::sin(x); }, [](double x) { return 0.2 * std::sin(x); }, eps, 1.0,
        Regulariser::cubic(0.1), eos, 32);
    const bool ok = pts[0].l1 > pts[1].l1 && pts[1].l1 > pts[2].l1;
    verdict(9, ok,
            fmt("L1 distance %.3e, %.3e, %.3e at eps 1e-1, 1e-2, 1e-3 (strictly decreasing), %.1f s", pts[0].l1,
                pts[1].l1, pts[2].l1, tm.seconds()));
}

void self_convergence() {
    const auto eos = EquationOfState::shallow_water(1.0);
    const auto reg = Regulariser::cubic(0.1);
    struct Case {
        const char* name;
        SystemKind kind;
        double length;
    };
    for (const Case c : {Case{"rbe", SystemKind::rbe, 2 * pi}, Case{"ghs", SystemKind::ghs, 1.0}}) {
        Timer tm;
        const double k = 2 * pi / c.length;
        const auto rep = convergence_study(
            c.kind, c.length, [k](double x) { return 1 + 0.1 * std::sin(k * x); },
            [k](double x) { return 0.1 * std::cos(k * x); }, reg, eos);
        const double ps = rep.spatial_order(), pt = rep.temporal_order();
        verdict(10, std::abs(ps - 2) <= 0.3 && std::abs(pt - 4) <= 0.5,
                fmt("%s spatial order %.3f (2 +- 0.3), temporal order %.3f (4 +- 0.5), %.1f s", c.name, ps, pt,
                    tm.seconds()));
    }
}

void guarded(const std::function<void()>& f, int id) {
    try {
        f();
    } catch (const std::exception& e) {
        verdict(id, false, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    guarded(conservation, 1);
    guarded(dispersionless, 3);
    guarded(operator_correctness, 4);
    guarded(singularity, 5);
    guarded(ghs_energy_and_sign, 6);
    guarded(convolution_consistency, 7);
    guarded(blowup, 8);
    guarded(epsilon_limit, 9);
    guarded(self_convergence, 10);
    std::printf("%d failing check(s)\n", failures);
    return failures == 0 ? 0 : 1;
}

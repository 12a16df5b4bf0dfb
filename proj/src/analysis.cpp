#include "hreg/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "hreg/errors.hpp"

namespace hreg {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::complex<double> dft_mode(const std::vector<double>& v, double k, double dx) {
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * std::polar(1.0, -k * static_cast<double>(i) * dx);
    return s;
}

}  // namespace

double dispersion_speed_general(const EquationOfState& eos, double epsilon, double k, double a1, double b1) {
    const double rb = eos.rho_bar();
    const double ek = 2.0 * epsilon * k * k;
    return std::sqrt(rb * eos.potential_derivatives(rb).second * (1.0 + ek * b1) / (1.0 + ek * a1));
}

double dispersion_speed_theory(const EquationOfState& eos, const Regulariser& reg, double k) {
    if (k == 0.0) throw DomainError("wavenumber must be nonzero");
    const double a1 = reg.derivatives(eos.rho_bar()).a1;
    return dispersion_speed_general(eos, reg.epsilon(), k, a1, a1);
}

double dispersion_speed_measured(const EquationOfState& eos, const Regulariser& reg, double k, double amplitude,
                                 const DispersionOptions& opt) {
    if (!(k >= 1.0) || std::abs(k - std::round(k)) > 1e-12)
        throw UsageError("wavenumber must be a positive integer on the 2 pi periodic domain");
    if (!(amplitude > 0.0)) throw UsageError("amplitude must be > 0");
    const auto kk = static_cast<std::size_t>(std::lround(k));
    const std::size_t n = std::max(opt.min_points, opt.points_per_wavelength * kk);
    const Grid grid = Grid::periodic(2.0 * std::numbers::pi, n);
    const double rb = eos.rho_bar();
    const double c = dispersion_speed_theory(eos, reg, k);
    const double period = 2.0 * std::numbers::pi / (k * c);

    std::vector<double> d0(n), r(n), u(n);
    for (std::size_t i = 0; i < n; ++i) {
        d0[i] = amplitude * std::cos(k * grid.x(i));
        r[i] = rb + d0[i];
        u[i] = c / rb * d0[i];
    }
    SolverConfig cfg;
    cfg.cfl = opt.cfl;
    cfg.t_end = period;
    const RunResult res = run(make_state(grid, r, u), cfg, reg, eos);

    std::vector<double> dT(n);
    for (std::size_t i = 0; i < n; ++i) dT[i] = res.final_state.rho[i] - rb;
    const double dx = grid.dx();
    const double fund = std::abs(dft_mode(dT, k, dx));
    const double harm = std::abs(dft_mode(dT, 2.0 * k, dx));
    if (!(harm <= opt.harmonic_limit * fund))
        throw MeasurementInvalid("harmonic content " + std::to_string(harm / fund) + " exceeds the linear limit");

    const auto N = static_cast<std::ptrdiff_t>(n);
    const auto half = static_cast<std::ptrdiff_t>(n / (2 * kk));
    auto corr = [&](std::ptrdiff_t j) {
        double s = 0.0;
        for (std::ptrdiff_t i = 0; i < N; ++i) s += d0[static_cast<std::size_t>(i)] * dT[static_cast<std::size_t>(((i + j) % N + N) % N)];
        return s;
    };
    std::ptrdiff_t best = -half;
    double cbest = -std::numeric_limits<double>::infinity();
    for (std::ptrdiff_t j = -half; j <= half; ++j) {
        const double v = corr(j);
        if (v > cbest) {
            cbest = v;
            best = j;
        }
    }
    const double cm = corr(best - 1), cp = corr(best + 1);
    const double curv = cm - 2.0 * cbest + cp;
    const double frac = curv != 0.0 ? 0.5 * (cm - cp) / curv : 0.0;
    const double shift = (static_cast<double>(best) + frac) * dx;
    return (2.0 * std::numbers::pi / k + shift) / period;
}

SteadyFluxes far_field_fluxes(double rho, double u, const EquationOfState& eos) {
    const auto v = eos.potential_derivatives(rho);
    return {rho * u, rho * u * u + rho * v.first - eos.potential(rho), 0.5 * rho * u * u * u + rho * v.first * u};
}

FluxConnection far_field_connection(double rho_left, double u_left, double rho_right, double u_right,
                                    const EquationOfState& eos, double rel_tol) {
    const SteadyFluxes l = far_field_fluxes(rho_left, u_left, eos);
    const SteadyFluxes r = far_field_fluxes(rho_right, u_right, eos);
    const auto close = [&](double a, double b) {
        return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
    };
    return {l, r, close(l.I, r.I) && close(l.S, r.S), r.F - l.F};
}

double sonic_density(double I, const EquationOfState& eos) {
    if (I == 0.0) throw DomainError("mass flux must be nonzero");
    const double rb = eos.rho_bar();
    // I^2 = rho^2 P'(rho)
    if (eos.kind() == EosKind::isothermal) return std::abs(I) * std::sqrt(rb / eos.p_bar());
    return rb * std::pow(I * I / (eos.gamma() * eos.p_bar() * rb), 1.0 / (eos.gamma() + 1.0));
}

double conjugate_density(double rho, double u, const EquationOfState& eos) {
    const SteadyFluxes f = far_field_fluxes(rho, u, eos);
    const double rs = sonic_density(f.I, eos);
    auto g = [&](double r) { return f.I * f.I / r + r * eos.enthalpy(r) - eos.potential(r) - f.S; };
    double lo, hi;
    if (rho > rs) {
        lo = rs;
        hi = rs;
        do {
            lo *= 0.5;
            if (lo < 1e-12 * rs) throw DomainError("no conjugate state");
        } while (g(lo) < 0.0);
    } else {
        lo = rs;
        hi = rs;
        do {
            hi *= 2.0;
            if (hi > 1e12 * rs) throw DomainError("no conjugate state");
        } while (g(hi) < 0.0);
    }
    boost::uintmax_t iters = 200;
    const auto tol = boost::math::tools::eps_tolerance<double>(52);
    const auto br = boost::math::tools::toms748_solve(g, lo, hi, tol, iters);
    return 0.5 * (br.first + br.second);
}

SteadySlope steady_ode_rhs(double rho, const SteadyFluxes& fl, const EquationOfState& eos, const Regulariser& reg) {
    if (!(reg.epsilon() > 0.0)) throw DomainError("the steady ODE needs epsilon > 0");
    if (fl.I == 0.0) throw DomainError("mass flux must be nonzero");
    const auto v = eos.potential_derivatives(rho);
    const double num = fl.I * fl.I - 2.0 * fl.S * rho + 2.0 * (fl.F / fl.I) * rho * rho - 2.0 * rho * eos.potential(rho);
    const double den = fl.I * fl.I - rho * rho * rho * v.second;
    if (den == 0.0) return {std::numeric_limits<double>::infinity(), num, den, true};
    const double a1 = reg.derivatives(rho).a1;
    return {rho * rho / (2.0 * reg.epsilon() * a1) * num / den, num, den, false};
}

namespace {

using Y = std::array<double, 1>;
namespace ode = boost::numeric::odeint;

struct Node {
    double x, y, dy;
};

double hermite(const Node& a, const Node& b, double x) {
    const double h = b.x - a.x;
    const double t = (x - a.x) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * a.y + (t3 - 2 * t2 + t) * h * a.dy + (-2 * t3 + 3 * t2) * b.y + (t3 - t2) * h * b.dy;
}

}  // namespace

SteadyProfile integrate_steady_profile(const SteadyFluxes& fl, const EquationOfState& eos, const Regulariser& reg,
                                       double rho_start, int direction, const SteadyOptions& opt) {
    if (direction != 1 && direction != -1) throw UsageError("direction must be +1 or -1");
    if (!(opt.max_length > 0.0) || opt.samples < 8) throw UsageError("bad steady integration options");
    const double sigma = direction;
    auto h = [&](double r) {
        if (!(r > 0.0)) return 0.0;
        const SteadySlope s = steady_ode_rhs(r, fl, eos, reg);
        return s.sonic ? std::numeric_limits<double>::infinity() : s.slope_squared;
    };
    auto numer = [&](double r) { return steady_ode_rhs(r, fl, eos, reg).numerator; };
    auto denom = [&](double r) { return steady_ode_rhs(r, fl, eos, reg).denominator; };
    auto slope = [&](double r) {
        const double v = h(r);
        return v > 0.0 && std::isfinite(v) ? sigma * std::sqrt(v) : 0.0;
    };

    const double h0 = h(rho_start);
    const double scale = std::max(1.0, std::abs(rho_start));
    if (h0 < -1e-14 * scale * scale || std::isnan(h0))
        throw DomainError("steady profile inadmissible at the starting density");
    if (!std::isfinite(h0)) throw DomainError("steady profile cannot start at a sonic point");

    const double rs = sonic_density(fl.I, eos);
    const bool sonic_ahead = sigma * (rs - rho_start) > 0.0;

    std::vector<Node> nodes{{0.0, rho_start, slope(rho_start)}};
    SteadyStop stop = SteadyStop::extent;
    double endpoint = nan;  // density at a slope-zero or sonic event

    // first zero of the numerator strictly between a and b, if the sign changes
    auto numerator_root = [&](double a, double b) -> std::optional<double> {
        const int m = 400;
        double pa = a, na = numer(a);
        for (int j = 1; j <= m; ++j) {
            const double pb = a + (b - a) * j / m;
            const double nb = numer(pb);
            if ((na > 0.0) != (nb > 0.0) || nb == 0.0) {
                if (nb == 0.0) return pb;
                boost::uintmax_t it = 200;
                const auto br = boost::math::tools::toms748_solve(numer, pa, pb, na, nb,
                                                                  boost::math::tools::eps_tolerance<double>(52), it);
                return 0.5 * (br.first + br.second);
            }
            pa = pb;
            na = nb;
        }
        return std::nullopt;
    };

    if (h0 > 0.0) {
        auto sys = [&](const Y& y, Y& dydx, double) { dydx[0] = slope(y[0]); };
        auto stepper = ode::make_dense_output(opt.atol, opt.rtol, ode::runge_kutta_dopri5<Y>());
        const double dx0 = 1e-6 * opt.max_length;
        stepper.initialize(Y{rho_start}, 0.0, dx0);
        const double switch_gap = 0.1 * std::abs(rs - rho_start);
        for (std::size_t iter = 0; iter < 1000000; ++iter) {
            const auto [x_old, x_new] = stepper.do_step(sys);
            const double y_old = nodes.back().y;
            const double y_new = stepper.current_state()[0];
            const double hn = h(y_new);
            const bool crossed = !(hn > 0.0) || !std::isfinite(hn) || (sonic_ahead && sigma * (rs - y_new) <= 0.0);
            if (crossed) {
                // an event lies inside the last step: restart the tail from its left end
                if ((denom(y_old) > 0.0) != (denom(y_new) > 0.0) || (sonic_ahead && sigma * (rs - y_new) <= 0.0)) {
                    const auto z = numerator_root(y_old, rs);
                    endpoint = z ? *z : rs;
                    stop = z ? SteadyStop::slope_zero : SteadyStop::sonic;
                } else {
                    const auto z = numerator_root(y_old, y_new);
                    endpoint = z ? *z : y_new;
                    stop = SteadyStop::slope_zero;
                }
                break;
            }
            if (x_new >= opt.max_length) {
                Y yy;
                stepper.calc_state(opt.max_length, yy);
                nodes.push_back({opt.max_length, yy[0], slope(yy[0])});
                break;
            }
            nodes.push_back({x_new, y_new, slope(y_new)});
            if (sonic_ahead && std::abs(rs - y_new) <= switch_gap) {
                const auto z = numerator_root(y_new, rs);
                endpoint = z ? *z : rs;
                stop = z ? SteadyStop::slope_zero : SteadyStop::sonic;
                break;
            }
            if (iter + 1 == 1000000) throw NumericalBreakdown("steady integration did not terminate");
        }
    } else {
        nodes.push_back({opt.max_length, rho_start, 0.0});
    }

    // tail in w with rho = endpoint - sigma w^2, where dx/dw = 2w / sqrt(h) is bounded
    std::vector<double> tail_x, tail_w;
    double x_end = nodes.back().x;
    if (stop != SteadyStop::extent) {
        const Node start = nodes.back();
        const double w0 = std::sqrt(std::max(0.0, sigma * (endpoint - start.y)));
        auto dxdw = [&](double w) {
            const double v = h(endpoint - sigma * w * w);
            if (!(v > 0.0)) return 0.0;
            return std::isfinite(v) ? 2.0 * w / std::sqrt(v) : 0.0;
        };
        const double w_min = 1e-9 * w0;
        const std::size_t m = 20000;
        tail_w.resize(m + 1);
        tail_x.resize(m + 1);
        if (w0 > 0.0) {
            // s = w0 - w runs forward
            auto sys = [&](const Y& x, Y& dxds, double s) {
                (void)x;
                dxds[0] = dxdw(w0 - s);
            };
            std::vector<double> times(m + 1);
            for (std::size_t j = 0; j <= m; ++j) times[j] = (w0 - w_min) * static_cast<double>(j) / static_cast<double>(m);
            Y x{start.x};
            std::size_t idx = 0;
            ode::integrate_times(ode::make_dense_output(opt.atol, opt.rtol, ode::runge_kutta_dopri5<Y>()), sys, x,
                                 times.begin(), times.end(), (w0 - w_min) * 1e-4, [&](const Y& xs, double s) {
                                     tail_w[idx] = w0 - s;
                                     tail_x[idx] = xs[0];
                                     ++idx;
                                 });
            // remaining sliver [0, w_min] at the local rate
            tail_w.push_back(0.0);
            tail_x.push_back(tail_x.back() + w_min * dxdw(w_min));
        } else {
            tail_w = {0.0};
            tail_x = {start.x};
        }
        x_end = tail_x.back();
    }

    if (!(x_end > 0.0)) throw DomainError("steady profile has zero length");
    const std::size_t ns = opt.samples;
    const double dxo = x_end / static_cast<double>(ns - 1);
    const double tail_x0 = tail_x.empty() ? std::numeric_limits<double>::infinity() : tail_x.front();
    std::vector<double> out(ns);
    std::size_t seg = 0, tseg = 0;
    for (std::size_t i = 0; i < ns; ++i) {
        const double x = i + 1 == ns ? x_end : dxo * static_cast<double>(i);
        if (x < tail_x0 || tail_x.size() < 2) {
            while (seg + 2 < nodes.size() && nodes[seg + 1].x < x) ++seg;
            out[i] = nodes.size() == 1 ? nodes[0].y : hermite(nodes[seg], nodes[std::min(seg + 1, nodes.size() - 1)], x);
        } else {
            while (tseg + 2 < tail_x.size() && tail_x[tseg + 1] < x) ++tseg;
            const double xa = tail_x[tseg], xb = tail_x[tseg + 1];
            const double t = xb > xa ? std::clamp((x - xa) / (xb - xa), 0.0, 1.0) : 1.0;
            const double w = tail_w[tseg] + t * (tail_w[tseg + 1] - tail_w[tseg]);
            out[i] = endpoint - sigma * w * w;
        }
    }
    const double rho_end = stop == SteadyStop::extent ? out.back() : endpoint;
    out.back() = rho_end;
    const Grid g = Grid::line(0.0, x_end, ns, {rho_start, rho_end, 0.0, 0.0});
    return {Field(g, std::move(out), {rho_start, rho_end}), stop, x_end, rho_end};
}

double predicted_cusp_amplitude(const SteadyFluxes& fl, const EquationOfState& eos, const Regulariser& reg) {
    const double rb = sonic_density(fl.I, eos);
    const auto v = eos.potential_derivatives(rb);
    const double n0 = steady_ode_rhs(rb, fl, eos, reg).numerator;
    const double a1 = reg.derivatives(rb).a1;
    const double cube = -9.0 * rb * rb * n0 / (8.0 * reg.epsilon() * a1 * (3.0 * rb * rb * v.second + rb * rb * rb * v.third));
    return std::cbrt(cube);
}

double SingularityFit::alpha() const {
    if (alpha_left && alpha_right) return 0.5 * (*alpha_left + *alpha_right);
    return alpha_left ? *alpha_left : alpha_right.value_or(nan);
}

double SingularityFit::r_squared() const {
    if (r2_left && r2_right) return std::min(*r2_left, *r2_right);
    return r2_left ? *r2_left : r2_right.value_or(nan);
}

SingularityFit fit_singularity_exponent(const Field& profile, double center, const FitOptions& opt) {
    const Grid& g = profile.grid();
    const std::size_t n = profile.size();
    const double dx = g.dx();
    const double x0 = g.x(0), x1 = g.x(n - 1);
    if (center < x0 - 0.5 * dx || center > x1 + 0.5 * dx) throw UsageError("fit center outside the profile");

    double base;
    if (opt.base) {
        base = *opt.base;
    } else {
        const double p = (center - x0) / dx;
        const auto i = static_cast<std::size_t>(std::clamp(std::floor(p), 0.0, static_cast<double>(n - 2)));
        const double t = p - static_cast<double>(i);
        base = (1.0 - t) * profile[i] + t * profile[i + 1];
    }

    SingularityFit fit;
    const double domain = x1 - x0;
    fit.window_lo = opt.lower_cells * dx;
    const double ext_left = center - x0, ext_right = x1 - center;

    auto side = [&](int s, double extent, std::optional<double>& alpha, std::optional<double>& amp,
                    std::optional<double>& r2) {
        const double hi = std::min(opt.outer_fraction * extent, opt.domain_fraction * domain);
        if (!(hi > fit.window_lo)) return;
        fit.window_hi = std::max(fit.window_hi, hi);
        double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0, sgn = 0;
        std::size_t m = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = (g.x(i) - center) * s;
            if (d < fit.window_lo || d > hi) continue;
            const double dev = profile[i] - base;
            if (dev == 0.0) continue;
            const double X = std::log(d), Yv = std::log(std::abs(dev));
            sx += X;
            sy += Yv;
            sxx += X * X;
            sxy += X * Yv;
            syy += Yv * Yv;
            sgn += dev;
            ++m;
        }
        if (m < 3) return;
        const double mm = static_cast<double>(m);
        const double cxx = sxx - sx * sx / mm, cxy = sxy - sx * sy / mm, cyy = syy - sy * sy / mm;
        const double slope = cxy / cxx;
        const double icpt = (sy - slope * sx) / mm;
        alpha = slope;
        amp = std::copysign(std::exp(icpt), sgn);
        r2 = cyy > 0.0 ? cxy * cxy / (cxx * cyy) : 1.0;
    };
    side(-1, ext_left, fit.alpha_left, fit.rho_amp_left, fit.r2_left);
    side(+1, ext_right, fit.alpha_right, fit.rho_amp_right, fit.r2_right);
    if (!fit.alpha_left && !fit.alpha_right) throw FitUnreliable("no data inside the fit window", fit);
    if ((fit.r2_left && *fit.r2_left < opt.min_r2) || (fit.r2_right && *fit.r2_right < opt.min_r2))
        throw FitUnreliable("power-law fit quality below r^2 = " + std::to_string(opt.min_r2), fit);
    return fit;
}

double l1_distance(const State& a, const State& b) {
    if (a.rho.grid() != b.rho.grid()) throw UsageError("states live on different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rho.size(); ++i) s += std::abs(a.rho[i] - b.rho[i]) + std::abs(a.u[i] - b.u[i]);
    return s * a.rho.grid().dx();
}

namespace {

Grid refined(const Grid& g, std::size_t factor) {
    if (g.is_periodic()) return Grid::periodic(g.length(), g.size() * factor);
    return Grid::line(g.x_min(), g.x_min() + g.length(), (g.size() - 1) * factor + 1, g.far_field());
}

State sample_state(const Grid& g, const Profile& rho0, const Profile& u0) {
    std::vector<double> r(g.size()), u(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        r[i] = rho0(g.x(i));
        u[i] = u0(g.x(i));
    }
    return make_state(g, std::move(r), std::move(u));
}

State restrict_to(const State& fine, const Grid& coarse, std::size_t factor) {
    std::vector<double> r(coarse.size()), u(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        r[i] = fine.rho[i * factor];
        u[i] = fine.u[i * factor];
    }
    return make_state(coarse, std::move(r), std::move(u), fine.t);
}

double max_diff(const State& a, const State& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.rho.size(); ++i)
        e = std::max({e, std::abs(a.rho[i] - b.rho[i]), std::abs(a.u[i] - b.u[i])});
    return e;
}

}  // namespace

std::vector<EpsilonPoint> epsilon_sweep(const Grid& grid, const Profile& rho0, const Profile& u0,
                                        std::span<const double> epsilons, double t_end, const Regulariser& reg,
                                        const EquationOfState& eos, std::size_t refine, double cfl) {
    if (refine < 1) throw UsageError("refinement factor must be >= 1");
    const Grid fine = refined(grid, refine);
    const State ref = restrict_to(rusanov_run(sample_state(fine, rho0, u0), t_end, cfl, eos), grid, refine);
    const State init = sample_state(grid, rho0, u0);
    SolverConfig cfg;
    cfg.cfl = cfl;
    cfg.t_end = t_end;
    std::vector<EpsilonPoint> out;
    for (double e : epsilons) {
        const RunResult r = run(init, cfg, reg.with_epsilon(e), eos);
        if (r.outcome == Outcome::blowup) throw IntegrationFailure("blow-up during the epsilon sweep", *r.blowup_time);
        out.push_back({e, l1_distance(r.final_state, ref)});
    }
    return out;
}

double ConvergenceReport::spatial_order() const {
    return spatial.size() >= 2 ? spatial[spatial.size() - 2].order : nan;
}

double ConvergenceReport::temporal_order() const {
    return temporal.size() >= 2 ? temporal[temporal.size() - 2].order : nan;
}

ConvergenceReport convergence_study(SystemKind system, double length, const Profile& rho0, const Profile& u0,
                                    const Regulariser& reg, const EquationOfState& eos,
                                    const ConvergenceOptions& opt) {
    if (opt.levels < 3 || opt.temporal_levels < 2) throw UsageError("convergence study needs at least 3 levels");
    auto evolve = [&](const State& s, double dt) {
        SolverConfig cfg;
        cfg.t_end = opt.t_end;
        cfg.fixed_dt = dt;
        cfg.blowup_threshold = std::numeric_limits<double>::infinity();
        return system == SystemKind::rbe ? run(s, cfg, reg, eos).final_state : ghs_run(s, cfg, reg, eos).final_state;
    };
    auto max_speed = [&](const State& s) {
        double v = 0.0;
        for (std::size_t i = 0; i < s.rho.size(); ++i) v = std::max(v, std::abs(s.u[i]) + eos.sound_speed(s.rho[i]));
        return v;
    };
    ConvergenceReport rep;

    std::vector<State> sols;
    std::vector<Grid> grids;
    const std::size_t finest = opt.base_n << (opt.levels - 1);
    const Grid gf = Grid::periodic(length, finest);
    const double dt_s = 0.2 * gf.dx() / max_speed(sample_state(gf, rho0, u0));
    for (std::size_t k = 0; k < opt.levels; ++k) {
        grids.push_back(Grid::periodic(length, opt.base_n << k));
        sols.push_back(evolve(sample_state(grids.back(), rho0, u0), dt_s));
    }
    for (std::size_t k = 0; k + 1 < opt.levels; ++k)
        rep.spatial.push_back({grids[k].size(), dt_s, max_diff(sols[k], restrict_to(sols[k + 1], grids[k], 2)), nan});
    for (std::size_t k = 0; k + 1 < rep.spatial.size(); ++k)
        rep.spatial[k].order = std::log2(rep.spatial[k].error / rep.spatial[k + 1].error);

    const Grid gt = Grid::periodic(length, opt.temporal_n);
    const State s0 = sample_state(gt, rho0, u0);
    const double dt_min = opt.dt0 / static_cast<double>(std::size_t{1} << (opt.temporal_levels - 1));
    const State ref = evolve(s0, dt_min / 8.0);
    for (std::size_t j = 0; j < opt.temporal_levels; ++j) {
        const double dt = opt.dt0 / static_cast<double>(std::size_t{1} << j);
        rep.temporal.push_back({gt.size(), dt, max_diff(evolve(s0, dt), ref), nan});
    }
    for (std::size_t j = 0; j + 1 < rep.temporal.size(); ++j)
        rep.temporal[j].order = std::log2(rep.temporal[j].error / rep.temporal[j + 1].error);
    return rep;
}

}  // namespace hreg

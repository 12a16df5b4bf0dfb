#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hreg/errors.hpp"
#include "hreg/rbe_solver.hpp"

using namespace hreg;
constexpr double pi = std::numbers::pi;

namespace {

State sample(const Grid& g, auto&& r, auto&& u) {
    std::vector<double> rv(g.size()), uv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        rv[i] = r(g.x(i));
        uv[i] = u(g.x(i));
    }
    return make_state(g, rv, uv);
}

double max_diff(const Field& a, const Field& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

const auto sw = EquationOfState::shallow_water(1.0);

}  // namespace

TEST_CASE("reg_source") {
    const Grid g = Grid::periodic(2 * pi, 128);
    CHECK(reg_source(sample(g, [](double) { return 1.3; }, [](double) { return 0.4; }), Regulariser::cubic(0.1), sw)
              .max_abs() == 0.0);
    std::vector<double> err;
    for (std::size_t n : {64, 128, 256}) {
        const Grid h = Grid::periodic(2 * pi, n);
        const Field psi = reg_source(sample(h, [](double) { return 1.0; }, [](double x) { return std::sin(x); }),
                                     Regulariser::cubic(0.1), sw);
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(psi[i] - 2 * std::pow(std::cos(h.x(i)), 2)));
        err.push_back(e);
    }
    CHECK(std::log2(err[0] / err[1]) >= 1.8);
    CHECK(std::log2(err[1] / err[2]) >= 1.8);
    SUBCASE("psi can be negative") {
        const Field psi = reg_source(sample(g, [](double x) { return 1 + 0.3 * std::sin(x); }, [](double) { return 0.0; }),
                                     Regulariser::cubic(0.1), sw);
        CHECK(psi.min() < 0.0);
    }
    SUBCASE("vacuum") {
        const State s = sample(g, [](double x) { return std::sin(x); }, [](double) { return 0.0; });
        CHECK_THROWS_AS(reg_source(s, Regulariser::cubic(0.1), sw), VacuumError);
    }
}

TEST_CASE("rbe_rhs") {
    const Grid g = Grid::periodic(2 * pi, 64);
    SUBCASE("uniform state is at rest") {
        const Rates r = rbe_rhs(sample(g, [](double) { return 1.7; }, [](double) { return -0.3; }),
                                Regulariser::cubic(0.5), sw);
        CHECK(r.rho.max_abs() == 0.0);
        CHECK(r.u.max_abs() == 0.0);
    }
    SUBCASE("eps = 0 equals the classical right-hand side bitwise") {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> U(0.5, 1.5);
        for (int t = 0; t < 10; ++t) {
            std::vector<double> r(64), u(64);
            for (auto& v : r) v = U(rng);
            for (auto& v : u) v = U(rng) - 1.0;
            const State s = make_state(g, r, u);
            const Rates a = rbe_rhs(s, Regulariser::inverse(1.0, 1.0, 0.0), sw), b = classical_rhs(s, sw);
            for (std::size_t i = 0; i < 64; ++i) {
                CHECK(a.rho[i] == b.rho[i]);
                CHECK(a.u[i] == b.u[i]);
            }
        }
    }
}

TEST_CASE("Galilean invariance: boost then evolve equals evolve then boost") {
    // shift c t is 8 cells at n = 64 and 16 at n = 128
    const double T = 0.5, c = pi / 2;
    std::vector<double> err;
    for (std::size_t n : {64, 128}) {
        const Grid g = Grid::periodic(2 * pi, n);
        auto r0 = [](double x) { return 1 + 0.1 * std::sin(x); };
        auto u0 = [](double x) { return 0.1 * std::cos(x); };
        SolverConfig cfg;
        cfg.t_end = T;
        cfg.fixed_dt = T / 400;
        const auto reg = Regulariser::cubic(0.1);
        const State a = run(sample(g, r0, u0), cfg, reg, sw).final_state;
        const State b = run(sample(g, r0, [&](double x) { return u0(x) + c; }), cfg, reg, sw).final_state;
        const auto shift = static_cast<std::size_t>(std::lround(c * T / g.dx()));
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (i + shift) % n;
            e = std::max({e, std::abs(b.rho[j] - a.rho[i]), std::abs(b.u[j] - c - a.u[i])});
        }
        err.push_back(e);
    }
    CHECK(err[1] < 1e-3);
    CHECK(std::log2(err[0] / err[1]) >= 1.7);
}

TEST_CASE("small-amplitude wave follows the linear dispersionless solution") {
    const double a = 1e-6;
    const Grid g = Grid::periodic(2 * pi, 256);
    const State s0 = sample(g, [&](double x) { return 1 + a * std::cos(3 * x); },
                            [&](double x) { return a * std::cos(3 * x); });
    SolverConfig cfg;
    cfg.t_end = 2 * pi / 3;  // one period at unit sound speed
    const RunResult r = run(s0, cfg, Regulariser::cubic(0.3), sw);
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) e = std::max(e, std::abs(r.final_state.rho[i] - s0.rho[i]));
    CHECK(e <= 0.01 * a);
}

TEST_CASE("step") {
    const Grid g = Grid::periodic(2 * pi, 64);
    const auto reg = Regulariser::cubic(0.2);
    SUBCASE("uniform state stays exactly uniform") {
        const State s = sample(g, [](double) { return 1.2; }, [](double) { return 0.7; });
        const State n = step(s, 0.01, reg, sw);
        for (std::size_t i = 0; i < 64; ++i) {
            CHECK(n.rho[i] == 1.2);
            CHECK(n.u[i] == 0.7);
        }
        CHECK(n.t == 0.01);
    }
    SUBCASE("forward then backward returns to O(dt^5)") {
        const State s = sample(g, [](double x) { return 1 + 0.2 * std::sin(x); },
                               [](double x) { return 0.2 * std::cos(x); });
        std::vector<double> err;
        for (double dt : {0.04, 0.02}) {
            const State b = step(step(s, dt, reg, sw), -dt, reg, sw);
            err.push_back(std::max(max_diff(b.rho, s.rho), max_diff(b.u, s.u)));
        }
        CHECK(std::log2(err[0] / err[1]) >= 4.5);
    }
    SUBCASE("vacuum is reported with the failing time") {
        const State s = make_state(g, std::vector<double>(64, 1.0), std::vector<double>(64, 0.0), 0.25);
        std::vector<double> r(64, 1.0);
        r[10] = -1.0;
        try {
            step(make_state(g, r, std::vector<double>(64, 0.0), 0.25), 0.01, reg, sw);
            FAIL("expected an integration failure");
        } catch (const IntegrationFailure& e) {
            CHECK(e.time() == 0.25);
        }
        CHECK_NOTHROW(step(s, 0.01, reg, sw));
    }
}

TEST_CASE("cfl_dt") {
    const Grid g = Grid::periodic(1.28, 128);
    const State s = sample(g, [](double) { return 1.0; }, [](double) { return 0.0; });
    CHECK(cfl_dt(s, sw, 0.5) == doctest::Approx(0.005).epsilon(1e-14));
    CHECK(characteristic_dt(0.01, 4.0, 0.5) == doctest::Approx(0.5 * characteristic_dt(0.01, 2.0, 0.5)));
    CHECK(characteristic_dt(0.01, 0.0, 0.5) == 0.01);
    // isothermal: sound speed stays fixed as rho -> 0
    const auto iso = EquationOfState::isothermal(1.0, 1.0);
    for (double r : {1.0, 1e-3, 1e-9}) {
        const State t = sample(g, [&](double) { return r; }, [](double) { return 0.0; });
        CHECK(cfl_dt(t, iso, 0.5) == doctest::Approx(0.005).epsilon(1e-14));
    }
}

TEST_CASE("diagnostics") {
    const double L = 3.0;
    const Grid g = Grid::periodic(L, 64);
    const auto reg = Regulariser::cubic(0.4);
    SUBCASE("rest state") {
        const Diagnostics d = diagnostics(sample(g, [](double) { return 1.0; }, [](double) { return 0.0; }), reg, sw);
        CHECK(d.energy == 0.0);
        CHECK(d.m.max_abs() == 0.0);
    }
    SUBCASE("uniform flow") {
        const double rb = 1.0, U = 0.7;
        const Diagnostics d = diagnostics(sample(g, [&](double) { return rb; }, [&](double) { return U; }), reg, sw);
        CHECK(d.energy == doctest::Approx(0.5 * rb * U * U * L).epsilon(1e-14));
        CHECK(d.mass == doctest::Approx(rb * L).epsilon(1e-14));
        for (std::size_t i = 0; i < 64; ++i) CHECK(d.m[i] == doctest::Approx(rb * U).epsilon(1e-14));
    }
    SUBCASE("energy of smooth data against quadrature") {
        const auto iso = EquationOfState::isothermal(1.0, 1.0);
        const auto inv = Regulariser::inverse(1.0, 1.0, 0.3);
        auto r = [](double x) { return 1 + 0.2 * std::sin(x); };
        auto rx = [](double x) { return 0.2 * std::cos(x); };
        auto u = [](double x) { return 0.3 * std::cos(2 * x); };
        auto ux = [](double x) { return -0.6 * std::sin(2 * x); };
        auto density = [&](double x) {
            const double a1 = inv.derivatives(r(x)).a1, v2 = iso.potential_derivatives(r(x)).second;
            return 0.5 * r(x) * u(x) * u(x) + iso.potential(r(x)) +
                   0.3 * (r(x) * a1 * ux(x) * ux(x) + a1 * v2 * rx(x) * rx(x));
        };
        const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, 0.0, 2 * pi, 15, 1e-14);
        const Grid h = Grid::periodic(2 * pi, 1 << 16);
        const Diagnostics d = diagnostics(sample(h, r, u), inv, iso);
        CHECK(std::abs(d.energy - q) <= 1e-8 * q);
    }
}

TEST_CASE("run") {
    const Grid g = Grid::periodic(2 * pi, 32);
    const auto reg = Regulariser::cubic(0.1);
    SUBCASE("uniform state to t = 10 keeps its energy exactly") {
        SolverConfig cfg;
        cfg.t_end = 10.0;
        const RunResult r = run(sample(g, [](double) { return 1.1; }, [](double) { return 0.3; }), cfg, reg, sw);
        CHECK(r.outcome == Outcome::completed);
        CHECK(r.final_state.t == 10.0);
        CHECK(r.series.back().energy == r.series.front().energy);
    }
    SUBCASE("snapshots land exactly on the cadence") {
        SolverConfig cfg;
        cfg.t_end = 1.0;
        cfg.snapshot_cadence = 0.25;
        std::vector<double> times;
        std::size_t with_r = 0;
        run(sample(g, [](double x) { return 1 + 0.1 * std::sin(x); }, [](double) { return 0.0; }), cfg, reg, sw,
            [&](const Snapshot& s) {
                times.push_back(s.t);
                with_r += s.R.has_value();
            });
        REQUIRE(times.size() == 5);
        for (std::size_t k = 0; k < 5; ++k) CHECK(times[k] == 0.25 * static_cast<double>(k));
        CHECK(with_r == 5);
    }
    SUBCASE("default thresholds") {
        SolverConfig cfg;
        CHECK(cfg.cfl == 0.5);
        CHECK(cfg.blowup_factor == 1e3);
        cfg.t_end = 0.1;
        const State s = sample(g, [](double x) { return 1 + 0.1 * std::sin(x); }, [](double) { return 0.0; });
        const RunResult r = run(s, cfg, reg, sw);
        CHECK(r.threshold == doctest::Approx(1e3 * (r.series.front().sup_wx + 1)));
    }
    SUBCASE("invalid configuration") {
        SolverConfig cfg;
        cfg.cfl = 1.5;
        const State s = sample(g, [](double) { return 1.0; }, [](double) { return 0.0; });
        CHECK_THROWS_AS(run(s, cfg, reg, sw), UsageError);
    }
    SUBCASE("mass and momentum on a periodic run") {
        SolverConfig cfg;
        cfg.t_end = 1.0;
        const RunResult r = run(sample(Grid::periodic(2 * pi, 128), [](double x) { return 1 + 0.2 * std::sin(x); },
                                       [](double x) { return 0.2 * std::cos(x); }),
                                cfg, reg, sw);
        const auto& a = r.series.front();
        const auto& b = r.series.back();
        CHECK(std::abs(b.mass - a.mass) <= 1e-12 * a.mass);
        CHECK(std::abs(b.momentum - a.momentum) <= 1e-8 * std::abs(a.mass));
    }
}

TEST_CASE("first-order reference scheme keeps a uniform state") {
    const Grid g = Grid::periodic(1.0, 32);
    const State s = sample(g, [](double) { return 2.0; }, [](double) { return 0.5; });
    const State r = rusanov_run(s, 0.3, 0.5, sw);
    CHECK(r.t == 0.3);
    for (std::size_t i = 0; i < 32; ++i) {
        CHECK(r.rho[i] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(r.u[i] == doctest::Approx(0.5).epsilon(1e-14));
    }
}

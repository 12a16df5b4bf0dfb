#pragma once

// shared RK4 stepping and time loop for the rbE and gHS integrators

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "hreg/errors.hpp"
#include "hreg/rbe_solver.hpp"

namespace hreg::detail {

inline State advance(const State& s, double h, const Rates& k) {
    std::vector<double> r(s.rho.size()), u(s.u.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = s.rho[i] + h * k.rho[i];
        u[i] = s.u[i] + h * k.u[i];
    }
    return {s.t + h, Field(s.rho.grid(), std::move(r), s.rho.ghosts()), Field(s.u.grid(), std::move(u), s.u.ghosts())};
}

template <class Rhs>
State rk4(const State& s, double dt, Rhs&& rhs) {
    if (!(dt != 0.0) || !std::isfinite(dt)) throw UsageError("time step must be finite and nonzero");
    try {
        const Rates k1 = rhs(s);
        const Rates k2 = rhs(advance(s, 0.5 * dt, k1));
        const Rates k3 = rhs(advance(s, 0.5 * dt, k2));
        const Rates k4 = rhs(advance(s, dt, k3));
        const std::size_t n = s.rho.size();
        std::vector<double> r(n), u(n);
        const double h = dt / 6.0;
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = s.rho[i] + h * (k1.rho[i] + 2.0 * k2.rho[i] + 2.0 * k3.rho[i] + k4.rho[i]);
            u[i] = s.u[i] + h * (k1.u[i] + 2.0 * k2.u[i] + 2.0 * k3.u[i] + k4.u[i]);
        }
        State out{s.t + dt, Field(s.rho.grid(), std::move(r), s.rho.ghosts()),
                  Field(s.u.grid(), std::move(u), s.u.ghosts())};
        if (!(out.rho.min() > 0.0)) throw VacuumError("vacuum reached");
        return out;
    } catch (const DomainError& e) {
        throw IntegrationFailure(std::string("integration failed: ") + e.what(), s.t);
    } catch (const NumericalBreakdown& e) {
        throw IntegrationFailure(std::string("integration failed: ") + e.what(), s.t);
    }
}

struct LoopHooks {
    std::function<State(const State&, double)> step;
    std::function<double(const State&)> dt;
    std::function<DiagnosticRecord(const State&, double)> record;
    std::function<Snapshot(const State&)> snapshot;
};

inline void validate(const SolverConfig& cfg, double t0) {
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw UsageError("cfl must be in (0, 1]");
    if (!(cfg.t_end >= t0)) throw UsageError("t_end must not precede the initial time");
    if (!(cfg.snapshot_cadence >= 0.0)) throw UsageError("snapshot_cadence must be >= 0");
    if (cfg.fixed_dt && !(*cfg.fixed_dt > 0.0)) throw UsageError("dt must be > 0");
}

inline RunResult run_loop(const State& initial, const SolverConfig& cfg, const LoopHooks& h,
                          const SnapshotSink& sink) {
    validate(cfg, initial.t);
    RunResult res{Outcome::completed, std::nullopt, 0.0, initial, {}, {}, 0};
    State s = initial;
    const DiagnosticRecord d0 = h.record(s, 0.0);
    res.series.push_back(d0);
    res.threshold = cfg.blowup_threshold.value_or(cfg.blowup_factor * (d0.sup_wx + 1.0));

    const double cad = cfg.snapshot_cadence;
    double next_snap = std::numeric_limits<double>::infinity();
    long k = 0;
    if (cad > 0.0) {
        k = std::lround(std::floor(s.t / cad + 1e-9));
        if (sink) sink(h.snapshot(s));
        next_snap = static_cast<double>(++k) * cad;
    }
    const bool line = !s.rho.grid().is_periodic();
    bool warned = false;
    const double dx = s.rho.grid().dx();

    while (s.t < cfg.t_end) {
        double dt = cfg.fixed_dt ? *cfg.fixed_dt : std::min(h.dt(s), dx);
        const double target = std::min(cfg.t_end, next_snap);
        bool land = false;
        if (s.t + dt >= target - 1e-3 * dt) {
            dt = target - s.t;
            land = true;
        }
        State next = h.step(s, dt);
        next.t = land ? target : s.t + dt;
        s = std::move(next);
        ++res.steps;
        const DiagnosticRecord d = h.record(s, dt);
        res.series.push_back(d);
        if (line && !warned && (boundary_contaminated(s.rho) || boundary_contaminated(s.u))) {
            warned = true;
            res.warnings.push_back("boundary contamination at t = " + std::to_string(s.t));
        }
        if (!(d.sup_wx <= res.threshold)) {
            res.outcome = Outcome::blowup;
            res.blowup_time = s.t;
            break;
        }
        if (land && s.t == next_snap) {
            if (sink) sink(h.snapshot(s));
            next_snap = static_cast<double>(++k) * cad;
        }
    }
    res.final_state = s;
    return res;
}

}  // namespace hreg::detail

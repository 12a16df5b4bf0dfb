#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hreg/eos.hpp"
#include "hreg/grid.hpp"
#include "hreg/regularizer.hpp"

namespace hreg {

struct State {
    double t = 0.0;
    Field rho;
    Field u;
};

// ghost values come from the grid's far-field state on a line grid
State make_state(const Grid& grid, std::vector<double> rho, std::vector<double> u, double t = 0.0);

struct Rates {
    Field rho;
    Field u;
};

struct Diagnostics {
    double energy;
    double mass;
    double momentum;  // integral of rho u
    Field m;          // rho u - 2 eps (rho A' u_x)_x
    double sup_wx;    // max(|rho_x|, |u_x|)
};

struct SolverConfig {
    double cfl = 0.5;
    double t_end = 1.0;
    double snapshot_cadence = 0.0;  // 0 disables snapshots
    double blowup_factor = 1e3;
    std::optional<double> blowup_threshold;  // overrides blowup_factor
    std::optional<double> fixed_dt;
};

struct Snapshot {
    double t;
    Field rho;
    Field u;
    Field m;
    std::optional<Field> R;
};

struct DiagnosticRecord {
    double t, dt, mass, momentum, energy, sup_wx;
};

enum class Outcome { completed, blowup };

struct RunResult {
    Outcome outcome = Outcome::completed;
    std::optional<double> blowup_time;
    double threshold = 0.0;
    State final_state;
    std::vector<DiagnosticRecord> series;
    std::vector<std::string> warnings;
    std::size_t steps = 0;
};

using SnapshotSink = std::function<void(const Snapshot&)>;

Field reg_source(const State& s, const Regulariser& reg, const EquationOfState& eos);
// centred classical Euler terms only
Rates classical_rhs(const State& s, const EquationOfState& eos);
Rates rbe_rhs(const State& s, const Regulariser& reg, const EquationOfState& eos);

// one classical RK4 step; dt may be negative (time reversal)
State step(const State& s, double dt, const Regulariser& reg, const EquationOfState& eos);

double characteristic_dt(double dx, double max_speed, double cfl);
double cfl_dt(const State& s, const EquationOfState& eos, double cfl);

Diagnostics diagnostics(const State& s, const Regulariser& reg, const EquationOfState& eos);
// the regularising term J psi stored with snapshots
Field regularising_term(const State& s, const Regulariser& reg, const EquationOfState& eos);

RunResult run(const State& initial, const SolverConfig& cfg, const Regulariser& reg,
              const EquationOfState& eos, const SnapshotSink& sink = {});

// first-order Rusanov scheme on the conservative classical system, forward Euler in time
State rusanov_run(const State& initial, double t_end, double cfl, const EquationOfState& eos);

}  // namespace hreg

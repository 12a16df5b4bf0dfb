#pragma once

#include <utility>
#include <vector>

#include "hreg/eos.hpp"
#include "hreg/grid.hpp"
#include "hreg/rbe_solver.hpp"
#include "hreg/regularizer.hpp"

namespace hreg {

// gHS states are (t, rho, u) on a periodic grid
using GhsState = State;

// g(t): a constant, or a table of (t, g) pairs interpolated linearly and held constant outside
struct Forcing {
    double constant = 0.0;
    std::vector<std::pair<double, double>> table;
    double operator()(double t) const;
};

// pointwise source of the integrated momentum equation; the zero-mean part
// c/(rho A') that keeps u periodic is not included here
Field ghs_source(const GhsState& s, const Regulariser& reg, const EquationOfState& eos);
Rates ghs_rhs(const GhsState& s, const Regulariser& reg, const EquationOfState& eos, const Forcing& g = {});
GhsState ghs_step(const GhsState& s, double dt, const Regulariser& reg, const EquationOfState& eos,
                  const Forcing& g = {});
// integral of rho A' u_x^2 + A' V'' rho_x^2
double ghs_energy(const GhsState& s, const Regulariser& reg, const EquationOfState& eos);
RunResult ghs_run(const GhsState& initial, const SolverConfig& cfg, const Regulariser& reg,
                  const EquationOfState& eos, const Forcing& g = {}, const SnapshotSink& sink = {});

// wave speed c(v) = sqrt(d^2(v V(1/v))/dv^2) in specific volume v, and its derivative
struct WaveSpeed {
    double c;
    double dc;
};
WaveSpeed vwe_speed(const EquationOfState& eos, double upsilon);
// c^2 v_xixi + c c' v_xi^2
Field vwe_rhs(const Field& upsilon, const EquationOfState& eos);
// leapfrog: v(dtau) from a Taylor start, then v^{k+1} = 2v^k - v^{k-1} + dtau^2 rhs
Field vwe_leapfrog(const Field& upsilon0, const Field& upsilon_tau0, double dtau, std::size_t steps,
                   const EquationOfState& eos);

}  // namespace hreg

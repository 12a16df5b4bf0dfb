#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hreg/eos.hpp"
#include "hreg/ghs_solver.hpp"
#include "hreg/grid.hpp"
#include "hreg/rbe_solver.hpp"
#include "hreg/regularizer.hpp"

namespace hreg {

// ---- linear waves

// omega/k for the two-function family with B'(rho_bar) = b1, A'(rho_bar) = a1
double dispersion_speed_general(const EquationOfState& eos, double epsilon, double k, double a1, double b1);
double dispersion_speed_theory(const EquationOfState& eos, const Regulariser& reg, double k);

struct DispersionOptions {
    std::size_t points_per_wavelength = 64;
    std::size_t min_points = 256;
    double cfl = 0.5;
    double harmonic_limit = 0.01;
};

// rbE run over one predicted period on [0, 2 pi); k must be a positive integer
double dispersion_speed_measured(const EquationOfState& eos, const Regulariser& reg, double k, double amplitude,
                                 const DispersionOptions& opt = {});

// ---- steady motions

struct SteadyFluxes {
    double I;
    double S;
    double F;
};

SteadyFluxes far_field_fluxes(double rho, double u, const EquationOfState& eos);

struct FluxConnection {
    SteadyFluxes left;
    SteadyFluxes right;
    bool admissible;    // I and S match
    double dissipated;  // F_right - F_left
};

FluxConnection far_field_connection(double rho_left, double u_left, double rho_right, double u_right,
                                    const EquationOfState& eos, double rel_tol = 1e-12);

// the state with the same mass and momentum fluxes on the other side of the sonic density
double conjugate_density(double rho, double u, const EquationOfState& eos);

// density where I^2 = rho^3 V''
double sonic_density(double I, const EquationOfState& eos);

struct SteadySlope {
    double slope_squared;  // +inf at a sonic point
    double numerator;      // I^2 - 2 S rho + 2 (F/I) rho^2 - 2 rho V
    double denominator;    // I^2 - rho^3 V''
    bool sonic;
};

SteadySlope steady_ode_rhs(double rho, const SteadyFluxes& fl, const EquationOfState& eos, const Regulariser& reg);

enum class SteadyStop { extent, slope_zero, sonic };

struct SteadyOptions {
    double max_length = 10.0;
    std::size_t samples = 4001;
    double rtol = 1e-11;
    double atol = 1e-13;
};

struct SteadyProfile {
    Field rho;  // on [0, x_end], last node at x_end
    SteadyStop stop;
    double x_end;
    double rho_end;
};

// dρ/dx = direction * sqrt(slope_squared), x from 0, until an event or max_length
SteadyProfile integrate_steady_profile(const SteadyFluxes& fl, const EquationOfState& eos, const Regulariser& reg,
                                       double rho_start, int direction, const SteadyOptions& opt = {});

// amplitude of rho - rho_s ~ varrho |x|^(2/3) at a sonic point, from the leading-order balance
double predicted_cusp_amplitude(const SteadyFluxes& fl, const EquationOfState& eos, const Regulariser& reg);

struct SingularityFit {
    std::optional<double> alpha_left, alpha_right;
    std::optional<double> rho_amp_left, rho_amp_right;
    std::optional<double> r2_left, r2_right;
    double window_lo = 0.0;
    double window_hi = 0.0;
    double alpha() const;
    double r_squared() const;
};

class FitUnreliable : public std::runtime_error {
public:
    FitUnreliable(const std::string& what, SingularityFit fit) : std::runtime_error(what), fit_(std::move(fit)) {}
    const SingularityFit& fit() const noexcept { return fit_; }

private:
    SingularityFit fit_;
};

struct FitOptions {
    double lower_cells = 3.0;
    double outer_fraction = 0.5;
    double domain_fraction = 0.1;
    double min_r2 = 0.99;
    std::optional<double> base;  // rho_bar; defaults to the profile value at center
};

SingularityFit fit_singularity_exponent(const Field& profile, double center, const FitOptions& opt = {});

// ---- studies

using Profile = std::function<double(double)>;

double l1_distance(const State& a, const State& b);

struct EpsilonPoint {
    double epsilon;
    double l1;
};

// rbE at each epsilon against a refined first-order Rusanov reference sampled at the coarse nodes
std::vector<EpsilonPoint> epsilon_sweep(const Grid& grid, const Profile& rho0, const Profile& u0,
                                        std::span<const double> epsilons, double t_end, const Regulariser& reg,
                                        const EquationOfState& eos, std::size_t refine = 32, double cfl = 0.5);

enum class SystemKind { rbe, ghs };

struct ConvergencePoint {
    std::size_t n;
    double dt;
    double error;
    double order;  // NaN for the last level
};

struct ConvergenceReport {
    std::vector<ConvergencePoint> spatial;
    std::vector<ConvergencePoint> temporal;
    double spatial_order() const;
    double temporal_order() const;
};

struct ConvergenceOptions {
    std::size_t base_n = 64;
    std::size_t levels = 4;        // spatial grids base_n * 2^k, k < levels
    std::size_t temporal_n = 128;
    double dt0 = 0.02;             // coarsest temporal step
    std::size_t temporal_levels = 3;
    double t_end = 0.5;
};

ConvergenceReport convergence_study(SystemKind system, double length, const Profile& rho0, const Profile& u0,
                                    const Regulariser& reg, const EquationOfState& eos,
                                    const ConvergenceOptions& opt = {});

}  // namespace hreg

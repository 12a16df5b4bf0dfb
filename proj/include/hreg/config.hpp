#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hreg/analysis.hpp"
#include "hreg/eos.hpp"
#include "hreg/ghs_solver.hpp"
#include "hreg/grid.hpp"
#include "hreg/rbe_solver.hpp"
#include "hreg/regularizer.hpp"

namespace hreg {

enum class ExperimentKind { rbe_run, ghs_run, dispersion_study, steady_profile, epsilon_sweep, convergence_study };

std::string to_string(ExperimentKind k);

struct EosSpec {
    EosKind kind = EosKind::shallow_water;
    double gamma = 2.0;
    double rho_bar = 1.0;
    double p_bar = 0.5;
    double g = 1.0;
    EquationOfState build() const;
};

struct RegSpec {
    RegKind kind = RegKind::cubic;
    double epsilon = 0.1;
    double a = 1.0;
    double p = 3.0;
    std::optional<double> rho_bar;  // inverse family; defaults to the eos reference density
    Regulariser build(double eos_rho_bar) const;
};

struct GridSpec {
    Topology topology = Topology::periodic;
    double length = 6.283185307179586;
    double x_min = -10.0;
    double x_max = 10.0;
    std::size_t n = 256;
    std::optional<double> rho_left, rho_right, u_left, u_right;
};

enum class Target { rho, u, both };

struct InitialSpec {
    std::vector<std::string> presets{"constant"};
    std::optional<double> rho0;  // defaults to the eos reference density
    double u0 = 0.0;
    double amplitude = 0.1;
    double mode = 1.0;
    double width = 0.5;
    std::optional<double> center;  // defaults to the domain midpoint
    Target sine_target = Target::both;
    Target bump_target = Target::rho;
    Target tanh_target = Target::u;
    std::string file;  // snapshot preset
    double t0 = 0.0;
};

struct DispersionSpec {
    std::vector<double> wavenumbers{1, 2, 4, 8};
    double amplitude = 1e-6;
    std::size_t points_per_wavelength = 64;
};

struct SteadySpec {
    double rho_far = 1.2;
    double mass_flux = 1.0;
    bool conjugate = false;  // use the conjugate far state (same I and S, other F)
    double start_offset = 0.05;
    double max_length = 50.0;
    std::size_t samples = 4001;
};

struct SweepSpec {
    std::vector<double> epsilons{1e-1, 1e-2, 1e-3};
    std::size_t refine = 32;
};

struct ConvergenceSpec {
    SystemKind system = SystemKind::rbe;
    ConvergenceOptions options;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::rbe_run;
    std::string output_dir = "output";
    EosSpec eos;
    RegSpec reg;
    GridSpec grid;
    InitialSpec initial;
    SolverConfig solver;
    bool require_completion = false;
    double forcing_g = 0.0;
    DispersionSpec dispersion;
    SteadySpec steady;
    SweepSpec sweep;
    ConvergenceSpec convergence;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    std::vector<std::string> errors_;
};

// "section.key" = value pairs applied on top of the text before validation
using Overrides = std::vector<std::pair<std::string, std::string>>;

// throws ConfigError listing every problem found
ExperimentConfig parse_config(std::string_view text, const Overrides& overrides = {});

}  // namespace hreg

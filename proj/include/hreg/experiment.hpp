#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hreg/config.hpp"

namespace hreg {

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_failure = 2, exit_blowup = 3 };

// environment variable that, when set, is the root for relative output directories
inline constexpr const char* output_root_env = "HREG_OUTPUT_ROOT";

std::filesystem::path resolve_output_dir(const std::string& dir);

Grid build_grid(const ExperimentConfig& cfg);
// density and velocity profiles of the named presets (not the snapshot preset)
std::pair<Profile, Profile> initial_profiles(const ExperimentConfig& cfg);
State initial_state(const ExperimentConfig& cfg);

// writes the artefacts of one experiment; returns an ExitCode
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

struct SweepMember {
    std::string value;
    int exit_code;
    std::filesystem::path dir;
};

// one experiment per value of section.key, run concurrently, each in <output_dir>/<key>=<value>
std::vector<SweepMember> run_sweep(std::string_view config_text, const std::string& param,
                                   const std::vector<std::string>& values, std::ostream& log);

}  // namespace hreg

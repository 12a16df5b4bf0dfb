#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hreg/config.hpp"
#include "hreg/experiment.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hreg::ConfigError({"cannot read " + path});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int report(const hreg::ConfigError& e) {
    for (const auto& msg : e.errors()) std::cerr << "error: " << msg << '\n';
    return hreg::exit_validation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hreg: regularised barotropic Euler experiments"};
    app.require_subcommand(1);

    std::string config;
    auto* run = app.add_subcommand("run", "run the experiment described by a config file");
    run->add_option("config", config, "config file")->required();

    auto* validate = app.add_subcommand("validate", "check a config file and print the resolved experiment");
    validate->add_option("config", config, "config file")->required();

    std::string param;
    std::vector<std::string> values;
    auto* sweep = app.add_subcommand("sweep", "run one experiment per value of a config key, concurrently");
    sweep->add_option("config", config, "config file")->required();
    sweep->add_option("--param", param, "section.key to vary")->required();
    sweep->add_option("--values", values, "comma-separated values")->required()->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : hreg::exit_validation;
    }

    try {
        const std::string text = slurp(config);
        if (*validate) {
            const auto cfg = hreg::parse_config(text);
            std::cout << "ok: " << hreg::to_string(cfg.kind) << " -> " << hreg::resolve_output_dir(cfg.output_dir).string()
                      << '\n';
            return hreg::exit_ok;
        }
        if (*run) {
            const auto cfg = hreg::parse_config(text);
            return hreg::run_experiment(cfg, std::cerr);
        }
        const auto members = hreg::run_sweep(text, param, values, std::cerr);
        int worst = hreg::exit_ok;
        for (const auto& m : members) {
            std::cout << param << '=' << m.value << ' ' << m.exit_code << ' ' << m.dir.string() << '\n';
            worst = std::max(worst, m.exit_code);
        }
        return worst;
    } catch (const hreg::ConfigError& e) {
        return report(e);
    }
}

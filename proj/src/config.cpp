#include "hreg/config.hpp"
#include "hreg/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace hreg {

namespace pt = boost::property_tree;

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::rbe_run: return "rbe_run";
        case ExperimentKind::ghs_run: return "ghs_run";
        case ExperimentKind::dispersion_study: return "dispersion_study";
        case ExperimentKind::steady_profile: return "steady_profile";
        case ExperimentKind::epsilon_sweep: return "epsilon_sweep";
        case ExperimentKind::convergence_study: return "convergence_study";
    }
    return "unknown";
}

EquationOfState EosSpec::build() const {
    switch (kind) {
        case EosKind::isentropic: return EquationOfState::isentropic(gamma, rho_bar, p_bar);
        case EosKind::isothermal: return EquationOfState::isothermal(rho_bar, p_bar);
        case EosKind::shallow_water: return EquationOfState::shallow_water(g, rho_bar);
    }
    throw UsageError("unknown equation of state");
}

Regulariser RegSpec::build(double eos_rho_bar) const {
    switch (kind) {
        case RegKind::cubic: return Regulariser::cubic(epsilon);
        case RegKind::inverse: return Regulariser::inverse(a, rho_bar.value_or(eos_rho_bar), epsilon);
        case RegKind::power: return Regulariser::power(p, epsilon);
    }
    throw UsageError("unknown regulariser");
}

namespace {

std::string errors_text(const std::vector<std::string>& e) {
    std::string s = "invalid configuration:";
    for (const auto& x : e) s += "\n  " + x;
    return s;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<double> to_double(std::string s) {
    s = trim(std::move(s));
    double factor = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        s = trim(s.substr(0, s.size() - 2));
        if (!s.empty() && s.back() == '*') s = trim(s.substr(0, s.size() - 1));
        factor = std::numbers::pi;
        if (s.empty()) return factor;
        if (s == "-") return -factor;
    }
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc{} || r.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v * factor;
}

class Reader {
public:
    Reader(const pt::ptree& tree, std::vector<std::string>& errors) : tree_(tree), errors_(errors) {}

    std::optional<std::string> raw(const std::string& sec, const std::string& key) {
        allowed_[sec].insert(key);
        const auto s = tree_.get_child_optional(sec);
        if (!s) return std::nullopt;
        const auto v = s->get_child_optional(pt::ptree::path_type(key, '\0'));
        if (!v) return std::nullopt;
        return trim(v->data());
    }

    std::optional<double> opt_num(const std::string& sec, const std::string& key) {
        const auto r = raw(sec, key);
        if (!r) return std::nullopt;
        const auto v = to_double(*r);
        if (!v) errors_.push_back(sec + "." + key + ": '" + *r + "' is not a number");
        return v;
    }

    double num(const std::string& sec, const std::string& key, double def) { return opt_num(sec, key).value_or(def); }

    std::size_t count(const std::string& sec, const std::string& key, std::size_t def) {
        const auto v = opt_num(sec, key);
        if (!v) return def;
        if (*v < 0.0 || std::floor(*v) != *v) {
            errors_.push_back(key + " must be a non-negative integer");
            return def;
        }
        return static_cast<std::size_t>(*v);
    }

    bool flag(const std::string& sec, const std::string& key, bool def) {
        const auto r = raw(sec, key);
        if (!r) return def;
        if (*r == "true" || *r == "1" || *r == "yes") return true;
        if (*r == "false" || *r == "0" || *r == "no") return false;
        errors_.push_back(sec + "." + key + ": '" + *r + "' is not a boolean");
        return def;
    }

    std::string str(const std::string& sec, const std::string& key, const std::string& def) {
        return raw(sec, key).value_or(def);
    }

    std::vector<std::string> words(const std::string& sec, const std::string& key, std::vector<std::string> def) {
        const auto r = raw(sec, key);
        if (!r) return def;
        std::vector<std::string> out;
        std::stringstream ss(*r);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(trim(item));
        return out;
    }

    std::vector<double> list(const std::string& sec, const std::string& key, std::vector<double> def) {
        const auto r = raw(sec, key);
        if (!r) return def;
        std::vector<double> out;
        for (const auto& w : words(sec, key, {})) {
            const auto v = to_double(w);
            if (!v) {
                errors_.push_back(sec + "." + key + ": '" + w + "' is not a number");
                continue;
            }
            out.push_back(*v);
        }
        if (out.empty()) errors_.push_back(sec + "." + key + " must list at least one value");
        return out;
    }

    template <class E>
    E choice(const std::string& sec, const std::string& key, E def, const std::map<std::string, E>& names) {
        const auto r = raw(sec, key);
        if (!r) return def;
        const auto it = names.find(*r);
        if (it != names.end()) return it->second;
        std::string opts;
        for (const auto& [n, _] : names) opts += (opts.empty() ? "" : ", ") + n;
        errors_.push_back(sec + "." + key + ": unknown value '" + *r + "' (expected one of " + opts + ")");
        return def;
    }

    void reject_unknown() {
        for (const auto& [sec, body] : tree_) {
            const auto a = allowed_.find(sec);
            if (!body.data().empty() && body.empty()) {
                errors_.push_back("unknown key '" + sec + "' outside any section");
                continue;
            }
            if (a == allowed_.end()) {
                errors_.push_back("unknown section [" + sec + "]");
                continue;
            }
            for (const auto& [key, _] : body)
                if (!a->second.count(key)) errors_.push_back("unknown key '" + sec + "." + key + "'");
        }
    }

private:
    const pt::ptree& tree_;
    std::vector<std::string>& errors_;
    std::map<std::string, std::set<std::string>> allowed_;
};

Target target_of(Reader& r, std::vector<std::string>& errs, const std::string& key, Target def) {
    (void)errs;
    return r.choice<Target>("initial", key, def, {{"rho", Target::rho}, {"u", Target::u}, {"both", Target::both}});
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(errors_text(errors)), errors_(std::move(errors)) {}

ExperimentConfig parse_config(std::string_view text, const Overrides& overrides) {
    pt::ptree tree;
    std::vector<std::string> errs;
    try {
        std::istringstream in{std::string(text)};
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError({std::string("syntax: ") + e.message() + " (line " + std::to_string(e.line()) + ")"});
    }
    for (const auto& [path, value] : overrides) {
        const auto dot = path.find('.');
        if (dot == std::string::npos || dot == 0 || dot + 1 == path.size()) {
            errs.push_back("override '" + path + "' must look like section.key");
            continue;
        }
        tree.put(pt::ptree::path_type(path, '.'), value);
    }

    Reader r(tree, errs);
    ExperimentConfig c;

    c.kind = r.choice<ExperimentKind>("experiment", "kind", ExperimentKind::rbe_run,
                                      {{"rbe_run", ExperimentKind::rbe_run},
                                       {"ghs_run", ExperimentKind::ghs_run},
                                       {"dispersion_study", ExperimentKind::dispersion_study},
                                       {"steady_profile", ExperimentKind::steady_profile},
                                       {"epsilon_sweep", ExperimentKind::epsilon_sweep},
                                       {"convergence_study", ExperimentKind::convergence_study}});
    c.output_dir = r.str("experiment", "output_dir", c.output_dir);
    if (c.output_dir.empty()) errs.push_back("output_dir must not be empty");

    // eos
    c.eos.kind = r.choice<EosKind>("eos", "kind", EosKind::shallow_water,
                                   {{"isentropic", EosKind::isentropic},
                                    {"isothermal", EosKind::isothermal},
                                    {"shallow_water", EosKind::shallow_water}});
    c.eos.gamma = r.num("eos", "gamma", c.eos.kind == EosKind::isentropic ? 1.4 : 2.0);
    c.eos.rho_bar = r.num("eos", "rho_bar", 1.0);
    c.eos.p_bar = r.num("eos", "p_bar", c.eos.kind == EosKind::shallow_water ? 0.5 : 1.0);
    c.eos.g = r.num("eos", "g", 1.0);
    if (c.eos.kind == EosKind::isentropic) {
        if (!(c.eos.gamma > 0.0)) errs.push_back("gamma must be > 0");
        else if (c.eos.gamma == 1.0) errs.push_back("gamma must differ from 1 (use kind = isothermal)");
    }
    if (!(c.eos.rho_bar > 0.0)) errs.push_back("rho_bar must be > 0");
    if (c.eos.kind != EosKind::shallow_water && !(c.eos.p_bar > 0.0)) errs.push_back("p_bar must be > 0");
    if (c.eos.kind == EosKind::shallow_water && !(c.eos.g > 0.0)) errs.push_back("g must be > 0");

    // regulariser
    c.reg.kind = r.choice<RegKind>("regulariser", "kind", RegKind::cubic,
                                   {{"cubic", RegKind::cubic}, {"inverse", RegKind::inverse}, {"power", RegKind::power}});
    c.reg.epsilon = r.num("regulariser", "epsilon", c.reg.epsilon);
    c.reg.a = r.num("regulariser", "a", c.reg.a);
    c.reg.p = r.num("regulariser", "p", c.reg.p);
    c.reg.rho_bar = r.opt_num("regulariser", "rho_bar");
    if (!(c.reg.epsilon >= 0.0)) errs.push_back("epsilon must be ≥ 0");
    if (c.reg.kind == RegKind::inverse && !(c.reg.a > 0.0)) errs.push_back("a must be > 0");
    if (c.reg.kind == RegKind::power && c.reg.p == 0.0) errs.push_back("p must be nonzero");
    if (c.reg.rho_bar && !(*c.reg.rho_bar > 0.0)) errs.push_back("regulariser rho_bar must be > 0");

    // grid
    c.grid.topology = r.choice<Topology>("grid", "topology", Topology::periodic,
                                         {{"periodic", Topology::periodic}, {"line", Topology::line}});
    c.grid.length = r.num("grid", "length", c.grid.length);
    c.grid.x_min = r.num("grid", "x_min", c.grid.x_min);
    c.grid.x_max = r.num("grid", "x_max", c.grid.x_max);
    c.grid.n = r.count("grid", "n", c.grid.n);
    c.grid.rho_left = r.opt_num("grid", "rho_left");
    c.grid.rho_right = r.opt_num("grid", "rho_right");
    c.grid.u_left = r.opt_num("grid", "u_left");
    c.grid.u_right = r.opt_num("grid", "u_right");
    if (c.grid.n < 8) errs.push_back("n must be ≥ 8");
    if (c.grid.topology == Topology::periodic && !(c.grid.length > 0.0)) errs.push_back("length must be > 0");
    if (c.grid.topology == Topology::line && !(c.grid.x_max > c.grid.x_min)) errs.push_back("x_max must be > x_min");
    for (const auto& v : {c.grid.rho_left, c.grid.rho_right})
        if (v && !(*v > 0.0)) errs.push_back("far-field density must be > 0");

    // initial condition
    c.initial.presets = r.words("initial", "preset", c.initial.presets);
    c.initial.rho0 = r.opt_num("initial", "rho0");
    c.initial.u0 = r.num("initial", "u0", c.initial.u0);
    c.initial.amplitude = r.num("initial", "amplitude", c.initial.amplitude);
    c.initial.mode = r.num("initial", "mode", c.initial.mode);
    c.initial.width = r.num("initial", "width", c.initial.width);
    c.initial.center = r.opt_num("initial", "center");
    c.initial.sine_target = target_of(r, errs, "sine_target", c.initial.sine_target);
    c.initial.bump_target = target_of(r, errs, "bump_target", c.initial.bump_target);
    c.initial.tanh_target = target_of(r, errs, "tanh_target", c.initial.tanh_target);
    c.initial.file = r.str("initial", "file", "");
    c.initial.t0 = r.num("initial", "t0", 0.0);
    {
        static const std::set<std::string> known{"constant", "sine", "gaussian_bump", "tanh_front", "snapshot"};
        for (const auto& p : c.initial.presets)
            if (!known.count(p)) errs.push_back("unknown initial preset '" + p + "'");
        const bool snap = std::count(c.initial.presets.begin(), c.initial.presets.end(), "snapshot") > 0;
        if (snap && c.initial.presets.size() != 1) errs.push_back("the snapshot preset cannot be combined");
        if (snap && c.initial.file.empty()) errs.push_back("the snapshot preset needs initial.file");
        if (!(c.initial.width > 0.0)) errs.push_back("width must be > 0");
        if (c.initial.rho0 && !(*c.initial.rho0 > 0.0)) errs.push_back("rho0 must be > 0");
        if (c.grid.topology == Topology::periodic && std::floor(c.initial.mode) != c.initial.mode)
            errs.push_back("mode must be an integer on a periodic grid");
    }

    // solver
    c.solver.cfl = r.num("solver", "cfl", 0.5);
    c.solver.t_end = r.num("solver", "t_end", 1.0);
    c.solver.snapshot_cadence = r.num("solver", "snapshot_cadence", 0.0);
    c.solver.blowup_factor = r.num("solver", "blowup_factor", 1e3);
    c.solver.blowup_threshold = r.opt_num("solver", "blowup_threshold");
    c.solver.fixed_dt = r.opt_num("solver", "dt");
    c.require_completion = r.flag("solver", "require_completion", false);
    c.forcing_g = r.num("solver", "forcing_g", 0.0);
    if (!(c.solver.cfl > 0.0 && c.solver.cfl <= 1.0)) errs.push_back("cfl must be in (0, 1]");
    if (!(c.solver.t_end >= c.initial.t0)) errs.push_back("t_end must be ≥ the initial time");
    if (!(c.solver.snapshot_cadence >= 0.0)) errs.push_back("snapshot_cadence must be ≥ 0");
    if (!(c.solver.blowup_factor > 0.0)) errs.push_back("blowup_factor must be > 0");
    if (c.solver.blowup_threshold && !(*c.solver.blowup_threshold > 0.0)) errs.push_back("blowup_threshold must be > 0");
    if (c.solver.fixed_dt && !(*c.solver.fixed_dt > 0.0)) errs.push_back("dt must be > 0");

    // dispersion
    c.dispersion.wavenumbers = r.list("dispersion", "wavenumbers", c.dispersion.wavenumbers);
    c.dispersion.amplitude = r.num("dispersion", "amplitude", c.dispersion.amplitude);
    c.dispersion.points_per_wavelength = r.count("dispersion", "points_per_wavelength", 64);
    for (double k : c.dispersion.wavenumbers)
        if (!(k >= 1.0) || std::floor(k) != k) errs.push_back("wavenumbers must be positive integers");
    if (!(c.dispersion.amplitude > 0.0)) errs.push_back("dispersion amplitude must be > 0");
    if (c.dispersion.points_per_wavelength < 32) errs.push_back("points_per_wavelength must be ≥ 32");

    // steady
    c.steady.rho_far = r.num("steady", "rho_far", c.steady.rho_far);
    c.steady.mass_flux = r.num("steady", "mass_flux", c.steady.mass_flux);
    c.steady.conjugate = r.flag("steady", "conjugate", false);
    c.steady.start_offset = r.num("steady", "start_offset", c.steady.start_offset);
    c.steady.max_length = r.num("steady", "max_length", c.steady.max_length);
    c.steady.samples = r.count("steady", "samples", c.steady.samples);
    if (!(c.steady.rho_far > 0.0)) errs.push_back("rho_far must be > 0");
    if (c.steady.mass_flux == 0.0) errs.push_back("mass_flux must be nonzero");
    if (c.steady.start_offset == 0.0) errs.push_back("start_offset must be nonzero");
    if (!(c.steady.max_length > 0.0)) errs.push_back("max_length must be > 0");
    if (c.steady.samples < 8) errs.push_back("samples must be ≥ 8");

    // epsilon sweep
    c.sweep.epsilons = r.list("sweep", "epsilons", c.sweep.epsilons);
    c.sweep.refine = r.count("sweep", "refine", c.sweep.refine);
    for (double e : c.sweep.epsilons)
        if (!(e >= 0.0)) errs.push_back("epsilon must be ≥ 0");
    if (c.sweep.refine < 1) errs.push_back("refine must be ≥ 1");

    // convergence
    auto& co = c.convergence.options;
    c.convergence.system = r.choice<SystemKind>("convergence", "system", SystemKind::rbe,
                                                {{"rbe", SystemKind::rbe}, {"ghs", SystemKind::ghs}});
    co.base_n = r.count("convergence", "base_n", co.base_n);
    co.levels = r.count("convergence", "levels", co.levels);
    co.temporal_n = r.count("convergence", "temporal_n", co.temporal_n);
    co.dt0 = r.num("convergence", "dt0", co.dt0);
    co.temporal_levels = r.count("convergence", "temporal_levels", co.temporal_levels);
    co.t_end = r.num("convergence", "t_end", co.t_end);
    if (co.base_n < 8) errs.push_back("base_n must be ≥ 8");
    if (co.levels < 3) errs.push_back("levels must be ≥ 3");
    if (co.temporal_levels < 2) errs.push_back("temporal_levels must be ≥ 2");
    if (co.temporal_n < 8) errs.push_back("temporal_n must be ≥ 8");
    if (!(co.dt0 > 0.0)) errs.push_back("dt0 must be > 0");
    if (!(co.t_end > 0.0)) errs.push_back("convergence t_end must be > 0");

    // cross-field rules
    if ((c.kind == ExperimentKind::ghs_run || c.kind == ExperimentKind::epsilon_sweep ||
         c.kind == ExperimentKind::convergence_study) &&
        c.grid.topology != Topology::periodic)
        errs.push_back(to_string(c.kind) + " needs a periodic grid");
    if (c.kind == ExperimentKind::steady_profile && !(c.reg.epsilon > 0.0))
        errs.push_back("steady_profile needs epsilon > 0");

    r.reject_unknown();
    if (!errs.empty()) throw ConfigError(std::move(errs));
    return c;
}

}  // namespace hreg

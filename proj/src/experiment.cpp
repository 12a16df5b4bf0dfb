#include "hreg/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <numbers>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "hreg/errors.hpp"
#include "hreg/output.hpp"

namespace hreg {

namespace fs = std::filesystem;
using json = nlohmann::json;

fs::path resolve_output_dir(const std::string& dir) {
    fs::path p(dir);
    if (p.is_absolute()) return p;
    if (const char* root = std::getenv(output_root_env); root && *root) return fs::path(root) / p;
    return p;
}

Grid build_grid(const ExperimentConfig& cfg) {
    const auto& g = cfg.grid;
    if (g.topology == Topology::periodic) return Grid::periodic(g.length, g.n);
    const auto [rp, up] = initial_profiles(cfg);
    FarField far;
    far.rho_left = g.rho_left.value_or(rp(g.x_min));
    far.rho_right = g.rho_right.value_or(rp(g.x_max));
    far.u_left = g.u_left.value_or(up(g.x_min));
    far.u_right = g.u_right.value_or(up(g.x_max));
    return Grid::line(g.x_min, g.x_max, g.n, far);
}

std::pair<Profile, Profile> initial_profiles(const ExperimentConfig& cfg) {
    const auto& ic = cfg.initial;
    const auto& g = cfg.grid;
    for (const auto& p : ic.presets)
        if (p == "snapshot") throw UsageError("the snapshot preset has no analytic profile");
    const bool periodic = g.topology == Topology::periodic;
    const double L = periodic ? g.length : g.x_max - g.x_min;
    const double x0 = periodic ? 0.0 : g.x_min;
    const double center = ic.center.value_or(x0 + 0.5 * L);
    const double k = 2.0 * std::numbers::pi * ic.mode / L;
    const double rho0 = ic.rho0.value_or(cfg.eos.rho_bar);
    const double A = ic.amplitude, w = ic.width, u0 = ic.u0;
    const auto has = [&](const char* name) {
        for (const auto& p : ic.presets)
            if (p == name) return true;
        return false;
    };
    const bool sine = has("sine"), bump = has("gaussian_bump"), front = has("tanh_front");
    const auto on = [](Target t, bool rho) { return t == Target::both || (rho ? t == Target::rho : t == Target::u); };
    auto build = [=](bool rho) -> Profile {
        const double base = rho ? rho0 : u0;
        const bool s = sine && on(ic.sine_target, rho), b = bump && on(ic.bump_target, rho),
                   f = front && on(ic.tanh_target, rho);
        return [=](double x) {
            double v = base;
            if (s) v += A * std::sin(k * (x - x0));
            if (b) v += A * std::exp(-((x - center) / w) * ((x - center) / w));
            if (f) v -= A * std::tanh((x - center) / w);
            return v;
        };
    };
    return {build(true), build(false)};
}

State initial_state(const ExperimentConfig& cfg) {
    if (cfg.initial.presets.size() == 1 && cfg.initial.presets.front() == "snapshot") {
        const SnapshotData d = read_snapshot_csv(cfg.initial.file);
        if (cfg.grid.topology == Topology::line) {
            if (!cfg.grid.rho_left || !cfg.grid.rho_right || !cfg.grid.u_left || !cfg.grid.u_right)
                throw UsageError("a line grid restarted from a snapshot needs explicit far-field values");
        }
        const Grid g = cfg.grid.topology == Topology::periodic
                           ? Grid::periodic(cfg.grid.length, cfg.grid.n)
                           : Grid::line(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n,
                                        {*cfg.grid.rho_left, *cfg.grid.rho_right, *cfg.grid.u_left, *cfg.grid.u_right});
        if (d.x.size() != g.size()) throw UsageError("snapshot has " + std::to_string(d.x.size()) + " rows, grid has " + std::to_string(g.size()));
        for (std::size_t i = 0; i < d.x.size(); ++i)
            if (std::abs(d.x[i] - g.x(i)) > 1e-9 * g.length()) throw UsageError("snapshot nodes do not match the grid");
        return make_state(g, d.rho, d.u, cfg.initial.t0);
    }
    const Grid g = build_grid(cfg);
    const auto [rp, up] = initial_profiles(cfg);
    std::vector<double> r(g.size()), u(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        r[i] = rp(g.x(i));
        u[i] = up(g.x(i));
    }
    return make_state(g, std::move(r), std::move(u), cfg.initial.t0);
}

namespace {

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << s;
}

double relative_drift(double a, double b) { return std::abs(b - a) / std::max(std::abs(a), 1e-12); }

int simulate(const ExperimentConfig& cfg, const fs::path& dir, json& summary, std::ostream& log) {
    const auto eos = cfg.eos.build();
    const auto reg = cfg.reg.build(eos.rho_bar());
    const State init = initial_state(cfg);
    fs::create_directories(dir / "snapshots");
    std::ostringstream index;
    index << "index,t,file\n";
    std::size_t count = 0;
    const SnapshotSink sink = [&](const Snapshot& s) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%06zu.csv", count);
        std::ofstream out(dir / "snapshots" / name);
        write_snapshot_csv(out, s);
        index << count << ',' << fmt17(s.t) << ',' << name << '\n';
        ++count;
    };
    const bool ghs = cfg.kind == ExperimentKind::ghs_run;
    std::optional<RunResult> out;
    try {
        out = ghs ? ghs_run(init, cfg.solver, reg, eos, Forcing{cfg.forcing_g, {}}, sink)
                  : run(init, cfg.solver, reg, eos, sink);
    } catch (const IntegrationFailure& e) {
        write_text(dir / "snapshots" / "index.csv", index.str());
        summary["status"] = "integration_failure";
        summary["failure_time"] = e.time();
        summary["message"] = e.what();
        log << e.what() << " at t = " << fmt17(e.time()) << '\n';
        return exit_failure;
    }
    write_text(dir / "snapshots" / "index.csv", index.str());
    const RunResult& res = *out;
    {
        std::ofstream out(dir / "diagnostics.csv");
        write_diagnostics_csv(out, res.series);
    }
    const auto& d0 = res.series.front();
    const auto& d1 = res.series.back();
    const bool blow = res.outcome == Outcome::blowup;
    summary["status"] = blow ? "blowup" : "completed";
    summary["energy_drift"] = relative_drift(d0.energy, d1.energy);
    summary["mass_drift"] = relative_drift(d0.mass, d1.mass);
    summary["momentum_drift"] = relative_drift(d0.momentum, d1.momentum);
    summary["blowup"] = blow;
    summary["blowup_time"] = res.blowup_time ? json(*res.blowup_time) : json(nullptr);
    summary["blowup_threshold"] = res.threshold;
    summary["failure_time"] = nullptr;
    summary["final_time"] = res.final_state.t;
    summary["steps"] = res.steps;
    summary["snapshots"] = count;
    summary["warnings"] = res.warnings;
    for (const auto& w : res.warnings) log << "warning: " << w << '\n';
    if (blow) log << "blow-up detected at t = " << fmt17(*res.blowup_time) << '\n';
    return blow && cfg.require_completion ? exit_blowup : exit_ok;
}

int dispersion(const ExperimentConfig& cfg, const fs::path& dir, json& summary, std::ostream& log) {
    const auto eos = cfg.eos.build();
    const auto reg = cfg.reg.build(eos.rho_bar());
    DispersionOptions opt;
    opt.points_per_wavelength = cfg.dispersion.points_per_wavelength;
    opt.cfl = cfg.solver.cfl;
    std::ostringstream csv;
    csv << "k,c_theory,c_measured,rel_err\n";
    double worst = 0.0;
    for (double k : cfg.dispersion.wavenumbers) {
        const double ct = dispersion_speed_theory(eos, reg, k);
        double cm;
        try {
            cm = dispersion_speed_measured(eos, reg, k, cfg.dispersion.amplitude, opt);
        } catch (const MeasurementInvalid& e) {
            summary["status"] = "measurement_invalid";
            summary["message"] = e.what();
            log << e.what() << '\n';
            return exit_failure;
        }
        const double rel = std::abs(cm - ct) / ct;
        worst = std::max(worst, rel);
        csv << fmt17(k) << ',' << fmt17(ct) << ',' << fmt17(cm) << ',' << fmt17(rel) << '\n';
    }
    write_text(dir / "dispersion.csv", csv.str());
    summary["status"] = "completed";
    summary["max_rel_err"] = worst;
    return exit_ok;
}

int steady(const ExperimentConfig& cfg, const fs::path& dir, json& summary, std::ostream& log) {
    const auto eos = cfg.eos.build();
    const auto reg = cfg.reg.build(eos.rho_bar());
    const auto& sp = cfg.steady;
    double rho_far = sp.rho_far;
    double u_far = sp.mass_flux / rho_far;
    if (sp.conjugate) {
        rho_far = conjugate_density(sp.rho_far, u_far, eos);
        u_far = sp.mass_flux / rho_far;
    }
    const SteadyFluxes fl = far_field_fluxes(rho_far, u_far, eos);
    const double rs = sonic_density(fl.I, eos);
    const double start = rs + sp.start_offset;
    SteadyOptions opt;
    opt.max_length = sp.max_length;
    opt.samples = sp.samples;
    const SteadyProfile prof = integrate_steady_profile(fl, eos, reg, start, sp.start_offset > 0 ? -1 : 1, opt);
    std::ostringstream csv;
    csv << "x,rho\n";
    for (std::size_t i = 0; i < prof.rho.size(); ++i)
        csv << fmt17(prof.rho.grid().x(i)) << ',' << fmt17(prof.rho[i]) << '\n';
    write_text(dir / "profile.csv", csv.str());
    summary["fluxes"] = {{"I", fl.I}, {"S", fl.S}, {"F", fl.F}};
    summary["rho_far"] = rho_far;
    summary["sonic_density"] = rs;
    summary["x_end"] = prof.x_end;
    summary["stop"] = prof.stop == SteadyStop::sonic ? "sonic" : prof.stop == SteadyStop::slope_zero ? "slope_zero" : "extent";
    if (prof.stop != SteadyStop::sonic) {
        summary["status"] = "completed";
        return exit_ok;
    }
    summary["predicted_amplitude"] = predicted_cusp_amplitude(fl, eos, reg);
    FitOptions fo;
    fo.base = rs;
    try {
        const SingularityFit fit = fit_singularity_exponent(prof.rho, prof.x_end, fo);
        write_text(dir / "fit.json", fit_json(fit));
        summary["status"] = "completed";
        summary["alpha"] = fit.alpha();
        return exit_ok;
    } catch (const FitUnreliable& e) {
        write_text(dir / "fit.json", fit_json(e.fit()));
        summary["status"] = "fit_unreliable";
        summary["message"] = e.what();
        log << e.what() << '\n';
        return exit_failure;
    }
}

int eps_sweep(const ExperimentConfig& cfg, const fs::path& dir, json& summary, std::ostream&) {
    const auto eos = cfg.eos.build();
    const auto reg = cfg.reg.build(eos.rho_bar());
    const auto [rp, up] = initial_profiles(cfg);
    const auto pts = epsilon_sweep(build_grid(cfg), rp, up, cfg.sweep.epsilons, cfg.solver.t_end, reg, eos,
                                   cfg.sweep.refine, cfg.solver.cfl);
    std::ostringstream csv;
    csv << "epsilon,l1_distance\n";
    bool monotone = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        csv << fmt17(pts[i].epsilon) << ',' << fmt17(pts[i].l1) << '\n';
        if (i > 0 && pts[i].epsilon < pts[i - 1].epsilon && !(pts[i].l1 < pts[i - 1].l1)) monotone = false;
    }
    write_text(dir / "epsilon_sweep.csv", csv.str());
    summary["status"] = "completed";
    summary["monotone_decreasing"] = monotone;
    return exit_ok;
}

int convergence(const ExperimentConfig& cfg, const fs::path& dir, json& summary, std::ostream&) {
    const auto eos = cfg.eos.build();
    const auto reg = cfg.reg.build(eos.rho_bar());
    const auto [rp, up] = initial_profiles(cfg);
    const auto rep = convergence_study(cfg.convergence.system, cfg.grid.length, rp, up, reg, eos, cfg.convergence.options);
    std::ostringstream csv;
    csv << "kind,n,dt,error,order\n";
    for (const auto& p : rep.spatial)
        csv << "spatial," << p.n << ',' << fmt17(p.dt) << ',' << fmt17(p.error) << ',' << fmt17(p.order) << '\n';
    for (const auto& p : rep.temporal)
        csv << "temporal," << p.n << ',' << fmt17(p.dt) << ',' << fmt17(p.error) << ',' << fmt17(p.order) << '\n';
    write_text(dir / "convergence.csv", csv.str());
    summary["status"] = "completed";
    summary["spatial_order"] = rep.spatial_order();
    summary["temporal_order"] = rep.temporal_order();
    return exit_ok;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path dir = resolve_output_dir(cfg.output_dir);
    json summary{{"experiment", to_string(cfg.kind)}};
    int code = exit_ok;
    try {
        fs::create_directories(dir);
        switch (cfg.kind) {
            case ExperimentKind::rbe_run:
            case ExperimentKind::ghs_run: code = simulate(cfg, dir, summary, log); break;
            case ExperimentKind::dispersion_study: code = dispersion(cfg, dir, summary, log); break;
            case ExperimentKind::steady_profile: code = steady(cfg, dir, summary, log); break;
            case ExperimentKind::epsilon_sweep: code = eps_sweep(cfg, dir, summary, log); break;
            case ExperimentKind::convergence_study: code = convergence(cfg, dir, summary, log); break;
        }
    } catch (const IntegrationFailure& e) {
        summary["status"] = "integration_failure";
        summary["failure_time"] = e.time();
        summary["message"] = e.what();
        log << e.what() << '\n';
        code = exit_failure;
    } catch (const UsageError& e) {
        summary["status"] = "invalid";
        summary["message"] = e.what();
        log << e.what() << '\n';
        code = exit_validation;
    } catch (const DomainError& e) {
        summary["status"] = "invalid";
        summary["message"] = e.what();
        log << e.what() << '\n';
        code = exit_validation;
    } catch (const std::exception& e) {
        summary["status"] = "failure";
        summary["message"] = e.what();
        log << e.what() << '\n';
        code = exit_failure;
    }
    summary["exit_code"] = code;
    summary["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
    return code;
}

std::vector<SweepMember> run_sweep(std::string_view config_text, const std::string& param,
                                   const std::vector<std::string>& values, std::ostream& log) {
    const ExperimentConfig base = parse_config(config_text);
    std::vector<ExperimentConfig> cfgs;
    for (const auto& v : values) {
        const std::string sub = (fs::path(base.output_dir) / (param + "=" + v)).string();
        cfgs.push_back(parse_config(config_text, {{param, v}, {"experiment.output_dir", sub}}));
    }
    std::vector<std::future<std::pair<int, std::string>>> jobs;
    for (const auto& c : cfgs)
        jobs.push_back(std::async(std::launch::async, [&c] {
            std::ostringstream l;
            const int code = run_experiment(c, l);
            return std::make_pair(code, l.str());
        }));
    std::vector<SweepMember> out;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto [code, text] = jobs[i].get();
        log << "[" << param << "=" << values[i] << "] exit " << code << '\n' << text;
        out.push_back({values[i], code, resolve_output_dir(cfgs[i].output_dir)});
    }
    return out;
}

}  // namespace hreg

#include "hreg/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hreg/errors.hpp"

namespace hreg {

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";  // printf may emit -nan
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

void write_snapshot_csv(std::ostream& out, const Snapshot& s) {
    out << (s.R ? "x,rho,u,m,R\n" : "x,rho,u,m\n");
    const Grid& g = s.rho.grid();
    for (std::size_t i = 0; i < s.rho.size(); ++i) {
        out << fmt17(g.x(i)) << ',' << fmt17(s.rho[i]) << ',' << fmt17(s.u[i]) << ',' << fmt17(s.m[i]);
        if (s.R) out << ',' << fmt17((*s.R)[i]);
        out << '\n';
    }
}

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticRecord> series) {
    out << "t,dt,mass,momentum,energy,sup_Wx\n";
    for (const auto& d : series)
        out << fmt17(d.t) << ',' << fmt17(d.dt) << ',' << fmt17(d.mass) << ',' << fmt17(d.momentum) << ','
            << fmt17(d.energy) << ',' << fmt17(d.sup_wx) << '\n';
}

SnapshotData read_snapshot_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open snapshot " + path.string());
    std::string line;
    std::getline(in, line);
    if (line.rfind("x,rho,u", 0) != 0) throw UsageError("snapshot " + path.string() + " has an unexpected header");
    SnapshotData d;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<double> cols;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            const auto r = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (r.ec != std::errc{}) throw UsageError("bad number in " + path.string() + " row " + std::to_string(row));
            cols.push_back(v);
        }
        if (cols.size() < 3) throw UsageError("short row in " + path.string() + " row " + std::to_string(row));
        d.x.push_back(cols[0]);
        d.rho.push_back(cols[1]);
        d.u.push_back(cols[2]);
    }
    return d;
}

std::string fit_json(const SingularityFit& fit) {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json j{{"alpha_left", opt(fit.alpha_left)},   {"alpha_right", opt(fit.alpha_right)},
                     {"rho_amp_left", opt(fit.rho_amp_left)}, {"rho_amp_right", opt(fit.rho_amp_right)},
                     {"r2_left", opt(fit.r2_left)},         {"r2_right", opt(fit.r2_right)},
                     {"window", {fit.window_lo, fit.window_hi}}};
    return j.dump(2);
}

}  // namespace hreg

#include "hreg/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hreg/errors.hpp"

namespace hreg {

Grid::Grid(Topology t, double x_min, double length, std::size_t n, FarField far)
    : topology_(t), x_min_(x_min), length_(length), n_(n), dx_(length / static_cast<double>(t == Topology::periodic ? n : n - 1)), far_(far) {
    if (n < 8) throw DomainError("grid needs at least 8 cells, got " + std::to_string(n));
    if (!(length > 0.0) || !std::isfinite(length) || !std::isfinite(x_min))
        throw DomainError("grid length must be positive and finite");
}

Grid Grid::periodic(double length, std::size_t n) { return {Topology::periodic, 0.0, length, n, {}}; }

Grid Grid::line(double x_min, double x_max, std::size_t n, FarField far) {
    if (!(far.rho_left > 0.0) || !(far.rho_right > 0.0))
        throw DomainError("far-field densities must be > 0");
    return {Topology::line, x_min, x_max - x_min, n, far};
}

std::vector<double> Grid::nodes() const {
    std::vector<double> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = this->x(i);
    return x;
}

Field::Field(Grid grid, std::vector<double> values, Ghosts ghosts)
    : grid_(grid), values_(std::move(values)), ghosts_(ghosts) {
    if (values_.size() != grid_.size())
        throw UsageError("field has " + std::to_string(values_.size()) + " values for a grid of " +
                         std::to_string(grid_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]))
            throw DomainError("non-finite field value at index " + std::to_string(i));
    if (!std::isfinite(ghosts_.left) || !std::isfinite(ghosts_.right))
        throw DomainError("non-finite ghost value");
}

Field Field::constant(const Grid& grid, double c) {
    return Field(grid, std::vector<double>(grid.size(), c), {c, c});
}

double Field::extended(std::ptrdiff_t i) const noexcept {
    const auto n = static_cast<std::ptrdiff_t>(values_.size());
    if (i >= 0 && i < n) return values_[static_cast<std::size_t>(i)];
    if (grid_.is_periodic()) return values_[static_cast<std::size_t>((i % n + n) % n)];
    return i < 0 ? ghosts_.left : ghosts_.right;
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

Field ddx(const Field& f) {
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    const double h = 0.5 / f.grid().dx();
    std::vector<double> d(f.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = (f.extended(i + 1) - f.extended(i - 1)) * h;
    return Field(f.grid(), std::move(d));
}

double integrate(const Field& f) {
    const auto& g = f.grid();
    double s = 0.0;
    if (g.is_periodic()) {
        for (double v : f.values()) s += v;
    } else {
        const double mid = g.x_min() + 0.5 * g.length();
        for (std::size_t i = 0; i < f.size(); ++i)
            s += f[i] - (g.x(i) < mid ? f.ghosts().left : f.ghosts().right);
    }
    return s * g.dx();
}

Field antiderivative(const Field& f) {
    const auto& g = f.grid();
    const std::size_t n = f.size();
    std::size_t anchor = 0;
    if (!g.is_periodic()) {
        const double k = std::round(-g.x_min() / g.dx());
        anchor = static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(n - 1)));
    }
    const double h = 0.5 * g.dx();
    std::vector<double> F(n, 0.0);
    for (std::size_t i = anchor + 1; i < n; ++i) F[i] = F[i - 1] + h * (f[i - 1] + f[i]);
    for (std::size_t i = anchor; i-- > 0;) F[i] = F[i + 1] - h * (f[i] + f[i + 1]);
    Ghosts gh{F[0] - h * (f.ghosts().left + f[0]), F[n - 1] + h * (f[n - 1] + f.ghosts().right)};
    return Field(g, std::move(F), gh);
}

bool boundary_contaminated(const Field& f, double tol) {
    if (f.grid().is_periodic()) return false;
    const std::size_t n = f.size();
    const std::size_t m = std::max<std::size_t>(1, n / 20);
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(f[i] - f.ghosts().left) > tol) return true;
        if (std::abs(f[n - 1 - i] - f.ghosts().right) > tol) return true;
    }
    return false;
}

}  // namespace hreg

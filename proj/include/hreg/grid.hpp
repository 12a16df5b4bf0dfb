#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hreg {

enum class Topology { periodic, line };

// far-field constant state of a line domain
struct FarField {
    double rho_left = 1.0;
    double rho_right = 1.0;
    double u_left = 0.0;
    double u_right = 0.0;
    bool operator==(const FarField&) const = default;
};

// periodic: n nodes i L / n on [0, L); line: n nodes spanning [x_min, x_max] inclusive
class Grid {
public:
    static Grid periodic(double length, std::size_t n);
    static Grid line(double x_min, double x_max, std::size_t n, FarField far = {});

    Topology topology() const noexcept { return topology_; }
    bool is_periodic() const noexcept { return topology_ == Topology::periodic; }
    std::size_t size() const noexcept { return n_; }
    double dx() const noexcept { return dx_; }
    double x_min() const noexcept { return x_min_; }
    double length() const noexcept { return length_; }
    const FarField& far_field() const noexcept { return far_; }
    double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * dx_; }
    std::vector<double> nodes() const;

    bool operator==(const Grid&) const = default;

private:
    Grid(Topology t, double x_min, double length, std::size_t n, FarField far);

    Topology topology_;
    double x_min_;
    double length_;
    std::size_t n_;
    double dx_;
    FarField far_;
};

// values used beyond either end of a line grid; ignored on periodic grids
struct Ghosts {
    double left = 0.0;
    double right = 0.0;
    bool operator==(const Ghosts&) const = default;
};

class Field {
public:
    Field(Grid grid, std::vector<double> values, Ghosts ghosts = {});

    static Field constant(const Grid& grid, double c);
    template <class F>
    static Field sample(const Grid& grid, F&& f, Ghosts ghosts = {}) {
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.x(i));
        return Field(grid, std::move(v), ghosts);
    }

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& vector() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    Ghosts ghosts() const noexcept { return ghosts_; }

    // value at index i in [-1, n]: periodic wrap or ghost constant
    double extended(std::ptrdiff_t i) const noexcept;

    double min() const;
    double max() const;
    double max_abs() const;

private:
    Grid grid_;
    std::vector<double> values_;
    Ghosts ghosts_;
};

// second-order centred difference
Field ddx(const Field& f);
// rectangle rule; on a line grid the deviation from the far-field constants is integrated
// (left constant on the left half, right constant on the right half)
double integrate(const Field& f);
// cumulative trapezoid anchored at the node nearest x = 0
Field antiderivative(const Field& f);
// |f - f_inf| > tol somewhere in the outer 5% of a line grid
bool boundary_contaminated(const Field& f, double tol = 1e-8);

}  // namespace hreg

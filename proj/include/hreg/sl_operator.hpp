#pragma once

#include <span>
#include <vector>

#include "hreg/eos.hpp"
#include "hreg/grid.hpp"
#include "hreg/regularizer.hpp"

namespace hreg {

// Discrete L = rho - 2 eps d/dx (rho A' d/dx) in flux form, factorised once for repeated solves.
// Row i reads lower[i] u[i-1] + diag[i] u[i] + upper[i] u[i+1] with periodic wrap,
// or with the far-field value of u beyond the ends of a line grid.
class SLSystem {
public:
    // factorise = false skips the factorisation; only apply() is then usable
    SLSystem(const Field& rho, const Regulariser& reg, bool factorise = true);

    const Grid& grid() const noexcept { return rho_.grid(); }
    const Field& rho() const noexcept { return rho_; }
    const Field& kappa() const noexcept { return kappa_; }
    double epsilon() const noexcept { return eps_; }
    std::span<const double> lower() const noexcept { return lower_; }
    std::span<const double> diag() const noexcept { return diag_; }
    std::span<const double> upper() const noexcept { return upper_; }

    Field apply(const Field& u) const;
    // G f = L^{-1} f; on a line grid the far-field value of the result is f_inf / rho_inf
    Field solve(const Field& f) const;
    // L^{-1} d/dx psi
    Field solve_dx(const Field& psi) const;
    // psi + 2 eps rho A' d/dx L^{-1} d/dx psi
    Field apply_J(const Field& psi) const;

private:
    std::vector<double> thomas(std::vector<double> d) const;

    Field rho_;
    Field kappa_;
    double eps_;
    std::vector<double> lower_, diag_, upper_;
    // factorisation of the (corner-modified) tridiagonal part
    std::vector<double> cprime_, inv_denom_;
    // rank-one correction data for the cyclic case
    std::vector<double> z_;
    double corner_beta_over_gamma_ = 0.0;
    double sm_denominator_ = 1.0;
};

SLSystem assemble(const Field& rho, const Regulariser& reg);

// exponential kernel exp(-|xi|/width) / (2 width)
double kernel_J(double xi, double width);

// Regularising term for A = -a rho_bar/rho computed in the mass coordinate xi as
// a rho_bar * J * {(rho V''' + 3 V'') rho_xi^2}; upsilon = 1/rho sampled on a uniform xi grid.
Field convolution_R_special(const Field& upsilon, const EquationOfState& eos, const Regulariser& reg);

}  // namespace hreg

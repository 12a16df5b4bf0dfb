#pragma once

#include "hreg/eos.hpp"

namespace hreg {

enum class RegKind { cubic, inverse, power };

struct RegDerivatives {
    double a;    // A
    double a1;   // A'
    double a2;   // A''
    double a3;   // A'''
};

// The regularising function A(rho) together with the strength epsilon.
class Regulariser {
public:
    static Regulariser cubic(double epsilon);
    // A = -a rho_bar / rho
    static Regulariser inverse(double a, double rho_bar, double epsilon);
    // A = rho^p / p
    static Regulariser power(double p, double epsilon);

    RegKind kind() const noexcept { return kind_; }
    double epsilon() const noexcept { return epsilon_; }
    double a() const noexcept { return a_; }
    double p() const noexcept { return p_; }
    double rho_bar() const noexcept { return rho_bar_; }
    double sign() const noexcept { return sign_; }

    RegDerivatives derivatives(double rho) const;

    Regulariser with_epsilon(double epsilon) const;
    // A -> -A; breaks A' > 0, only meaningful for the gHS system
    Regulariser negated() const;

private:
    Regulariser(RegKind kind, double epsilon, double a, double p, double rho_bar)
        : kind_(kind), epsilon_(epsilon), a_(a), p_(p), rho_bar_(rho_bar) {}

    RegKind kind_;
    double epsilon_;
    double a_;
    double p_;
    double rho_bar_;
    double sign_ = 1.0;
};

struct CompositeCoefficients {
    double c_u;    // (rho^2 A')'
    double c_rho;  // (rho V''/A')' A'^2
};

CompositeCoefficients composite_coefficients(const Regulariser& reg, const EquationOfState& eos,
                                             double rho);

}  // namespace hreg

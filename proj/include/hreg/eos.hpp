#pragma once

namespace hreg {

enum class EosKind { isentropic, isothermal, shallow_water };

struct PotentialDerivatives {
    double first;   // V' = enthalpy
    double second;  // V'' = P'/rho
    double third;
};

// Barotropic pressure law, gauged so that enthalpy and potential vanish at rho_bar.
class EquationOfState {
public:
    static EquationOfState isentropic(double gamma, double rho_bar, double p_bar);
    static EquationOfState isothermal(double rho_bar, double p_bar);
    // P = g rho^2 / 2
    static EquationOfState shallow_water(double g, double rho_bar = 1.0);

    EosKind kind() const noexcept { return kind_; }
    double gamma() const noexcept { return gamma_; }
    double rho_bar() const noexcept { return rho_bar_; }
    double p_bar() const noexcept { return p_bar_; }
    double gravity() const noexcept { return g_; }
    double enthalpy_scale() const noexcept { return w_bar_; }

    double pressure(double rho) const;
    double dpressure(double rho) const;
    double d2pressure(double rho) const;
    double enthalpy(double rho) const;
    double potential(double rho) const;
    PotentialDerivatives potential_derivatives(double rho) const;
    double sound_speed(double rho) const;

private:
    EquationOfState(EosKind kind, double gamma, double rho_bar, double p_bar, double g);
    bool polytropic() const noexcept { return kind_ != EosKind::isothermal; }

    EosKind kind_;
    double gamma_;
    double rho_bar_;
    double p_bar_;
    double g_;
    double w_bar_;
};

}  // namespace hreg

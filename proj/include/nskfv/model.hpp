#ifndef NSKFV_MODEL_HPP
#define NSKFV_MODEL_HPP

#include "nskfv/mesh.hpp"

namespace nskfv {

/// Physical and scheme constants. Polytropic pressure p = a*rho^gamma with
/// a > 0, gamma > 1; mu = 0 selects the inviscid (Euler-Korteweg) case.
struct FluidParams {
    double a = 1.0;          ///< pressure coefficient, > 0
    double gamma = 2.0;      ///< polytropic exponent, > 1
    double mu = 0.0;         ///< viscosity, >= 0
    double kappa = 1e-3;     ///< capillarity, > 0
    double delta = 1e-8;     ///< floor of the dissipation speed lambda, 0 < delta << 1
    double rho_floor = 1e-12; ///< positivity guard; integrate() rescales it from the initial data

    /// Throws ValidationError naming the violated constraint.
    void validate() const;
};

/// p(rho) = a rho^gamma. Domain error for rho <= 0.
double pressure(double rho, const FluidParams& params);

/// p'(rho) = a gamma rho^(gamma-1), strictly positive. Domain error for rho <= 0.
double pressure_derivative(double rho, const FluidParams& params);

/// Pressure potential P(rho) = a rho^gamma / (gamma - 1), the convex solution
/// of P'(rho) rho - P(rho) = p(rho) normalized by P(0) = 0.
double potential(double rho, const FluidParams& params);

/// Discrete total energy: integral of
///   1/2 rho |u|^2 + P(rho) + kappa/2 * |forward-difference gradient of rho|^2.
/// Throws PositivityError if any density cell is <= 0.
double discrete_total_energy(const State& state, const FluidParams& params);

} // namespace nskfv

#endif

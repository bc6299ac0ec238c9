#ifndef NSKFV_DIAGNOSTICS_HPP
#define NSKFV_DIAGNOSTICS_HPP

#include <functional>
#include <tuple>

#include "nskfv/scheme.hpp"

namespace nskfv {

/// One monitored record along a trajectory; serializes to one CSV row in
/// exactly this field order.
struct DiagnosticsRow {
    double t = 0.0;
    double mass = 0.0;
    double mom_x = 0.0;
    double mom_y = 0.0;
    double energy = 0.0;
    double dE_dt = 0.0;              ///< chain-rule energy rate at this state
    double dissipation_bound = 0.0;  ///< -mu ||D+ u||^2 - kappa lam h ||Ld rho||^2 (<= 0)
    double min_density = 0.0;
    double lambda = 0.0;
    double grad_rho_l2 = 0.0;        ///< L2 norm of the central-difference density gradient
    double u_l2 = 0.0;               ///< L2 norm of the velocity field
};

/// Smooth reference pair (rho~, u~) with analytic derivatives, evaluable at
/// arbitrary (t, x, y) on the torus. Used by the relative-energy diagnostic.
struct SmoothReference {
    std::function<double(double, double, double)> rho;
    std::function<std::pair<double, double>(double, double, double)> rho_grad;
    std::function<double(double, double, double)> rho_lap;
    std::function<std::pair<double, double>(double, double, double)> u;
    /// Jacobian (du/dx, du/dy, dv/dx, dv/dy); carried for completeness.
    std::function<std::array<double, 4>(double, double, double)> u_grad;
};

/// (total mass, total x-momentum, total y-momentum).
std::tuple<double, double, double> totals(const State& state);

/// Chain-rule energy rate for a given RHS, and the dissipation bound it must
/// not exceed:
///   dE/dt = int (P'(rho) - |u|^2/2) drho_dt + u . dm_dt
///           + kappa * ( <D+x rho, D+x drho_dt> + <D+y rho, D+y drho_dt> )
///   bound = -mu ||D+ u||^2 - kappa * lam * h * ||Ld rho||^2.
/// Throws ValidationError if the rhs and state meshes differ.
std::pair<double, double> energy_rate_and_bound(const State& state, const SchemeRhs& rhs,
                                                const FluidParams& params, double lam);

/// Relative energy of the state against a smooth reference at time t:
///   int [ P(rho) + 1/2 rho|u|^2 + kappa/2 |Dc rho|^2 ]
///     - [ P(rho~) + 1/2 rho~|u~|^2 + kappa/2 |grad rho~|^2 ]
///     - ( P'(rho~) - 1/2|u~|^2 - kappa lap rho~ ) (rho - rho~)
///     - u~ . (rho u - rho~ u~).
/// Numerical density gradients use central differences; reference derivatives
/// are analytic, all evaluated at cell centers.
double relative_energy(const State& state, const SmoothReference& ref,
                       const FluidParams& params, double t);

/// Uniform bounds implied by the initial energy: along any trajectory,
///   ||u||_{L2}^2      <= 2 E0 / min rho,
///   int rho^gamma     <= (gamma - 1) E0 / a,
///   ||D+ rho||_{L2}^2 <= 2 E0 / kappa.
struct LemmaBounds {
    double u_l2_sq = 0.0;
    double rho_gamma_integral = 0.0;
    double grad_rho_l2_sq = 0.0;
};
LemmaBounds lemma_observables(const State& state, const FluidParams& params);

/// Full row for one recorded state (evaluates the RHS once).
DiagnosticsRow compute_diagnostics(const State& state, const FluidParams& params, double t);

} // namespace nskfv

#endif

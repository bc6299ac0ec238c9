#ifndef NSKFV_TIMELOOP_HPP
#define NSKFV_TIMELOOP_HPP

#include <vector>

#include "nskfv/diagnostics.hpp"

namespace nskfv {

struct TimeControls {
    double cfl = 0.4;          ///< in (0, 1]
    double t_end = 0.0;        ///< > 0
    int record_every = 10;     ///< steps between trajectory records
    long max_steps = 1000000;
    bool freeze_lambda = false; ///< reuse the step-start lambda for all RK stages

    void validate() const;
};

/// Recorded method-of-lines run: strictly increasing times starting at 0,
/// the recorded states, and one diagnostics row per record.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<DiagnosticsRow> diagnostics;
};

/// Explicit-stability step bound:
///   cfl * min( h_min / (2 lambda),
///              h_min^2 / (8 (mu/rho_min + lambda h)),
///              rho_min h_min^3 / (8 kappa rho_max) )
/// covering the convective/artificial-parabolic, viscous, and third-order
/// capillary stiffness in turn.
double stable_dt(const State& state, const FluidParams& params, const Mesh& mesh, double cfl);

/// Three-stage strong-stability-preserving Runge-Kutta step with F = rhs_full:
///   s1 = s + dt F(s);  s2 = 3/4 s + 1/4 (s1 + dt F(s1));
///   s' = 1/3 s + 2/3 (s2 + dt F(s2)).
/// Convex combinations of conservative stages, so mass and momentum totals
/// are preserved to round-off. A positivity failure names the offending stage.
State step_ssprk3(const State& state, double dt, const FluidParams& params);

/// Steps with dt = min(stable_dt, remaining) until t_end, recording every
/// record_every steps plus the initial and final states. Monitors positivity
/// and recorded-energy monotonicity (growth beyond 1e-8*(1+E0) between
/// consecutive records raises EnergyGrowthError); exceeding max_steps raises
/// StepBudgetError.
Trajectory integrate(const State& initial, const FluidParams& params, const TimeControls& controls);

} // namespace nskfv

#endif

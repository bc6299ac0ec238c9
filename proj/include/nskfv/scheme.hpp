#ifndef NSKFV_SCHEME_HPP
#define NSKFV_SCHEME_HPP

#include <utility>

#include "nskfv/model.hpp"
#include "nskfv/operators.hpp"

namespace nskfv {

/// Semi-discrete right-hand side d/dt (rho, rho u, rho v). Each component is
/// a periodic flux difference, so its integral over the torus vanishes to
/// round-off (exact mass and momentum conservation).
struct SchemeRhs {
    GridField drho_dt;
    GridField dmx_dt;
    GridField dmy_dt;
};

/// Global dissipation speed
///   lambda = max( 1/2 * max_{i,j} ( |u_{i,j}| + sqrt(p'(rho_{i,j})) ), delta ).
double lambda_max(const State& state, const FluidParams& params);

/// Continuity RHS: d rho/dt = -[ Dc_x(rho u) + Dc_y(rho v) ] + h*lam*Ld(rho),
/// with rho u = mx, rho v = my taken directly (no division).
GridField rhs_continuity(const State& state, const FluidParams& params, double lam);

/// The Korteweg flux bracket (K_x, K_y) entering the momentum RHS with a
/// plus sign. In x:
///   K_x = kappa * [  Db_x( (rho * Ld rho(+x) + rho(+x) * Ld rho) / 2 )
///                  - 1/2 Db_x( (Df_x rho)^2 )
///                  + 1/2 Db_x( Db_y rho(+x) * Db_y rho )
///                  -     Db_y( Dc_x rho * Df_y rho ) ]
/// and K_y is the axis-swapped analogue. (+x) denotes the one-cell shift.
std::pair<GridField, GridField> capillary_force(const GridField& rho, const FluidParams& params);

/// Full semi-discrete RHS; computes lambda once from the state.
SchemeRhs rhs_full(const State& state, const FluidParams& params);

/// Same, with a caller-supplied (frozen) lambda.
SchemeRhs rhs_full_frozen(const State& state, const FluidParams& params, double lam);

} // namespace nskfv

#endif

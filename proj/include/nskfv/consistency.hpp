#ifndef NSKFV_CONSISTENCY_HPP
#define NSKFV_CONSISTENCY_HPP

#include <vector>

#include "nskfv/config.hpp"
#include "nskfv/timeloop.hpp"

namespace nskfv {

enum class Phase { Sin, Cos };

/// Separable space-time test function
///   phi(t, x, y) = theta(t) * X(x) * Y(y),
/// X(x) = sin/cos(2 pi kx x), Y likewise, theta(t) = sin^2(pi t / T).
/// The envelope and its derivative vanish at t = 0 and t = T, emulating
/// compact support in (0, T). For vector (momentum) tests `component`
/// selects (phi, 0) or (0, phi). All derivatives are analytic.
struct TestFunction {
    int kx = 1;
    int ky = 0;
    Phase phase_x = Phase::Sin;
    Phase phase_y = Phase::Cos;
    double period = 1.0; ///< envelope T
    int component = 0;   ///< 0 -> (phi, 0), 1 -> (0, phi)

    double theta(double t) const;
    double dtheta(double t) const;
    double theta_antiderivative(double t) const;
    double shape(double x, double y) const;
    double shape_dx(double x, double y) const;
    double shape_dy(double x, double y) const;
    double shape_dxx(double x, double y) const;
    double shape_dxy(double x, double y) const;
    double shape_dyy(double x, double y) const;
};

/// All non-degenerate scalar modes with |kx|, |ky| <= kmax, both phases.
std::vector<TestFunction> scalar_battery(int kmax, double period);

/// Time-integrated weak-form defect of the mass equation along the recorded
/// trajectory: trapezoid in time of
///   int ( rho d_t phi + rho u . grad phi ) dx
/// plus the (envelope-killed) initial pairing. Throws ValidationError if
/// consecutive records differ by more than sparse_threshold in L1.
double weak_residual_mass(const Trajectory& traj, const TestFunction& phi,
                          double sparse_threshold = 0.05);

/// Same for the momentum equation, including convective/pressure, viscous
/// (central velocity differences), capillary tensor and grad-div terms.
double weak_residual_momentum(const Trajectory& traj, const TestFunction& phi,
                              const FluidParams& params, double sparse_threshold = 0.05);

/// Battery-aggregated residual statistics over one trajectory.
struct BatteryResult {
    double r1 = 0.0;       ///< max over battery of the slicewise |.| L1-in-t statistic
    double r2 = 0.0;
    double r1_total = 0.0; ///< max over battery of |time-integrated residual|
    double r2_total = 0.0;
    double r1_half = 0.0;  ///< r1 recomputed from every other record (quadrature check)
    double r2_half = 0.0;
};
BatteryResult evaluate_residual_battery(const Trajectory& traj, const FluidParams& params, int kmax);

/// Two routes through the capillary terms paired with a test function:
///   original: each scheme bracket term against the matching forward
///             difference of (phi_x, phi_y), with the -kappa prefactor;
///   decomposed: kappa * integral(S1 + S2 + S3) after exact discrete
///               integration by parts and product rule.
/// The two are equal to machine precision; their difference is the single
/// sharpest oracle for the Korteweg flux transcription.
struct CapillaryPairing {
    double original = 0.0;
    double decomposed = 0.0;
};
CapillaryPairing capillary_pairing(const GridField& rho, const TestFunction& phi,
                                   const FluidParams& params, double t);

/// |original - decomposed| for the pairing above.
double capillary_decomposition_defect(const GridField& rho, const TestFunction& phi,
                                      const FluidParams& params, double t);

/// (max over records of ||D+ rho||_L2,
///  sqrt( h * integral over time of ||Ld rho||_L2^2 )).
/// The first must stay bounded under refinement, the second must vanish.
std::pair<double, double> apriori_monitor(const Trajectory& traj, const FluidParams& params);

/// Exact cell-average restriction of a fine field to the next-coarser mesh
/// (factor 2 per axis). Under the centers-at-(i*h) convention the coarse cell
/// overlaps a 3x3 fine block with weights (1/4, 1/2, 1/4) per axis.
GridField restrict_to_coarser(const GridField& fine, const Mesh& coarse);

struct LevelData {
    int m = 0, n = 0;
    double h = 0.0;
    double r1 = 0.0, r2 = 0.0;             ///< primary (sliced) residual statistics
    double r1_total = 0.0, r2_total = 0.0;
    double lambda_h = 0.0;                 ///< max recorded lambda times h
    double apriori_grad = 0.0;
    double apriori_lap = 0.0;
    double quad_check_r1 = 0.0, quad_check_r2 = 0.0;
};

struct ConvergenceReport {
    std::vector<LevelData> levels;
    std::vector<double> cauchy_rho; ///< L1 errors between consecutive levels at t_end
    std::vector<double> cauchy_m;
    std::vector<double> order_r1, order_r2, order_cauchy_rho, order_cauchy_m;
};

/// Runs the same problem across the nested levels (record cadence forced to
/// every step), evaluates the residual battery, the a-priori monitors and the
/// nested-mesh Cauchy differences, and reports per-pair observed orders.
ConvergenceReport refinement_study(const StudyConfig& cfg);

} // namespace nskfv

#endif

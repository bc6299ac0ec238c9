#ifndef NSKFV_FIXTURES_HPP
#define NSKFV_FIXTURES_HPP

#include <random>

#include "nskfv/diagnostics.hpp"

namespace nskfv {
/// Deterministic random fields, states and references shared by the verify
/// suites, the unit tests and the acceptance suite.
namespace fixtures {

/// base + amp * random trig polynomial (modes up to 2 per axis, coefficients
/// normalized so the perturbation stays within [-amp, amp]).
GridField random_smooth_field(const Mesh& mesh, std::mt19937_64& rng, double base, double amp);

/// Independent uniform cell values in [lo, hi].
GridField random_rough_field(const Mesh& mesh, std::mt19937_64& rng, double lo, double hi);

/// Positive-density random state; rough = cellwise-independent values,
/// otherwise smooth trig fields. Density stays within [0.4, 2.0], velocities
/// within about +-0.8.
State random_state(const Mesh& mesh, std::mt19937_64& rng, bool rough = false);

/// Smooth reference pair with analytic derivatives:
///   rho = 1 + 0.15 e^{-t} sin(2 pi x) cos(2 pi y) + 0.05 cos(4 pi y + 1/2),
///   u   = (0.3 sin(2 pi y + 0.2), 0.2 cos(2 pi x - 0.4)).
SmoothReference trig_reference();

} // namespace fixtures
} // namespace nskfv

#endif

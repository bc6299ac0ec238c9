#ifndef NSKFV_ORACLES_HPP
#define NSKFV_ORACLES_HPP

#include <utility>

#include "nskfv/consistency.hpp"
#include "nskfv/diagnostics.hpp"
#include "nskfv/scheme.hpp"

namespace nskfv {
/// Brute-force reference implementations: per-cell transcriptions of every
/// stencil and scheme formula with explicit periodic index arithmetic and
/// naive summation. Used only for verification (never on the run/study
/// paths); meshes are capped at 32 cells per axis.
namespace oracles {

struct OracleTolerance {
    double rel = 1e-12;
    double abs = 1e-13;
};

GridField oracle_diff(const GridField& f, Axis axis, DiffKind kind);
GridField oracle_laplacian(const GridField& f);
double oracle_integral(const GridField& f);
double oracle_energy(const State& state, const FluidParams& params);
double oracle_lambda(const State& state, const FluidParams& params);
GridField oracle_rhs_continuity(const State& state, const FluidParams& params, double lam);
std::pair<GridField, GridField> oracle_capillary(const GridField& rho, const FluidParams& params);
SchemeRhs oracle_rhs(const State& state, const FluidParams& params);
double oracle_relative_energy(const State& state, const SmoothReference& ref,
                              const FluidParams& params, double t);

/// kappa * integral(S1 + S2 + S3): second transcription of the decomposition
/// displays, independent of consistency::capillary_pairing.
double oracle_s_terms(const GridField& rho, const GridField& phi_x, const GridField& phi_y,
                      const FluidParams& params);

} // namespace oracles
} // namespace nskfv

#endif

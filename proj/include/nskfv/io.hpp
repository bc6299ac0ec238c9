#ifndef NSKFV_IO_HPP
#define NSKFV_IO_HPP

#include <string>
#include <vector>

#include "nskfv/config.hpp"
#include "nskfv/consistency.hpp"
#include "nskfv/diagnostics.hpp"

namespace nskfv {

/// Writes snap_<index>.csv (header "# t=<t> M=<M> N=<N>", rows i,j,rho,mx,my
/// with 17 significant digits) or snap_<index>.raw (little-endian f64 arrays
/// rho, mx, my concatenated row-major) plus a snap_<index>.json sidecar.
void write_snapshot(const State& state, double t, int index, const std::string& dir,
                    SnapshotFormat format);

struct Snapshot {
    State state;
    double t = 0.0;
};

Snapshot read_snapshot(const std::string& dir, int index, SnapshotFormat format);

/// One row per record, columns exactly matching DiagnosticsRow field order.
void write_diagnostics_csv(const std::vector<DiagnosticsRow>& rows, const std::string& path);

void write_report_csv(const ConvergenceReport& report, const std::string& path);
void write_report_json(const ConvergenceReport& report, const StudyConfig& cfg,
                       const std::string& path);

} // namespace nskfv

#endif

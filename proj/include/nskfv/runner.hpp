#ifndef NSKFV_RUNNER_HPP
#define NSKFV_RUNNER_HPP

#include "nskfv/consistency.hpp"
#include "nskfv/io.hpp"

namespace nskfv {

/// Builds the initial data, integrates to t_end, and writes diagnostics.csv
/// plus one snapshot per record into the configured output directory.
void execute_run(const RunConfig& config);

/// Runs the refinement study and writes report.csv and report.json.
ConvergenceReport execute_study(const StudyConfig& config);

} // namespace nskfv

#endif

#include "nskfv/runner.hpp"

#include <filesystem>

#include "nskfv/timeloop.hpp"

namespace nskfv {

void execute_run(const RunConfig& config) {
    config.validate();
    Mesh mesh = make_mesh(config.mesh.m, config.mesh.n);
    State initial = build_initial(config, mesh);
    Trajectory traj = integrate(initial, config.params, config.controls);

    namespace fs = std::filesystem;
    fs::path dir(config.output.dir);
    write_diagnostics_csv(traj.diagnostics, (dir / "diagnostics.csv").string());
    for (size_t k = 0; k < traj.states.size(); ++k)
        write_snapshot(traj.states[k], traj.times[k], static_cast<int>(k), config.output.dir,
                       config.output.format);
}

ConvergenceReport execute_study(const StudyConfig& config) {
    config.validate();
    ConvergenceReport report = refinement_study(config);

    namespace fs = std::filesystem;
    fs::path dir(config.base.output.dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
    write_report_csv(report, (dir / "report.csv").string());
    write_report_json(report, config, (dir / "report.json").string());
    return report;
}

} // namespace nskfv

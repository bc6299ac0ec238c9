#ifndef NSKFV_CONFIG_HPP
#define NSKFV_CONFIG_HPP

#include <string>
#include <variant>
#include <vector>

#include "nskfv/model.hpp"
#include "nskfv/timeloop.hpp"

namespace nskfv {

struct MeshSpec {
    int m = 16;
    int n = 16;
};

/// Spatially constant initial contribution.
struct ConstantIc {
    double rho = 1.0;
    double u = 0.0;
    double v = 0.0;
};

/// rho = rho_mean + amplitude * sin(2 pi kx x) * sin(2 pi ky y), constant
/// velocity. amplitude < rho_mean keeps the density positive.
struct SineBumpIc {
    double rho_mean = 1.0;
    double amplitude = 0.0;
    int kx = 1;
    int ky = 1;
    double u = 0.0;
    double v = 0.0;
};

using InitialTerm = std::variant<ConstantIc, SineBumpIc>;

/// One term, or a sum of terms (composite).
struct InitialConfig {
    std::vector<InitialTerm> terms;
};

enum class SnapshotFormat { Csv, Raw };

struct OutputConfig {
    std::string dir = "out";
    SnapshotFormat format = SnapshotFormat::Csv;
};

struct RunConfig {
    MeshSpec mesh;
    FluidParams params;
    TimeControls controls;
    InitialConfig initial;
    OutputConfig output;

    void validate() const;
};

struct StudyConfig {
    RunConfig base;
    std::vector<MeshSpec> levels; ///< nested by factor 2, at least 2 entries
    int battery_kmax = 2;

    void validate() const;
};

using AnyConfig = std::variant<RunConfig, StudyConfig>;

/// Parses a JSON document with top-level "kind": "run" | "study". Unknown
/// keys anywhere are an error; defaults: cfl 0.4, delta 1e-8, record_every
/// 10, max_steps 1000000, snapshot format "csv", output dir "out".
AnyConfig parse_config(const std::string& text);

/// Inverse of parse_config (parse(serialize(c)) == c).
std::string serialize_config(const AnyConfig& config);

/// Evaluates the initial data, projects density and velocity to cell
/// averages, and forms the momentum cellwise as rho_h * u_h. Throws
/// PositivityError if any projected density cell is <= 0.
State build_initial(const RunConfig& config, const Mesh& mesh);

} // namespace nskfv

#endif

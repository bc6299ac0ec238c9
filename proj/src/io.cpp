#include "nskfv/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nskfv {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_for_write(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void write_doubles_le(std::ofstream& out, const double* p, size_t count) {
    // Doubles are written byte-by-byte in little-endian order; on LE hosts
    // this is a straight copy.
    for (size_t k = 0; k < count; ++k) {
        uint64_t bits;
        std::memcpy(&bits, &p[k], sizeof(bits));
        unsigned char bytes[8];
        for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>((bits >> (8 * b)) & 0xff);
        out.write(reinterpret_cast<const char*>(bytes), 8);
    }
}

void read_doubles_le(std::ifstream& in, double* p, size_t count) {
    for (size_t k = 0; k < count; ++k) {
        unsigned char bytes[8];
        in.read(reinterpret_cast<char*>(bytes), 8);
        uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= static_cast<uint64_t>(bytes[b]) << (8 * b);
        std::memcpy(&p[k], &bits, sizeof(bits));
    }
}

} // namespace

void write_snapshot(const State& state, double t, int index, const std::string& dir,
                    SnapshotFormat format) {
    const Mesh& mesh = state.mesh();
    fs::path base(dir);
    std::error_code ec;
    fs::create_directories(base, ec);
    if (ec) throw IoError("cannot create directory " + base.string() + ": " + ec.message());

    const std::string stem = "snap_" + std::to_string(index);
    if (format == SnapshotFormat::Csv) {
        std::ofstream out = open_for_write(base / (stem + ".csv"));
        out << "# t=" << g17(t) << " M=" << mesh.m << " N=" << mesh.n << "\n";
        out << "i,j,rho,mx,my\n";
        for (int j = 0; j < mesh.n; ++j)
            for (int i = 0; i < mesh.m; ++i)
                out << i << "," << j << "," << g17(state.rho(i, j)) << "," << g17(state.mx(i, j))
                    << "," << g17(state.my(i, j)) << "\n";
        if (!out) throw IoError("write failed for " + (base / (stem + ".csv")).string());
    } else {
        fs::path raw_path = base / (stem + ".raw");
        std::ofstream out(raw_path, std::ios::binary);
        if (!out) throw IoError("cannot open " + raw_path.string() + " for writing");
        write_doubles_le(out, state.rho.data(), state.rho.size());
        write_doubles_le(out, state.mx.data(), state.mx.size());
        write_doubles_le(out, state.my.data(), state.my.size());
        if (!out) throw IoError("write failed for " + raw_path.string());

        json side;
        side["t"] = t;
        side["M"] = mesh.m;
        side["N"] = mesh.n;
        side["fields"] = {"rho", "mx", "my"};
        side["byte_order"] = "LE";
        side["dtype"] = "f64";
        std::ofstream sc = open_for_write(base / (stem + ".json"));
        sc << side.dump(2) << "\n";
    }
}

Snapshot read_snapshot(const std::string& dir, int index, SnapshotFormat format) {
    fs::path base(dir);
    const std::string stem = "snap_" + std::to_string(index);
    Snapshot snap;

    if (format == SnapshotFormat::Csv) {
        fs::path path = base / (stem + ".csv");
        std::ifstream in(path);
        if (!in) throw IoError("cannot open " + path.string());
        std::string header;
        std::getline(in, header);
        double t;
        int m, n;
        if (std::sscanf(header.c_str(), "# t=%lf M=%d N=%d", &t, &m, &n) != 3)
            throw IoError("malformed snapshot header in " + path.string());
        std::string columns;
        std::getline(in, columns);
        Mesh mesh = make_mesh(m, n);
        snap.t = t;
        snap.state.rho = GridField(mesh);
        snap.state.mx = GridField(mesh);
        snap.state.my = GridField(mesh);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            int i, j;
            double rho, mx, my;
            if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf", &i, &j, &rho, &mx, &my) != 5)
                throw IoError("malformed snapshot row in " + path.string());
            snap.state.rho(i, j) = rho;
            snap.state.mx(i, j) = mx;
            snap.state.my(i, j) = my;
        }
        return snap;
    }

    fs::path side_path = base / (stem + ".json");
    std::ifstream sc(side_path);
    if (!sc) throw IoError("cannot open " + side_path.string());
    json side = json::parse(sc, nullptr, false);
    if (side.is_discarded()) throw IoError("malformed sidecar " + side_path.string());
    if (side.value("byte_order", "") != "LE" || side.value("dtype", "") != "f64")
        throw IoError("unsupported snapshot encoding in " + side_path.string());
    Mesh mesh = make_mesh(side.at("M").get<int>(), side.at("N").get<int>());
    snap.t = side.at("t").get<double>();

    fs::path raw_path = base / (stem + ".raw");
    std::ifstream in(raw_path, std::ios::binary);
    if (!in) throw IoError("cannot open " + raw_path.string());
    snap.state.rho = GridField(mesh);
    snap.state.mx = GridField(mesh);
    snap.state.my = GridField(mesh);
    read_doubles_le(in, snap.state.rho.data(), snap.state.rho.size());
    read_doubles_le(in, snap.state.mx.data(), snap.state.mx.size());
    read_doubles_le(in, snap.state.my.data(), snap.state.my.size());
    if (!in) throw IoError("truncated snapshot " + raw_path.string());
    return snap;
}

void write_diagnostics_csv(const std::vector<DiagnosticsRow>& rows, const std::string& path) {
    fs::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + p.parent_path().string());
    }
    std::ofstream out = open_for_write(p);
    out << "t,mass,mom_x,mom_y,energy,dE_dt,dissipation_bound,min_density,lambda,grad_rho_l2,u_l2\n";
    for (const DiagnosticsRow& r : rows) {
        out << g17(r.t) << "," << g17(r.mass) << "," << g17(r.mom_x) << "," << g17(r.mom_y) << ","
            << g17(r.energy) << "," << g17(r.dE_dt) << "," << g17(r.dissipation_bound) << ","
            << g17(r.min_density) << "," << g17(r.lambda) << "," << g17(r.grad_rho_l2) << ","
            << g17(r.u_l2) << "\n";
    }
    if (!out) throw IoError("write failed for " + path);
}

void write_report_csv(const ConvergenceReport& report, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << "level,M,N,h,R1,R2,cauchy_rho,cauchy_m,lambda_h,apriori_grad,apriori_lap,"
           "order_R1,order_R2,order_cauchy_rho,order_cauchy_m\n";
    for (size_t l = 0; l < report.levels.size(); ++l) {
        const LevelData& lv = report.levels[l];
        out << l << "," << lv.m << "," << lv.n << "," << g17(lv.h) << "," << g17(lv.r1) << ","
            << g17(lv.r2) << ",";
        // pair quantities attach to the finer level of each pair
        if (l > 0)
            out << g17(report.cauchy_rho[l - 1]) << "," << g17(report.cauchy_m[l - 1]) << ",";
        else
            out << ",,";
        out << g17(lv.lambda_h) << "," << g17(lv.apriori_grad) << "," << g17(lv.apriori_lap) << ",";
        if (l > 0)
            out << g17(report.order_r1[l - 1]) << "," << g17(report.order_r2[l - 1]) << ",";
        else
            out << ",,";
        if (l > 1)
            out << g17(report.order_cauchy_rho[l - 2]) << "," << g17(report.order_cauchy_m[l - 2]);
        else
            out << ",";
        out << "\n";
    }
    if (!out) throw IoError("write failed for " + path);
}

void write_report_json(const ConvergenceReport& report, const StudyConfig& cfg,
                       const std::string& path) {
    json j;
    j["battery_kmax"] = cfg.battery_kmax;
    j["t_end"] = cfg.base.controls.t_end;
    j["levels"] = json::array();
    for (const LevelData& lv : report.levels) {
        json e;
        e["M"] = lv.m;
        e["N"] = lv.n;
        e["h"] = lv.h;
        e["R1"] = lv.r1;
        e["R2"] = lv.r2;
        e["R1_time_integrated"] = lv.r1_total;
        e["R2_time_integrated"] = lv.r2_total;
        e["lambda_h"] = lv.lambda_h;
        e["apriori_grad"] = lv.apriori_grad;
        e["apriori_lap"] = lv.apriori_lap;
        e["time_quadrature_check_R1"] = lv.quad_check_r1;
        e["time_quadrature_check_R2"] = lv.quad_check_r2;
        j["levels"].push_back(e);
    }
    j["cauchy_rho"] = report.cauchy_rho;
    j["cauchy_m"] = report.cauchy_m;
    j["order_R1"] = report.order_r1;
    j["order_R2"] = report.order_r2;
    j["order_cauchy_rho"] = report.order_cauchy_rho;
    j["order_cauchy_m"] = report.order_cauchy_m;

    fs::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + p.parent_path().string());
    }
    std::ofstream out = open_for_write(p);
    out << j.dump(2) << "\n";
}

} // namespace nskfv

// Acceptance suite: runs every structural acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nskfv/consistency.hpp"
#include "nskfv/fixtures.hpp"
#include "nskfv/oracles.hpp"
#include "nskfv/runner.hpp"
#include "nskfv/timeloop.hpp"

using namespace nskfv;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail, double seconds) {
    std::printf("[%s] criterion %2d: %-34s %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str(), seconds);
    if (!pass) ++failures;
}

template <typename Fn>
void criterion(int id, const std::string& name, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        std::tie(pass, detail) = fn();
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(id, name, pass, detail, seconds);
}

FluidParams bench_params() {
    FluidParams p;
    p.a = 1.0;
    p.gamma = 2.0;
    p.mu = 0.01;
    p.kappa = 1e-3;
    p.delta = 1e-8;
    return p;
}

State bump_state(const Mesh& mesh, double amplitude) {
    State s;
    s.rho = project_to_cell_averages(
        [&](double x, double y) {
            return 1.0 + amplitude * std::sin(two_pi * x) * std::sin(two_pi * y);
        },
        mesh);
    s.mx = GridField(mesh, 0.0);
    s.my = GridField(mesh, 0.0);
    return s;
}

State shear_state(const Mesh& mesh) {
    State s;
    s.rho = GridField(mesh, 1.0);
    s.mx = GridField(mesh);
    s.my = GridField(mesh);
    for (int j = 0; j < mesh.n; ++j)
        for (int i = 0; i < mesh.m; ++i) {
            s.mx(i, j) = 0.2 * std::sin(two_pi * j * mesh.hy);
            s.my(i, j) = 0.1 * std::cos(two_pi * i * mesh.hx);
        }
    return s;
}

struct Benchmarks {
    Trajectory bump32;      // 32^2, mu = 0.01, kappa = 1e-3, cfl = 0.4, T = 0.05
    Trajectory bump32_half; // same with cfl = 0.2
    Trajectory ek16;        // Euler-Korteweg (mu = 0) bump
    Trajectory shear16;
    FluidParams params = bench_params();
    FluidParams params_ek;
};

Benchmarks run_benchmarks() {
    Benchmarks b;
    b.params_ek = b.params;
    b.params_ek.mu = 0.0;

    TimeControls c32;
    c32.t_end = 0.05;
    c32.cfl = 0.4;
    c32.record_every = 10;
    Mesh mesh32 = make_mesh(32, 32);
    b.bump32 = integrate(bump_state(mesh32, 0.1), b.params, c32);

    TimeControls half = c32;
    half.cfl = 0.2;
    b.bump32_half = integrate(bump_state(mesh32, 0.1), b.params, half);

    TimeControls c16;
    c16.t_end = 0.02;
    c16.record_every = 5;
    Mesh mesh16 = make_mesh(16, 16);
    b.ek16 = integrate(bump_state(mesh16, 0.1), b.params_ek, c16);
    b.shear16 = integrate(shear_state(mesh16), b.params, c16);
    return b;
}

double worst_energy_rise(const Trajectory& traj) {
    double worst = 0.0;
    for (size_t k = 1; k < traj.diagnostics.size(); ++k)
        worst = std::max(worst, traj.diagnostics[k].energy - traj.diagnostics[k - 1].energy);
    return worst;
}

std::pair<bool, std::string> check_conservation(const Benchmarks& bench) {
    FluidParams p = bench_params();
    double worst = 0.0;
    int count = 0;
    std::mt19937_64 rng(1001);
    for (auto [m, n] : {std::pair{4, 4}, std::pair{8, 8}, std::pair{8, 16}, std::pair{16, 16},
                        std::pair{32, 32}}) {
        Mesh mesh = make_mesh(m, n);
        for (int trial = 0; trial < 40; ++trial) {
            State s = fixtures::random_state(mesh, rng, trial % 3 == 2);
            SchemeRhs rhs = rhs_full(s, p);
            for (const GridField* f : {&rhs.drho_dt, &rhs.dmx_dt, &rhs.dmy_dt}) {
                GridField mag(mesh);
                for (size_t k = 0; k < f->size(); ++k) mag.data()[k] = std::abs(f->data()[k]);
                worst = std::max(worst, std::abs(integral(*f)) / (1.0 + integral(mag)));
            }
            ++count;
        }
    }
    bool pass = worst <= 1e-12;

    // trajectory conservation across all benchmarks
    double worst_traj = 0.0;
    for (const Trajectory* traj : {&bench.bump32, &bench.bump32_half, &bench.ek16, &bench.shear16}) {
        const DiagnosticsRow& a = traj->diagnostics.front();
        const DiagnosticsRow& z = traj->diagnostics.back();
        worst_traj = std::max({worst_traj,
                               std::abs(z.mass - a.mass) / (1.0 + std::abs(a.mass)),
                               std::abs(z.mom_x - a.mom_x) / (1.0 + std::abs(a.mom_x)),
                               std::abs(z.mom_y - a.mom_y) / (1.0 + std::abs(a.mom_y))});
    }
    pass = pass && worst_traj <= 1e-12;

    std::ostringstream os;
    os << count << " states, worst rhs defect " << worst << ", worst trajectory drift " << worst_traj;
    return {pass, os.str()};
}

std::pair<bool, std::string> check_sbp() {
    double worst = 0.0;
    for (auto [m, n] : {std::pair{4, 4}, std::pair{8, 8}, std::pair{8, 16}}) {
        Mesh mesh = make_mesh(m, n);
        std::mt19937_64 rng(2002);
        for (int trial = 0; trial < 100; ++trial) {
            GridField f = fixtures::random_rough_field(mesh, rng, -1.0, 1.0);
            GridField g = fixtures::random_rough_field(mesh, rng, -1.0, 1.0);
            for (Axis ax : {Axis::X, Axis::Y}) {
                const double s1 = inner_product(diff(f, ax, DiffKind::Forward), g);
                const double s2 = inner_product(f, diff(g, ax, DiffKind::Backward));
                worst = std::max(worst, std::abs(s1 + s2) / (1.0 + std::abs(s1) + std::abs(s2)));
                const double c1 = inner_product(diff(f, ax, DiffKind::Central), g);
                const double c2 = inner_product(f, diff(g, ax, DiffKind::Central));
                worst = std::max(worst, std::abs(c1 + c2) / (1.0 + std::abs(c1) + std::abs(c2)));

                GridField ce = diff(f, ax, DiffKind::Central);
                GridField fw = diff(f, ax, DiffKind::Forward);
                GridField bw = diff(f, ax, DiffKind::Backward);
                GridField second = diff(fw, ax, DiffKind::Backward);
                const double ha = ax == Axis::X ? mesh.hx : mesh.hy;
                double scale = 0.0, defect = 0.0, defect2 = 0.0;
                for (size_t k = 0; k < ce.size(); ++k) {
                    scale = std::max(scale, std::abs(fw.data()[k]));
                    defect = std::max(defect,
                                      std::abs(ce.data()[k] - 0.5 * (fw.data()[k] + bw.data()[k])));
                    defect2 = std::max(defect2, std::abs(fw.data()[k] - ce.data()[k]
                                                         - 0.5 * ha * second.data()[k]));
                }
                worst = std::max(worst, defect / (1.0 + scale));
                worst = std::max(worst, defect2 / (1.0 + scale));
            }
            GridField lf = laplacian(f);
            const double sym1 = inner_product(lf, g), sym2 = inner_product(f, laplacian(g));
            worst = std::max(worst, std::abs(sym1 - sym2) / (1.0 + std::abs(sym1) + std::abs(sym2)));
            GridField fx = diff(f, Axis::X, DiffKind::Forward);
            GridField fy = diff(f, Axis::Y, DiffKind::Forward);
            const double neg1 = inner_product(lf, f);
            const double neg2 = -inner_product(fx, fx) - inner_product(fy, fy);
            worst = std::max(worst, std::abs(neg1 - neg2) / (1.0 + std::abs(neg1) + std::abs(neg2)));

            GridField m1 = diff(diff(f, Axis::X, DiffKind::Backward), Axis::Y, DiffKind::Forward);
            GridField m2 = diff(diff(f, Axis::Y, DiffKind::Forward), Axis::X, DiffKind::Backward);
            double scale = 0.0, defect = 0.0;
            for (size_t k = 0; k < m1.size(); ++k) {
                scale = std::max(scale, std::abs(m1.data()[k]));
                defect = std::max(defect, std::abs(m1.data()[k] - m2.data()[k]));
            }
            worst = std::max(worst, defect / (1.0 + scale));
        }
    }
    std::ostringstream os;
    os << "five identity families, worst relative defect " << worst;
    return {worst <= 1e-13, os.str()};
}

std::pair<bool, std::string> check_capillary_identity() {
    FluidParams p = bench_params();
    std::mt19937_64 rng(3003);
    std::uniform_int_distribution<int> mode(0, 2), phase(0, 1), comp(0, 1);
    std::uniform_real_distribution<double> tdist(0.05, 0.95);
    double worst = 0.0;
    for (const Mesh& mesh : {make_mesh(8, 8), make_mesh(16, 16)}) {
        for (int seed = 0; seed < 100; ++seed) {
            GridField rho = seed % 2 == 0 ? fixtures::random_rough_field(mesh, rng, 0.5, 2.0)
                                          : fixtures::random_smooth_field(mesh, rng, 1.0, 0.5);
            TestFunction tf;
            tf.kx = mode(rng);
            tf.ky = mode(rng);
            tf.phase_x = phase(rng) ? Phase::Sin : Phase::Cos;
            tf.phase_y = phase(rng) ? Phase::Sin : Phase::Cos;
            tf.period = 1.0;
            tf.component = comp(rng);
            CapillaryPairing cp = capillary_pairing(rho, tf, p, tdist(rng));
            worst = std::max(worst,
                             std::abs(cp.original - cp.decomposed) / (1.0 + std::abs(cp.original)));
        }
    }
    std::ostringstream os;
    os << "200 (rho, phi) pairs, worst |A-B|/(1+|A|) = " << worst;
    return {worst <= 1e-12, os.str()};
}

std::pair<bool, std::string> check_energy_inequality(const Benchmarks& bench) {
    FluidParams p = bench_params();
    std::mt19937_64 rng(4004);
    double worst_excess = -1e300;
    for (auto [m, n] : {std::pair{8, 8}, std::pair{8, 16}, std::pair{16, 16}, std::pair{32, 32}}) {
        Mesh mesh = make_mesh(m, n);
        for (int trial = 0; trial < 25; ++trial) {
            State s = fixtures::random_state(mesh, rng, trial % 4 == 3);
            const double lam = lambda_max(s, p);
            SchemeRhs rhs = rhs_full_frozen(s, p, lam);
            auto [rate, bound] = energy_rate_and_bound(s, rhs, p, lam);
            const double energy = discrete_total_energy(s, p);
            worst_excess = std::max(worst_excess, rate - bound - 1e-9 * (1.0 + std::abs(energy)));
        }
    }
    for (const Trajectory* traj : {&bench.bump32, &bench.ek16, &bench.shear16}) {
        for (const DiagnosticsRow& row : traj->diagnostics)
            worst_excess = std::max(worst_excess, row.dE_dt - row.dissipation_bound
                                                      - 1e-9 * (1.0 + std::abs(row.energy)));
    }
    std::ostringstream os;
    os << "100 random states + 3 trajectories, worst (dE/dt - bound - tol) = " << worst_excess;
    return {worst_excess <= 0.0, os.str()};
}

std::pair<bool, std::string> check_energy_monotonicity(const Benchmarks& bench) {
    const double e0 = bench.bump32.diagnostics.front().energy;
    const double tol = 1e-8 * (1.0 + e0);
    const double worst_full = worst_energy_rise(bench.bump32);
    const double worst_half = worst_energy_rise(bench.bump32_half);
    const bool monotone = worst_full <= tol;
    // integrator energy error shrinks with dt; with no observed violation the
    // requirement is met vacuously
    const double floor_tol = 1e-15 * (1.0 + e0);
    const bool tightened = worst_half <= std::max(worst_full / 5.0, floor_tol);
    std::ostringstream os;
    os << "worst rise " << worst_full << " (tol " << tol << "), at cfl/2 " << worst_half;
    return {monotone && tightened, os.str()};
}

std::pair<bool, std::string> check_oracle_equivalence() {
    FluidParams p = bench_params();
    const oracles::OracleTolerance tol;
    double worst = 0.0;
    bool pass = true;

    auto check_fields = [&](const GridField& a, const GridField& b) {
        double defect = 0.0, scale = 0.0;
        for (size_t k = 0; k < a.size(); ++k) {
            defect = std::max(defect, std::abs(a.data()[k] - b.data()[k]));
            scale = std::max({scale, std::abs(a.data()[k]), std::abs(b.data()[k])});
        }
        worst = std::max(worst, defect / (1.0 + scale));
        if (defect > tol.abs + tol.rel * scale) pass = false;
    };
    auto check_scalar = [&](double a, double b) {
        const double defect = std::abs(a - b);
        const double scale = std::max(std::abs(a), std::abs(b));
        worst = std::max(worst, defect / (1.0 + scale));
        if (defect > tol.abs + tol.rel * scale) pass = false;
    };

    SmoothReference ref = fixtures::trig_reference();
    int seeds = 0;
    for (auto [m, n] : {std::pair{4, 4}, std::pair{8, 8}, std::pair{8, 16}, std::pair{16, 16}}) {
        Mesh mesh = make_mesh(m, n);
        std::mt19937_64 rng(5005);
        for (int trial = 0; trial < 50; ++trial, ++seeds) {
            State s = fixtures::random_state(mesh, rng, trial % 2 == 1);
            for (Axis ax : {Axis::X, Axis::Y})
                for (DiffKind kind : {DiffKind::Forward, DiffKind::Backward, DiffKind::Central})
                    check_fields(diff(s.rho, ax, kind), oracles::oracle_diff(s.rho, ax, kind));
            check_fields(laplacian(s.rho), oracles::oracle_laplacian(s.rho));
            check_scalar(discrete_total_energy(s, p), oracles::oracle_energy(s, p));
            const double lam = lambda_max(s, p);
            check_scalar(lam, oracles::oracle_lambda(s, p));
            check_fields(rhs_continuity(s, p, lam), oracles::oracle_rhs_continuity(s, p, lam));
            auto [kx, ky] = capillary_force(s.rho, p);
            auto [okx, oky] = oracles::oracle_capillary(s.rho, p);
            check_fields(kx, okx);
            check_fields(ky, oky);
            SchemeRhs rhs = rhs_full(s, p);
            SchemeRhs orhs = oracles::oracle_rhs(s, p);
            check_fields(rhs.drho_dt, orhs.drho_dt);
            check_fields(rhs.dmx_dt, orhs.dmx_dt);
            check_fields(rhs.dmy_dt, orhs.dmy_dt);
            check_scalar(relative_energy(s, ref, p, 0.2),
                         oracles::oracle_relative_energy(s, ref, p, 0.2));
        }
    }
    std::ostringstream os;
    os << seeds << " seeds, worst relative kernel/oracle defect " << worst;
    return {pass, os.str()};
}

StudyConfig benchmark_study() {
    StudyConfig cfg;
    cfg.base.mesh = {16, 16};
    cfg.base.params = bench_params();
    cfg.base.controls.t_end = 0.05;
    cfg.base.controls.cfl = 0.4;
    cfg.base.controls.max_steps = 1000000;
    SineBumpIc bump;
    bump.rho_mean = 1.0;
    bump.amplitude = 0.1;
    bump.kx = 1;
    bump.ky = 1;
    cfg.base.initial.terms = {bump};
    cfg.levels = {{16, 16}, {32, 32}, {64, 64}};
    cfg.battery_kmax = 2;
    return cfg;
}

std::pair<bool, std::string> check_residual_decay(const ConvergenceReport& report) {
    bool pass = report.levels.size() == 3;
    for (size_t l = 0; pass && l + 1 < report.levels.size(); ++l) {
        pass = report.levels[l + 1].r1 < report.levels[l].r1
               && report.levels[l + 1].r2 < report.levels[l].r2;
    }
    // observed order of the three-level study: the log2 regression slope,
    // i.e. the mean of the pairwise ratios (per-pair values stay in the report)
    auto study_order = [](const std::vector<double>& ords) {
        double acc = 0.0;
        for (double o : ords) acc += o;
        return ords.empty() ? 0.0 : acc / static_cast<double>(ords.size());
    };
    const double o1 = study_order(report.order_r1);
    const double o2 = study_order(report.order_r2);
    pass = pass && std::min(o1, o2) >= 0.9;
    std::ostringstream os;
    os << "R1 = {";
    for (const LevelData& lv : report.levels) os << " " << lv.r1;
    os << " } order " << o1 << " (pairs";
    for (double o : report.order_r1) os << " " << o;
    os << "), R2 = {";
    for (const LevelData& lv : report.levels) os << " " << lv.r2;
    os << " } order " << o2 << " (pairs";
    for (double o : report.order_r2) os << " " << o;
    os << ")";
    return {pass, os.str()};
}

std::pair<bool, std::string> check_cauchy_and_monitors(const ConvergenceReport& report) {
    bool pass = report.cauchy_rho.size() == 2 && report.cauchy_m.size() == 2;
    double min_factor = 1e300;
    if (pass) {
        min_factor = std::min({report.cauchy_rho[0] / report.cauchy_rho[1],
                               report.cauchy_m[0] / report.cauchy_m[1]});
        pass = min_factor >= 1.5;
    }
    bool lambda_dec = true, lap_dec = true;
    for (size_t l = 0; l + 1 < report.levels.size(); ++l) {
        lambda_dec = lambda_dec && report.levels[l + 1].lambda_h < report.levels[l].lambda_h;
        lap_dec = lap_dec && report.levels[l + 1].apriori_lap < report.levels[l].apriori_lap;
    }
    pass = pass && lambda_dec && lap_dec;
    std::ostringstream os;
    os << "cauchy_rho = {" << report.cauchy_rho[0] << ", " << report.cauchy_rho[1] << "}, cauchy_m = {"
       << report.cauchy_m[0] << ", " << report.cauchy_m[1] << "}, factor >= " << min_factor
       << ", lambda_h decreasing " << (lambda_dec ? "yes" : "no") << ", lap proxy decreasing "
       << (lap_dec ? "yes" : "no");
    return {pass, os.str()};
}

std::pair<bool, std::string> check_relative_energy() {
    FluidParams p = bench_params();
    SmoothReference ref = fixtures::trig_reference();

    std::vector<double> values;
    for (int m : {16, 32, 64}) {
        Mesh mesh = make_mesh(m, m);
        State s;
        s.rho = project_to_cell_averages([&](double x, double y) { return ref.rho(0.0, x, y); }, mesh);
        GridField u = project_to_cell_averages([&](double x, double y) { return ref.u(0.0, x, y).first; },
                                               mesh);
        GridField v = project_to_cell_averages(
            [&](double x, double y) { return ref.u(0.0, x, y).second; }, mesh);
        s.mx = GridField(mesh);
        s.my = GridField(mesh);
        for (size_t k = 0; k < s.rho.size(); ++k) {
            s.mx.data()[k] = s.rho.data()[k] * u.data()[k];
            s.my.data()[k] = s.rho.data()[k] * v.data()[k];
        }
        values.push_back(std::abs(relative_energy(s, ref, p, 0.0)));
    }
    const double r1 = values[0] / values[1];
    const double r2 = values[1] / values[2];
    bool pass = r1 >= 3.0 && r1 <= 5.0 && r2 >= 3.0 && r2 <= 5.0;

    // constant-shift closed form: E_rel = rho |c|^2 / 2
    SmoothReference cref;
    cref.rho = [](double, double, double) { return 1.0; };
    cref.rho_grad = [](double, double, double) { return std::make_pair(0.0, 0.0); };
    cref.rho_lap = [](double, double, double) { return 0.0; };
    cref.u = [](double, double, double) { return std::make_pair(0.4, 0.0); };
    cref.u_grad = [](double, double, double) { return std::array<double, 4>{0, 0, 0, 0}; };
    Mesh mesh = make_mesh(16, 16);
    State shifted;
    shifted.rho = GridField(mesh, 1.0);
    shifted.mx = GridField(mesh, 0.6);
    shifted.my = GridField(mesh, 0.0);
    const double closed = relative_energy(shifted, cref, p, 0.0);
    pass = pass && std::abs(closed - 0.02) <= 1e-12;

    std::ostringstream os;
    os << "self-comparison ratios " << r1 << ", " << r2 << "; shift closed form defect "
       << std::abs(closed - 0.02);
    return {pass, os.str()};
}

std::pair<bool, std::string> check_lemma_monitors(const Benchmarks& bench) {
    bool pass = true;
    double worst_margin = 1e300;
    auto check_traj = [&](const Trajectory& traj, const FluidParams& p) {
        const double e0 = traj.diagnostics.front().energy;
        for (size_t k = 0; k < traj.states.size(); ++k) {
            LemmaBounds obs = lemma_observables(traj.states[k], p);
            const double rho_min = traj.diagnostics[k].min_density;
            const double b1 = 2.0 * e0 / rho_min - obs.u_l2_sq;
            const double b2 = (p.gamma - 1.0) * e0 / p.a - obs.rho_gamma_integral;
            const double b3 = 2.0 * e0 / p.kappa - obs.grad_rho_l2_sq;
            worst_margin = std::min({worst_margin, b1, b2, b3});
            if (b1 < 0.0 || b2 < 0.0 || b3 < 0.0) pass = false;
        }
    };
    check_traj(bench.bump32, bench.params);
    check_traj(bench.bump32_half, bench.params);
    check_traj(bench.ek16, bench.params_ek);
    check_traj(bench.shear16, bench.params);
    std::ostringstream os;
    os << "all records within energy-derived bounds, smallest margin " << worst_margin;
    return {pass, os.str()};
}

} // namespace

int main() {
    std::printf("nskfv acceptance suite\n");

    Benchmarks bench = run_benchmarks();

    criterion(1, "conservation", [&] { return check_conservation(bench); });
    criterion(2, "sbp and operator identities", [] { return check_sbp(); });
    criterion(3, "capillary decomposition identity", [] { return check_capillary_identity(); });
    criterion(4, "semi-discrete energy dissipation", [&] { return check_energy_inequality(bench); });
    criterion(5, "discrete-time energy monotonicity", [&] { return check_energy_monotonicity(bench); });
    criterion(6, "oracle equivalence", [] { return check_oracle_equivalence(); });

    ConvergenceReport report = refinement_study(benchmark_study());
    criterion(7, "consistency residual decay", [&] { return check_residual_decay(report); });
    criterion(8, "cauchy convergence and monitors", [&] { return check_cauchy_and_monitors(report); });
    criterion(9, "relative-energy diagnostic", [] { return check_relative_energy(); });
    criterion(10, "lemma bound monitors", [&] { return check_lemma_monitors(bench); });

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}

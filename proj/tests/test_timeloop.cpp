#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nskfv/timeloop.hpp"
#include "test_util.hpp"

using namespace nskfv;
using namespace testutil;

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

FluidParams bench_params() {
    FluidParams p;
    p.a = 1.0;
    p.gamma = 2.0;
    p.mu = 0.01;
    p.kappa = 1e-3;
    return p;
}

State bump_state(const Mesh& mesh, double amplitude) {
    State s;
    s.rho = GridField(mesh);
    for (int j = 0; j < mesh.n; ++j)
        for (int i = 0; i < mesh.m; ++i)
            s.rho(i, j) = 1.0 + amplitude * std::sin(two_pi * i * mesh.hx)
                                    * std::sin(two_pi * j * mesh.hy);
    s.mx = GridField(mesh, 0.0);
    s.my = GridField(mesh, 0.0);
    return s;
}

double l1_distance(const State& a, const State& b) {
    double acc = 0.0;
    for (auto [fa, fb] : {std::pair{&a.rho, &b.rho}, std::pair{&a.mx, &b.mx}, std::pair{&a.my, &b.my}}) {
        GridField d(fa->mesh());
        for (size_t k = 0; k < d.size(); ++k)
            d.data()[k] = std::abs(fa->data()[k] - fb->data()[k]);
        acc += integral(d);
    }
    return acc;
}

// many small SSP-RK3 steps as a near-exact reference
State reference_solution(State s, double t, int pieces, const FluidParams& p) {
    const double dt = t / pieces;
    for (int k = 0; k < pieces; ++k) s = step_ssprk3(s, dt, p);
    return s;
}
} // namespace

TEST_CASE("stable_dt: binding terms and precondition") {
    Mesh mesh = make_mesh(16, 16);
    State s = constant_state(mesh, 1.0, 0.3, 0.0);

    // mu = 0, tiny kappa: the convective bound h/(2 lambda) dominates
    FluidParams p = bench_params();
    p.mu = 0.0;
    p.kappa = 1e-12;
    const double lam = lambda_max(s, p);
    const double dt = stable_dt(s, p, mesh, 0.5);
    // with kappa ~ 0 the capillary term is huge; viscous term is h^2/(8 lam h)= h/(8 lam)
    CHECK(dt == doctest::Approx(0.5 * std::min(mesh.hx, mesh.hy) / (8.0 * lam)).epsilon(1e-12));

    // large kappa: dt scales like h^3 (frozen state, two meshes)
    FluidParams pk = bench_params();
    pk.kappa = 10.0;
    Mesh coarse = make_mesh(8, 8), fine = make_mesh(16, 16);
    const double dtc = stable_dt(constant_state(coarse, 1.0, 0.0, 0.0), pk, coarse, 0.4);
    const double dtf = stable_dt(constant_state(fine, 1.0, 0.0, 0.0), pk, fine, 0.4);
    CHECK(dtc / dtf == doctest::Approx(8.0).epsilon(1e-10));

    CHECK_THROWS_AS(stable_dt(s, p, mesh, 0.0), ValidationError);
    CHECK_NOTHROW(stable_dt(s, p, mesh, 1.0));
}

TEST_CASE("ssprk3: constant states are fixed points; conservation through steps") {
    FluidParams p = bench_params();
    Mesh mesh = make_mesh(8, 8);
    State c = constant_state(mesh, 1.2, 0.3, -0.1);
    State next = step_ssprk3(c, 1e-3, p);
    CHECK(max_abs_diff(next.rho, c.rho) <= 1e-14);
    CHECK(max_abs_diff(next.mx, c.mx) <= 1e-14);
    CHECK(max_abs_diff(next.my, c.my) <= 1e-14);

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        State s = fixtures::random_state(mesh, rng, false);
        const double dt = 0.25 * stable_dt(s, p, mesh, 0.4);
        State stepped = step_ssprk3(s, dt, p);
        auto [m0, px0, py0] = totals(s);
        auto [m1, px1, py1] = totals(stepped);
        CHECK(std::abs(m1 - m0) <= 1e-13 * (1.0 + std::abs(m0)));
        CHECK(std::abs(px1 - px0) <= 1e-13 * (1.0 + std::abs(px0)));
        CHECK(std::abs(py1 - py0) <= 1e-13 * (1.0 + std::abs(py0)));
    }

    CHECK_THROWS_AS(step_ssprk3(c, -1.0, p), ValidationError);
}

TEST_CASE("ssprk3 one-step Richardson ratio is ~16 (local order 4)") {
    FluidParams p = bench_params();
    Mesh mesh = make_mesh(16, 16);
    State s = bump_state(mesh, 0.1);

    const double dt = 0.5 * stable_dt(s, p, mesh, 0.4);
    State full = step_ssprk3(s, dt, p);
    State half = step_ssprk3(s, 0.5 * dt, p);

    const double err_full = l1_distance(full, reference_solution(s, dt, 100, p));
    const double err_half = l1_distance(half, reference_solution(s, 0.5 * dt, 50, p));
    const double ratio = err_full / err_half;
    CHECK(ratio > 10.0);
    CHECK(ratio < 24.0);
}

TEST_CASE("integrate: constant data stays constant with constant energy") {
    FluidParams p = bench_params();
    Mesh mesh = make_mesh(8, 8);
    State c = constant_state(mesh, 1.0, 0.2, 0.1);
    TimeControls controls;
    controls.t_end = 1.0;
    controls.record_every = 7;
    Trajectory traj = integrate(c, p, controls);

    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(1.0));
    for (size_t k = 1; k < traj.times.size(); ++k) CHECK(traj.times[k] > traj.times[k - 1]);
    CHECK(max_abs_diff(traj.states.back().rho, c.rho) <= 1e-14);
    CHECK(max_abs_diff(traj.states.back().mx, c.mx) <= 1e-14);
    const double e0 = traj.diagnostics.front().energy;
    for (const DiagnosticsRow& row : traj.diagnostics)
        CHECK(std::abs(row.energy - e0) <= 1e-13 * (1.0 + e0));
}

TEST_CASE("integrate: smooth bump dissipates energy within tolerance") {
    FluidParams p = bench_params();
    Mesh mesh = make_mesh(32, 32);
    TimeControls controls;
    controls.t_end = 0.05;
    controls.record_every = 10;
    Trajectory traj = integrate(bump_state(mesh, 0.1), p, controls);

    const double e0 = traj.diagnostics.front().energy;
    for (size_t k = 1; k < traj.diagnostics.size(); ++k)
        CHECK(traj.diagnostics[k].energy
              <= traj.diagnostics[k - 1].energy + 1e-8 * (1.0 + e0));

    // conservation along the trajectory
    const DiagnosticsRow& first = traj.diagnostics.front();
    const DiagnosticsRow& last = traj.diagnostics.back();
    CHECK(std::abs(last.mass - first.mass) <= 1e-12 * (1.0 + std::abs(first.mass)));
    CHECK(std::abs(last.mom_x - first.mom_x) <= 1e-12 * (1.0 + std::abs(first.mom_x)));
    CHECK(std::abs(last.mom_y - first.mom_y) <= 1e-12 * (1.0 + std::abs(first.mom_y)));

    // the semi-discrete inequality holds at every record
    for (const DiagnosticsRow& row : traj.diagnostics)
        CHECK(row.dE_dt <= row.dissipation_bound + 1e-9 * (1.0 + std::abs(row.energy)));
}

TEST_CASE("integrate: step budget error") {
    FluidParams p = bench_params();
    Mesh mesh = make_mesh(8, 8);
    TimeControls controls;
    controls.t_end = 1.0;
    controls.max_steps = 1;
    CHECK_THROWS_AS(integrate(bump_state(mesh, 0.1), p, controls), StepBudgetError);
}

TEST_CASE("integrate: control validation") {
    TimeControls controls;
    controls.t_end = 0.0;
    CHECK_THROWS_AS(controls.validate(), ValidationError);
    controls.t_end = 1.0;
    controls.cfl = 0.0;
    CHECK_THROWS_AS(controls.validate(), ValidationError);
    controls.cfl = 1.5;
    CHECK_THROWS_AS(controls.validate(), ValidationError);
}

TEST_CASE("halving cfl shrinks the time-discretization error like dt^3") {
    FluidParams p = bench_params();
    Mesh mesh = make_mesh(16, 16);
    State initial = bump_state(mesh, 0.1);

    TimeControls controls;
    controls.t_end = 0.01;
    controls.record_every = 1000000; // final state only

    auto final_state = [&](double cfl) {
        TimeControls c = controls;
        c.cfl = cfl;
        return integrate(initial, p, c).states.back();
    };
    State ref = final_state(0.025);
    const double err_full = l1_distance(final_state(0.4), ref);
    const double err_half = l1_distance(final_state(0.2), ref);
    CHECK(err_half < err_full);
    const double order = std::log2(err_full / err_half);
    CHECK(order > 2.0); // formal order 3, measured against a finite reference
}

TEST_CASE("frozen-lambda stepping stays conservative and dissipative") {
    FluidParams p = bench_params();
    Mesh mesh = make_mesh(16, 16);
    TimeControls controls;
    controls.t_end = 0.02;
    controls.freeze_lambda = true;
    Trajectory traj = integrate(bump_state(mesh, 0.1), p, controls);
    const DiagnosticsRow& first = traj.diagnostics.front();
    const DiagnosticsRow& last = traj.diagnostics.back();
    CHECK(std::abs(last.mass - first.mass) <= 1e-12 * (1.0 + std::abs(first.mass)));
    CHECK(last.energy <= first.energy + 1e-8 * (1.0 + first.energy));
}

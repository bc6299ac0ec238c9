#include "nskfv/verify.hpp"

#include <cmath>
#include <sstream>

#include "nskfv/consistency.hpp"
#include "nskfv/fixtures.hpp"
#include "nskfv/oracles.hpp"
#include "nskfv/timeloop.hpp"

namespace nskfv {

namespace {

struct Context {
    std::vector<Mesh> meshes;
    int seeds = 0;
    FluidParams params; // a=1, gamma=2, mu=0.01, kappa=1e-3
};

Context make_context(bool quick) {
    Context ctx;
    if (quick) {
        ctx.meshes = {make_mesh(8, 8)};
        ctx.seeds = 20;
    } else {
        ctx.meshes = {make_mesh(4, 4), make_mesh(8, 8), make_mesh(8, 16), make_mesh(16, 16)};
        ctx.seeds = 100;
    }
    ctx.params.mu = 0.01;
    return ctx;
}

double field_scale(const GridField& a, const GridField& b) {
    return std::max({std::abs(a.min_value()), std::abs(a.max_value()),
                     std::abs(b.min_value()), std::abs(b.max_value())});
}

double field_defect(const GridField& a, const GridField& b) {
    double worst = 0.0;
    for (size_t k = 0; k < a.size(); ++k)
        worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    return worst;
}

bool fields_close(const GridField& a, const GridField& b, double rel, double abs_tol, double* defect) {
    const double d = field_defect(a, b);
    if (defect) *defect = std::max(*defect, d);
    return d <= abs_tol + rel * field_scale(a, b);
}

SuiteResult suite_sbp(const Context& ctx) {
    SuiteResult res{"sbp_identities", true, ""};
    double worst = 0.0;
    for (const Mesh& mesh : ctx.meshes) {
        std::mt19937_64 rng(77);
        for (int s = 0; s < ctx.seeds; ++s) {
            GridField f = fixtures::random_rough_field(mesh, rng, -1.0, 1.0);
            GridField g = fixtures::random_rough_field(mesh, rng, -1.0, 1.0);
            for (Axis ax : {Axis::X, Axis::Y}) {
                // forward/backward adjointness
                const double fwd = inner_product(diff(f, ax, DiffKind::Forward), g);
                const double bwd = inner_product(f, diff(g, ax, DiffKind::Backward));
                double defect = std::abs(fwd + bwd) / (1.0 + std::abs(fwd) + std::abs(bwd));
                worst = std::max(worst, defect);
                // central antisymmetry
                const double c1 = inner_product(diff(f, ax, DiffKind::Central), g);
                const double c2 = inner_product(f, diff(g, ax, DiffKind::Central));
                defect = std::abs(c1 + c2) / (1.0 + std::abs(c1) + std::abs(c2));
                worst = std::max(worst, defect);
                // central = (forward + backward)/2 and the (h/2) second-difference identity
                GridField fw = diff(f, ax, DiffKind::Forward);
                GridField bw = diff(f, ax, DiffKind::Backward);
                GridField ce = diff(f, ax, DiffKind::Central);
                GridField half(mesh), corr(mesh);
                const double ha = ax == Axis::X ? mesh.hx : mesh.hy;
                GridField second = diff(fw, ax, DiffKind::Backward);
                for (size_t k = 0; k < half.size(); ++k) {
                    half.data()[k] = 0.5 * (fw.data()[k] + bw.data()[k]);
                    corr.data()[k] = ce.data()[k] + 0.5 * ha * second.data()[k];
                }
                double fd = 0.0;
                if (!fields_close(ce, half, 1e-13, 1e-14, &fd)) res.pass = false;
                worst = std::max(worst, fd / (1.0 + field_scale(ce, half)));
                if (!fields_close(fw, corr, 1e-13, 1e-14, &fd)) res.pass = false;
                worst = std::max(worst, fd / (1.0 + field_scale(fw, corr)));
            }
            // Laplacian symmetry and negativity
            GridField lf = laplacian(f), lg = laplacian(g);
            const double sym1 = inner_product(lf, g), sym2 = inner_product(f, lg);
            double defect = std::abs(sym1 - sym2) / (1.0 + std::abs(sym1) + std::abs(sym2));
            worst = std::max(worst, defect);
            GridField fx = diff(f, Axis::X, DiffKind::Forward);
            GridField fy = diff(f, Axis::Y, DiffKind::Forward);
            const double neg1 = inner_product(lf, f);
            const double neg2 = -inner_product(fx, fx) - inner_product(fy, fy);
            defect = std::abs(neg1 - neg2) / (1.0 + std::abs(neg1) + std::abs(neg2));
            worst = std::max(worst, defect);
            // mixed differences commute
            GridField m1 = diff(diff(f, Axis::X, DiffKind::Backward), Axis::Y, DiffKind::Forward);
            GridField m2 = diff(diff(f, Axis::Y, DiffKind::Forward), Axis::X, DiffKind::Backward);
            double fd = 0.0;
            if (!fields_close(m1, m2, 1e-13, 1e-14, &fd)) res.pass = false;
            worst = std::max(worst, fd / (1.0 + field_scale(m1, m2)));
            if (worst > 1e-13) res.pass = false;
        }
    }
    std::ostringstream os;
    os << "worst relative identity defect " << worst;
    res.detail = os.str();
    if (worst > 1e-13) res.pass = false;
    return res;
}

SuiteResult suite_conservation(const Context& ctx, bool quick) {
    SuiteResult res{"conservation", true, ""};
    double worst = 0.0;
    for (const Mesh& mesh : ctx.meshes) {
        std::mt19937_64 rng(123);
        for (int s = 0; s < ctx.seeds; ++s) {
            State state = fixtures::random_state(mesh, rng, s % 3 == 2);
            SchemeRhs rhs = rhs_full(state, ctx.params);
            for (const GridField* f : {&rhs.drho_dt, &rhs.dmx_dt, &rhs.dmy_dt}) {
                GridField mag(mesh);
                for (size_t k = 0; k < f->size(); ++k) mag.data()[k] = std::abs(f->data()[k]);
                const double scale = integral(mag);
                const double defect = std::abs(integral(*f)) / (1.0 + scale);
                worst = std::max(worst, defect);
                if (defect > 1e-12) res.pass = false;
            }
        }
    }
    // short trajectories: totals at t_end must match t = 0
    std::vector<std::pair<Mesh, double>> runs;
    runs.emplace_back(make_mesh(8, 8), 0.01);
    if (!quick) runs.emplace_back(make_mesh(16, 16), 0.02);
    for (auto& [mesh, t_end] : runs) {
        std::mt19937_64 rng(5);
        State initial = fixtures::random_state(mesh, rng, false);
        TimeControls controls;
        controls.t_end = t_end;
        controls.record_every = 5;
        Trajectory traj = integrate(initial, ctx.params, controls);
        const DiagnosticsRow& first = traj.diagnostics.front();
        const DiagnosticsRow& last = traj.diagnostics.back();
        const double defects[3] = {
            std::abs(last.mass - first.mass) / (1.0 + std::abs(first.mass)),
            std::abs(last.mom_x - first.mom_x) / (1.0 + std::abs(first.mom_x)),
            std::abs(last.mom_y - first.mom_y) / (1.0 + std::abs(first.mom_y))};
        for (double d : defects) {
            worst = std::max(worst, d);
            if (d > 1e-12) res.pass = false;
        }
    }
    std::ostringstream os;
    os << "worst relative conservation defect " << worst;
    res.detail = os.str();
    return res;
}

SuiteResult suite_capillary(const Context& ctx) {
    SuiteResult res{"capillary_decomposition", true, ""};
    double worst = 0.0;
    for (const Mesh& mesh : ctx.meshes) {
        std::mt19937_64 rng(999);
        std::uniform_int_distribution<int> mode(0, 2);
        std::uniform_int_distribution<int> phase(0, 1);
        std::uniform_int_distribution<int> comp(0, 1);
        for (int s = 0; s < ctx.seeds; ++s) {
            GridField rho = s % 2 == 0 ? fixtures::random_rough_field(mesh, rng, 0.5, 2.0)
                                       : fixtures::random_smooth_field(mesh, rng, 1.0, 0.5);
            TestFunction phi;
            phi.kx = mode(rng);
            phi.ky = mode(rng);
            phi.phase_x = phase(rng) ? Phase::Sin : Phase::Cos;
            phi.phase_y = phase(rng) ? Phase::Sin : Phase::Cos;
            phi.period = 1.0;
            phi.component = comp(rng);
            CapillaryPairing cp = capillary_pairing(rho, phi, ctx.params, 0.37);
            const double defect = std::abs(cp.original - cp.decomposed)
                                  / (1.0 + std::abs(cp.original));
            worst = std::max(worst, defect);
            if (defect > 1e-12) res.pass = false;
        }
    }
    std::ostringstream os;
    os << "worst |A - B| / (1 + |A|) = " << worst;
    res.detail = os.str();
    return res;
}

SuiteResult suite_energy(const Context& ctx) {
    SuiteResult res{"energy_inequality", true, ""};
    double worst = -1e300;
    for (const Mesh& mesh : ctx.meshes) {
        std::mt19937_64 rng(2024);
        for (int s = 0; s < ctx.seeds; ++s) {
            State state = fixtures::random_state(mesh, rng, s % 4 == 3);
            const double lam = lambda_max(state, ctx.params);
            SchemeRhs rhs = rhs_full_frozen(state, ctx.params, lam);
            auto [rate, bound] = energy_rate_and_bound(state, rhs, ctx.params, lam);
            const double energy = discrete_total_energy(state, ctx.params);
            const double excess = rate - bound - 1e-9 * (1.0 + std::abs(energy));
            worst = std::max(worst, rate - bound);
            if (excess > 0.0) res.pass = false;
        }
    }
    std::ostringstream os;
    os << "worst (dE/dt - bound) = " << worst;
    res.detail = os.str();
    return res;
}

SuiteResult suite_oracle(const Context& ctx) {
    SuiteResult res{"oracle_equivalence", true, ""};
    const oracles::OracleTolerance tol;
    double worst = 0.0;

    auto check = [&](const GridField& kernel, const GridField& reference) {
        const double d = field_defect(kernel, reference);
        const double scale = field_scale(kernel, reference);
        const double rel = d / (tol.abs / tol.rel + scale);
        worst = std::max(worst, rel);
        if (d > tol.abs + tol.rel * scale) res.pass = false;
    };
    auto check_scalar = [&](double kernel, double reference) {
        const double d = std::abs(kernel - reference);
        const double scale = std::max(std::abs(kernel), std::abs(reference));
        worst = std::max(worst, d / (tol.abs / tol.rel + scale));
        if (d > tol.abs + tol.rel * scale) res.pass = false;
    };

    SmoothReference ref = fixtures::trig_reference();
    for (const Mesh& mesh : ctx.meshes) {
        std::mt19937_64 rng(31415);
        for (int s = 0; s < ctx.seeds; ++s) {
            State state = fixtures::random_state(mesh, rng, s % 2 == 1);
            for (Axis ax : {Axis::X, Axis::Y})
                for (DiffKind kind : {DiffKind::Forward, DiffKind::Backward, DiffKind::Central})
                    check(diff(state.rho, ax, kind), oracles::oracle_diff(state.rho, ax, kind));
            check(laplacian(state.rho), oracles::oracle_laplacian(state.rho));
            check_scalar(integral(state.rho), oracles::oracle_integral(state.rho));
            check_scalar(discrete_total_energy(state, ctx.params),
                         oracles::oracle_energy(state, ctx.params));
            check_scalar(lambda_max(state, ctx.params), oracles::oracle_lambda(state, ctx.params));
            const double lam = lambda_max(state, ctx.params);
            check(rhs_continuity(state, ctx.params, lam),
                  oracles::oracle_rhs_continuity(state, ctx.params, lam));
            auto [kx, ky] = capillary_force(state.rho, ctx.params);
            auto [okx, oky] = oracles::oracle_capillary(state.rho, ctx.params);
            check(kx, okx);
            check(ky, oky);
            SchemeRhs rhs = rhs_full(state, ctx.params);
            SchemeRhs orhs = oracles::oracle_rhs(state, ctx.params);
            check(rhs.drho_dt, orhs.drho_dt);
            check(rhs.dmx_dt, orhs.dmx_dt);
            check(rhs.dmy_dt, orhs.dmy_dt);
            check_scalar(relative_energy(state, ref, ctx.params, 0.1),
                         oracles::oracle_relative_energy(state, ref, ctx.params, 0.1));
        }
    }
    std::ostringstream os;
    os << "worst relative kernel/oracle defect " << worst;
    res.detail = os.str();
    return res;
}

} // namespace

std::vector<SuiteResult> run_verify_suites(bool quick) {
    Context ctx = make_context(quick);
    std::vector<SuiteResult> out;
    out.push_back(suite_sbp(ctx));
    out.push_back(suite_conservation(ctx, quick));
    out.push_back(suite_capillary(ctx));
    out.push_back(suite_energy(ctx));
    out.push_back(suite_oracle(ctx));
    return out;
}

} // namespace nskfv

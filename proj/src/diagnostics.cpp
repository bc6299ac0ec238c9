#include "nskfv/diagnostics.hpp"

#include <cmath>

namespace nskfv {

std::tuple<double, double, double> totals(const State& state) {
    return {integral(state.rho), integral(state.mx), integral(state.my)};
}

std::pair<double, double> energy_rate_and_bound(const State& state, const SchemeRhs& rhs,
                                                const FluidParams& params, double lam) {
    const Mesh& mesh = state.mesh();
    if (!same_mesh(mesh, rhs.drho_dt.mesh()) || !same_mesh(mesh, rhs.dmx_dt.mesh()) ||
        !same_mesh(mesh, rhs.dmy_dt.mesh()))
        throw ValidationError("energy_rate_and_bound: rhs and state meshes differ");

    auto [u, v] = velocity(state);

    GridField weight(mesh);
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            const double rho = state.rho(i, j);
            const double ke = 0.5 * (u(i, j) * u(i, j) + v(i, j) * v(i, j));
            weight(i, j) = params.a * params.gamma / (params.gamma - 1.0)
                               * std::pow(rho, params.gamma - 1.0)
                           - ke; // P'(rho) - |u|^2/2
        }
    }

    double rate = inner_product(weight, rhs.drho_dt)
                + inner_product(u, rhs.dmx_dt) + inner_product(v, rhs.dmy_dt);
    rate += params.kappa * (inner_product(diff(state.rho, Axis::X, DiffKind::Forward),
                                          diff(rhs.drho_dt, Axis::X, DiffKind::Forward))
                          + inner_product(diff(state.rho, Axis::Y, DiffKind::Forward),
                                          diff(rhs.drho_dt, Axis::Y, DiffKind::Forward)));

    double grad_u_sq = 0.0;
    for (const GridField* comp : {&u, &v}) {
        GridField gx = diff(*comp, Axis::X, DiffKind::Forward);
        GridField gy = diff(*comp, Axis::Y, DiffKind::Forward);
        grad_u_sq += inner_product(gx, gx) + inner_product(gy, gy);
    }
    GridField ld = laplacian(state.rho);
    const double bound = -params.mu * grad_u_sq
                         - params.kappa * lam * mesh.h * inner_product(ld, ld);
    return {rate, bound};
}

double relative_energy(const State& state, const SmoothReference& ref,
                       const FluidParams& params, double t) {
    const Mesh& mesh = state.mesh();
    auto [u, v] = velocity(state); // checks positivity

    GridField cxr = diff(state.rho, Axis::X, DiffKind::Central);
    GridField cyr = diff(state.rho, Axis::Y, DiffKind::Central);

    GridField density(mesh);
    for (int j = 0; j < mesh.n; ++j) {
        const double y = j * mesh.hy;
        for (int i = 0; i < mesh.m; ++i) {
            const double x = i * mesh.hx;

            const double rho = state.rho(i, j);
            const double uu = u(i, j), vv = v(i, j);
            const double grad2 = cxr(i, j) * cxr(i, j) + cyr(i, j) * cyr(i, j);

            const double rr = ref.rho(t, x, y);
            auto [ru, rv] = ref.u(t, x, y);
            auto [rgx, rgy] = ref.rho_grad(t, x, y);
            const double rlap = ref.rho_lap(t, x, y);

            const double own = potential(rho, params) + 0.5 * rho * (uu * uu + vv * vv)
                               + 0.5 * params.kappa * grad2;
            const double refpart = potential(rr, params) + 0.5 * rr * (ru * ru + rv * rv)
                                   + 0.5 * params.kappa * (rgx * rgx + rgy * rgy);
            const double linear = (params.a * params.gamma / (params.gamma - 1.0)
                                       * std::pow(rr, params.gamma - 1.0)
                                   - 0.5 * (ru * ru + rv * rv) - params.kappa * rlap)
                                  * (rho - rr);
            const double momentum = ru * (rho * uu - rr * ru) + rv * (rho * vv - rr * rv);

            density(i, j) = own - refpart - linear - momentum;
        }
    }
    return integral(density);
}

LemmaBounds lemma_observables(const State& state, const FluidParams& params) {
    const Mesh& mesh = state.mesh();
    auto [u, v] = velocity(state);

    LemmaBounds obs;
    obs.u_l2_sq = inner_product(u, u) + inner_product(v, v);

    GridField rho_gamma(mesh);
    for (int j = 0; j < mesh.n; ++j)
        for (int i = 0; i < mesh.m; ++i)
            rho_gamma(i, j) = std::pow(state.rho(i, j), params.gamma);
    obs.rho_gamma_integral = integral(rho_gamma);

    GridField gx = diff(state.rho, Axis::X, DiffKind::Forward);
    GridField gy = diff(state.rho, Axis::Y, DiffKind::Forward);
    obs.grad_rho_l2_sq = inner_product(gx, gx) + inner_product(gy, gy);
    return obs;
}

DiagnosticsRow compute_diagnostics(const State& state, const FluidParams& params, double t) {
    DiagnosticsRow row;
    row.t = t;
    std::tie(row.mass, row.mom_x, row.mom_y) = totals(state);
    row.energy = discrete_total_energy(state, params);
    row.lambda = lambda_max(state, params);
    SchemeRhs rhs = rhs_full_frozen(state, params, row.lambda);
    std::tie(row.dE_dt, row.dissipation_bound) = energy_rate_and_bound(state, rhs, params, row.lambda);
    row.min_density = state.rho.min_value();

    auto [u, v] = velocity(state);
    row.u_l2 = std::sqrt(inner_product(u, u) + inner_product(v, v));
    GridField cx = diff(state.rho, Axis::X, DiffKind::Central);
    GridField cy = diff(state.rho, Axis::Y, DiffKind::Central);
    row.grad_rho_l2 = std::sqrt(inner_product(cx, cx) + inner_product(cy, cy));
    return row;
}

} // namespace nskfv

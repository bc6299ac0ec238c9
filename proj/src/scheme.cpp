#include "nskfv/scheme.hpp"

#include <cmath>
#include <sstream>

namespace nskfv {

namespace {

void check_positivity(const State& state, const FluidParams& params, const char* who) {
    const Mesh& mesh = state.mesh();
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            const double rho = state.rho(i, j);
            if (!(rho > params.rho_floor)) {
                std::ostringstream os;
                os << who << ": density " << rho << " at cell (" << i << "," << j
                   << ") is at or below the positivity floor " << params.rho_floor;
                throw PositivityError(os.str());
            }
        }
    }
}

GridField multiply(const GridField& a, const GridField& b) {
    GridField out(a.mesh());
    const size_t sz = a.size();
    for (size_t k = 0; k < sz; ++k) out.data()[k] = a.data()[k] * b.data()[k];
    return out;
}

GridField average_pair(const GridField& a, const GridField& b) {
    GridField out(a.mesh());
    const size_t sz = a.size();
    for (size_t k = 0; k < sz; ++k) out.data()[k] = 0.5 * (a.data()[k] + b.data()[k]);
    return out;
}

/// One axis of the Korteweg bracket; `a` is the momentum axis, `b` the other.
GridField capillary_axis(const GridField& rho, Axis a, Axis b, double kappa) {
    GridField ld = laplacian(rho);
    GridField rho_s = shift(rho, a, 1);

    // Db_a( (rho * Ld rho(+a) + rho(+a) * Ld rho)/2 )
    GridField t1 = diff(average_pair(multiply(rho, shift(ld, a, 1)), multiply(rho_s, ld)),
                        a, DiffKind::Backward);

    // -1/2 Db_a( (Df_a rho)^2 )
    GridField fa = diff(rho, a, DiffKind::Forward);
    GridField t2 = diff(multiply(fa, fa), a, DiffKind::Backward);

    // +1/2 Db_a( Db_b rho(+a) * Db_b rho )
    GridField bb = diff(rho, b, DiffKind::Backward);
    GridField t3 = diff(multiply(shift(bb, a, 1), bb), a, DiffKind::Backward);

    // -Db_b( Dc_a rho * Df_b rho )
    GridField t4 = diff(multiply(diff(rho, a, DiffKind::Central), diff(rho, b, DiffKind::Forward)),
                        b, DiffKind::Backward);

    GridField out(rho.mesh());
    const size_t sz = out.size();
    for (size_t k = 0; k < sz; ++k)
        out.data()[k] = kappa * (t1.data()[k] - 0.5 * t2.data()[k] + 0.5 * t3.data()[k] - t4.data()[k]);
    return out;
}

} // namespace

double lambda_max(const State& state, const FluidParams& params) {
    check_positivity(state, params, "lambda_max");
    const Mesh& mesh = state.mesh();
    double speed = 0.0;
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            const double rho = state.rho(i, j);
            const double u = state.mx(i, j) / rho;
            const double v = state.my(i, j) / rho;
            const double s = std::sqrt(u * u + v * v) + std::sqrt(pressure_derivative(rho, params));
            speed = std::max(speed, s);
        }
    }
    return std::max(0.5 * speed, params.delta);
}

GridField rhs_continuity(const State& state, const FluidParams& params, double lam) {
    const Mesh& mesh = state.mesh();
    GridField conv_x = diff(state.mx, Axis::X, DiffKind::Central);
    GridField conv_y = diff(state.my, Axis::Y, DiffKind::Central);
    GridField ld = laplacian(state.rho);

    const double hl = mesh.h * lam;
    GridField out(mesh);
    const size_t sz = out.size();
    for (size_t k = 0; k < sz; ++k)
        out.data()[k] = -(conv_x.data()[k] + conv_y.data()[k]) + hl * ld.data()[k];
    (void)params;
    return out;
}

std::pair<GridField, GridField> capillary_force(const GridField& rho, const FluidParams& params) {
    return {capillary_axis(rho, Axis::X, Axis::Y, params.kappa),
            capillary_axis(rho, Axis::Y, Axis::X, params.kappa)};
}

SchemeRhs rhs_full_frozen(const State& state, const FluidParams& params, double lam) {
    check_positivity(state, params, "rhs_full");
    const Mesh& mesh = state.mesh();
    auto [u, v] = velocity(state);

    GridField p(mesh);
    for (int j = 0; j < mesh.n; ++j)
        for (int i = 0; i < mesh.m; ++i) p(i, j) = pressure(state.rho(i, j), params);

    SchemeRhs rhs;
    rhs.drho_dt = rhs_continuity(state, params, lam);

    auto [kx, ky] = capillary_force(state.rho, params);

    const double hl = mesh.h * lam;
    const size_t sz = state.rho.size();

    // x-momentum: -[Dc_x(rho u^2) + Dc_y(rho u v) + Dc_x p] + mu Ld u + h lam Ld(mx) + K_x
    {
        GridField cx = diff(multiply(state.mx, u), Axis::X, DiffKind::Central);
        GridField cy = diff(multiply(state.mx, v), Axis::Y, DiffKind::Central);
        GridField px = diff(p, Axis::X, DiffKind::Central);
        GridField ldm = laplacian(state.mx);
        rhs.dmx_dt = GridField(mesh);
        if (params.mu > 0.0) {
            GridField ldu = laplacian(u);
            for (size_t k = 0; k < sz; ++k)
                rhs.dmx_dt.data()[k] = -(cx.data()[k] + cy.data()[k] + px.data()[k])
                                       + params.mu * ldu.data()[k] + hl * ldm.data()[k] + kx.data()[k];
        } else {
            for (size_t k = 0; k < sz; ++k)
                rhs.dmx_dt.data()[k] = -(cx.data()[k] + cy.data()[k] + px.data()[k])
                                       + hl * ldm.data()[k] + kx.data()[k];
        }
    }

    // y-momentum: -[Dc_y(rho v^2) + Dc_x(rho u v) + Dc_y p] + mu Ld v + h lam Ld(my) + K_y
    {
        GridField cy = diff(multiply(state.my, v), Axis::Y, DiffKind::Central);
        GridField cx = diff(multiply(state.my, u), Axis::X, DiffKind::Central);
        GridField py = diff(p, Axis::Y, DiffKind::Central);
        GridField ldm = laplacian(state.my);
        rhs.dmy_dt = GridField(mesh);
        if (params.mu > 0.0) {
            GridField ldv = laplacian(v);
            for (size_t k = 0; k < sz; ++k)
                rhs.dmy_dt.data()[k] = -(cy.data()[k] + cx.data()[k] + py.data()[k])
                                       + params.mu * ldv.data()[k] + hl * ldm.data()[k] + ky.data()[k];
        } else {
            for (size_t k = 0; k < sz; ++k)
                rhs.dmy_dt.data()[k] = -(cy.data()[k] + cx.data()[k] + py.data()[k])
                                       + hl * ldm.data()[k] + ky.data()[k];
        }
    }

    if (!rhs.drho_dt.all_finite() || !rhs.dmx_dt.all_finite() || !rhs.dmy_dt.all_finite())
        throw ValidationError("rhs_full: non-finite value in the assembled right-hand side");
    return rhs;
}

SchemeRhs rhs_full(const State& state, const FluidParams& params) {
    return rhs_full_frozen(state, params, lambda_max(state, params));
}

} // namespace nskfv

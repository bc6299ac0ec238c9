#include "nskfv/oracles.hpp"

#include <cmath>

namespace nskfv {
namespace oracles {

namespace {

void check_size(const Mesh& mesh) {
    if (mesh.m > 32 || mesh.n > 32)
        throw ValidationError("oracle: mesh too large (oracles are O(naive), cap is 32 per axis)");
}

// Explicit periodic cell access.
double at(const GridField& f, int i, int j) {
    const int m = f.m(), n = f.n();
    int iw = i % m;
    if (iw < 0) iw += m;
    int jw = j % n;
    if (jw < 0) jw += n;
    return f(iw, jw);
}

double lap(const GridField& f, int i, int j, double hx, double hy) {
    return (at(f, i + 1, j) - 2.0 * at(f, i, j) + at(f, i - 1, j)) / (hx * hx)
         + (at(f, i, j + 1) - 2.0 * at(f, i, j) + at(f, i, j - 1)) / (hy * hy);
}

} // namespace

GridField oracle_diff(const GridField& f, Axis axis, DiffKind kind) {
    check_size(f.mesh());
    const Mesh& mesh = f.mesh();
    GridField g(mesh);
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            double val = 0.0;
            if (axis == Axis::X) {
                if (kind == DiffKind::Forward) val = (at(f, i + 1, j) - at(f, i, j)) / mesh.hx;
                if (kind == DiffKind::Backward) val = (at(f, i, j) - at(f, i - 1, j)) / mesh.hx;
                if (kind == DiffKind::Central) val = (at(f, i + 1, j) - at(f, i - 1, j)) / (2.0 * mesh.hx);
            } else {
                if (kind == DiffKind::Forward) val = (at(f, i, j + 1) - at(f, i, j)) / mesh.hy;
                if (kind == DiffKind::Backward) val = (at(f, i, j) - at(f, i, j - 1)) / mesh.hy;
                if (kind == DiffKind::Central) val = (at(f, i, j + 1) - at(f, i, j - 1)) / (2.0 * mesh.hy);
            }
            g(i, j) = val;
        }
    }
    return g;
}

GridField oracle_laplacian(const GridField& f) {
    check_size(f.mesh());
    const Mesh& mesh = f.mesh();
    GridField g(mesh);
    for (int j = 0; j < mesh.n; ++j)
        for (int i = 0; i < mesh.m; ++i) g(i, j) = lap(f, i, j, mesh.hx, mesh.hy);
    return g;
}

double oracle_integral(const GridField& f) {
    check_size(f.mesh());
    double s = 0.0;
    for (int j = 0; j < f.n(); ++j)
        for (int i = 0; i < f.m(); ++i) s += f(i, j);
    return s / (static_cast<double>(f.m()) * f.n());
}

double oracle_energy(const State& state, const FluidParams& params) {
    check_size(state.mesh());
    const Mesh& mesh = state.mesh();
    double s = 0.0;
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            const double rho = at(state.rho, i, j);
            const double u = at(state.mx, i, j) / rho;
            const double v = at(state.my, i, j) / rho;
            const double dxp = (at(state.rho, i + 1, j) - rho) / mesh.hx;
            const double dyp = (at(state.rho, i, j + 1) - rho) / mesh.hy;
            s += 0.5 * rho * (u * u + v * v)
               + params.a * std::pow(rho, params.gamma) / (params.gamma - 1.0)
               + 0.5 * params.kappa * (dxp * dxp + dyp * dyp);
        }
    }
    return s / (static_cast<double>(mesh.m) * mesh.n);
}

double oracle_lambda(const State& state, const FluidParams& params) {
    check_size(state.mesh());
    double best = 0.0;
    for (int j = 0; j < state.rho.n(); ++j) {
        for (int i = 0; i < state.rho.m(); ++i) {
            const double rho = at(state.rho, i, j);
            const double u = at(state.mx, i, j) / rho;
            const double v = at(state.my, i, j) / rho;
            const double s = std::sqrt(u * u + v * v)
                           + std::sqrt(params.a * params.gamma * std::pow(rho, params.gamma - 1.0));
            if (s > best) best = s;
        }
    }
    return std::max(0.5 * best, params.delta);
}

GridField oracle_rhs_continuity(const State& state, const FluidParams& params, double lam) {
    check_size(state.mesh());
    (void)params;
    const Mesh& mesh = state.mesh();
    GridField g(mesh);
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            const double conv = (at(state.mx, i + 1, j) - at(state.mx, i - 1, j)) / (2.0 * mesh.hx)
                              + (at(state.my, i, j + 1) - at(state.my, i, j - 1)) / (2.0 * mesh.hy);
            g(i, j) = -conv + mesh.h * lam * lap(state.rho, i, j, mesh.hx, mesh.hy);
        }
    }
    return g;
}

std::pair<GridField, GridField> oracle_capillary(const GridField& rho, const FluidParams& params) {
    check_size(rho.mesh());
    const Mesh& mesh = rho.mesh();
    const double hx = mesh.hx, hy = mesh.hy;

    // Cell values of the four bracket arguments, then one backward difference
    // per term, written out longhand for the x and y brackets separately.
    auto w1x = [&](int i, int j) {
        return 0.5 * (at(rho, i, j) * lap(rho, i + 1, j, hx, hy)
                      + at(rho, i + 1, j) * lap(rho, i, j, hx, hy));
    };
    auto w2x = [&](int i, int j) {
        const double d = (at(rho, i + 1, j) - at(rho, i, j)) / hx;
        return d * d;
    };
    auto w3x = [&](int i, int j) {
        const double a = (at(rho, i + 1, j) - at(rho, i + 1, j - 1)) / hy;
        const double b = (at(rho, i, j) - at(rho, i, j - 1)) / hy;
        return a * b;
    };
    auto w4x = [&](int i, int j) {
        const double c = (at(rho, i + 1, j) - at(rho, i - 1, j)) / (2.0 * hx);
        const double d = (at(rho, i, j + 1) - at(rho, i, j)) / hy;
        return c * d;
    };

    auto w1y = [&](int i, int j) {
        return 0.5 * (at(rho, i, j) * lap(rho, i, j + 1, hx, hy)
                      + at(rho, i, j + 1) * lap(rho, i, j, hx, hy));
    };
    auto w2y = [&](int i, int j) {
        const double d = (at(rho, i, j + 1) - at(rho, i, j)) / hy;
        return d * d;
    };
    auto w3y = [&](int i, int j) {
        const double a = (at(rho, i, j + 1) - at(rho, i - 1, j + 1)) / hx;
        const double b = (at(rho, i, j) - at(rho, i - 1, j)) / hx;
        return a * b;
    };
    auto w4y = [&](int i, int j) {
        const double c = (at(rho, i, j + 1) - at(rho, i, j - 1)) / (2.0 * hy);
        const double d = (at(rho, i + 1, j) - at(rho, i, j)) / hx;
        return c * d;
    };

    GridField kx(mesh), ky(mesh);
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            kx(i, j) = params.kappa * ((w1x(i, j) - w1x(i - 1, j)) / hx
                                       - 0.5 * (w2x(i, j) - w2x(i - 1, j)) / hx
                                       + 0.5 * (w3x(i, j) - w3x(i - 1, j)) / hx
                                       - (w4x(i, j) - w4x(i, j - 1)) / hy);
            ky(i, j) = params.kappa * ((w1y(i, j) - w1y(i, j - 1)) / hy
                                       - 0.5 * (w2y(i, j) - w2y(i, j - 1)) / hy
                                       + 0.5 * (w3y(i, j) - w3y(i, j - 1)) / hy
                                       - (w4y(i, j) - w4y(i - 1, j)) / hx);
        }
    }
    return {std::move(kx), std::move(ky)};
}

SchemeRhs oracle_rhs(const State& state, const FluidParams& params) {
    check_size(state.mesh());
    const Mesh& mesh = state.mesh();
    const double hx = mesh.hx, hy = mesh.hy;
    const double lam = oracle_lambda(state, params);

    auto u_at = [&](int i, int j) { return at(state.mx, i, j) / at(state.rho, i, j); };
    auto v_at = [&](int i, int j) { return at(state.my, i, j) / at(state.rho, i, j); };
    auto p_at = [&](int i, int j) { return params.a * std::pow(at(state.rho, i, j), params.gamma); };
    auto ruu = [&](int i, int j) { return at(state.mx, i, j) * u_at(i, j); };
    auto ruv_x = [&](int i, int j) { return at(state.mx, i, j) * v_at(i, j); };
    auto ruv_y = [&](int i, int j) { return at(state.my, i, j) * u_at(i, j); };
    auto rvv = [&](int i, int j) { return at(state.my, i, j) * v_at(i, j); };

    auto [kx, ky] = oracle_capillary(state.rho, params);

    SchemeRhs rhs;
    rhs.drho_dt = oracle_rhs_continuity(state, params, lam);
    rhs.dmx_dt = GridField(mesh);
    rhs.dmy_dt = GridField(mesh);

    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            const double conv_x = (ruu(i + 1, j) - ruu(i - 1, j)) / (2.0 * hx)
                                + (ruv_x(i, j + 1) - ruv_x(i, j - 1)) / (2.0 * hy)
                                + (p_at(i + 1, j) - p_at(i - 1, j)) / (2.0 * hx);
            double lap_u = (u_at(i + 1, j) - 2.0 * u_at(i, j) + u_at(i - 1, j)) / (hx * hx)
                         + (u_at(i, j + 1) - 2.0 * u_at(i, j) + u_at(i, j - 1)) / (hy * hy);
            const double lap_mx = lap(state.mx, i, j, hx, hy);
            rhs.dmx_dt(i, j) = -conv_x + params.mu * lap_u + mesh.h * lam * lap_mx + kx(i, j);

            const double conv_y = (rvv(i, j + 1) - rvv(i, j - 1)) / (2.0 * hy)
                                + (ruv_y(i + 1, j) - ruv_y(i - 1, j)) / (2.0 * hx)
                                + (p_at(i, j + 1) - p_at(i, j - 1)) / (2.0 * hy);
            double lap_v = (v_at(i + 1, j) - 2.0 * v_at(i, j) + v_at(i - 1, j)) / (hx * hx)
                         + (v_at(i, j + 1) - 2.0 * v_at(i, j) + v_at(i, j - 1)) / (hy * hy);
            const double lap_my = lap(state.my, i, j, hx, hy);
            rhs.dmy_dt(i, j) = -conv_y + params.mu * lap_v + mesh.h * lam * lap_my + ky(i, j);
        }
    }
    return rhs;
}

double oracle_relative_energy(const State& state, const SmoothReference& ref,
                              const FluidParams& params, double t) {
    check_size(state.mesh());
    const Mesh& mesh = state.mesh();
    double s = 0.0;
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            const double x = i * mesh.hx, y = j * mesh.hy;
            const double rho = at(state.rho, i, j);
            const double u = at(state.mx, i, j) / rho;
            const double v = at(state.my, i, j) / rho;
            const double gx = (at(state.rho, i + 1, j) - at(state.rho, i - 1, j)) / (2.0 * mesh.hx);
            const double gy = (at(state.rho, i, j + 1) - at(state.rho, i, j - 1)) / (2.0 * mesh.hy);

            const double rr = ref.rho(t, x, y);
            auto [ru, rv] = ref.u(t, x, y);
            auto [rgx, rgy] = ref.rho_grad(t, x, y);
            const double rlap = ref.rho_lap(t, x, y);

            auto pot = [&](double r) { return params.a * std::pow(r, params.gamma) / (params.gamma - 1.0); };
            auto dpot = [&](double r) {
                return params.a * params.gamma * std::pow(r, params.gamma - 1.0) / (params.gamma - 1.0);
            };

            s += pot(rho) + 0.5 * rho * (u * u + v * v) + 0.5 * params.kappa * (gx * gx + gy * gy);
            s -= pot(rr) + 0.5 * rr * (ru * ru + rv * rv) + 0.5 * params.kappa * (rgx * rgx + rgy * rgy);
            s -= (dpot(rr) - 0.5 * (ru * ru + rv * rv) - params.kappa * rlap) * (rho - rr);
            s -= ru * (rho * u - rr * ru) + rv * (rho * v - rr * rv);
        }
    }
    return s / (static_cast<double>(mesh.m) * mesh.n);
}

double oracle_s_terms(const GridField& rho, const GridField& phi_x, const GridField& phi_y,
                      const FluidParams& params) {
    check_size(rho.mesh());
    const Mesh& mesh = rho.mesh();
    const double hx = mesh.hx, hy = mesh.hy;

    auto bx = [&](const GridField& f, int i, int j) { return (at(f, i, j) - at(f, i - 1, j)) / hx; };
    auto by = [&](const GridField& f, int i, int j) { return (at(f, i, j) - at(f, i, j - 1)) / hy; };
    auto fx = [&](const GridField& f, int i, int j) { return (at(f, i + 1, j) - at(f, i, j)) / hx; };
    auto fy = [&](const GridField& f, int i, int j) { return (at(f, i, j + 1) - at(f, i, j)) / hy; };
    auto cx = [&](const GridField& f, int i, int j) { return (at(f, i + 1, j) - at(f, i - 1, j)) / (2.0 * hx); };
    auto cy = [&](const GridField& f, int i, int j) { return (at(f, i, j + 1) - at(f, i, j - 1)) / (2.0 * hy); };
    // mixed second differences of the test function components
    auto by_fx_phix = [&](int i, int j) { return (fx(phi_x, i, j) - fx(phi_x, i, j - 1)) / hy; };
    auto bx_fy_phiy = [&](int i, int j) { return (fy(phi_y, i, j) - fy(phi_y, i - 1, j)) / hx; };
    auto bx_fx_phix = [&](int i, int j) { return (fx(phi_x, i, j) - fx(phi_x, i - 1, j)) / hx; };
    auto by_fy_phiy = [&](int i, int j) { return (fy(phi_y, i, j) - fy(phi_y, i, j - 1)) / hy; };

    double s = 0.0;
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            const double s1 = 0.5 * (at(rho, i, j) * by(rho, i + 1, j) + at(rho, i + 1, j) * by(rho, i, j))
                                  * by_fx_phix(i, j)
                            + 0.5 * (at(rho, i, j) * bx(rho, i, j + 1) + at(rho, i, j + 1) * bx(rho, i, j))
                                  * bx_fy_phiy(i, j)
                            + at(rho, i, j) * cx(rho, i, j) * bx_fx_phix(i, j)
                            + at(rho, i, j) * cy(rho, i, j) * by_fy_phiy(i, j);

            const double s2 = 0.5 * fx(rho, i, j) * fx(rho, i, j) * fx(phi_x, i, j)
                            + 0.5 * fy(rho, i, j) * fy(rho, i, j) * fy(phi_y, i, j)
                            - 0.5 * by(rho, i, j) * by(rho, i + 1, j) * fx(phi_x, i, j)
                            - 0.5 * bx(rho, i, j) * bx(rho, i, j + 1) * fy(phi_y, i, j)
                            + by(rho, i, j) * by(rho, i + 1, j) * fx(phi_x, i, j - 1)
                            + bx(rho, i, j) * bx(rho, i, j + 1) * fy(phi_y, i - 1, j);

            const double s3 = fx(rho, i, j) * bx(rho, i, j) * cx(phi_x, i, j)
                            + fy(rho, i, j) * by(rho, i, j) * cy(phi_y, i, j)
                            + cx(rho, i, j) * fy(rho, i, j) * fy(phi_x, i, j)
                            + cy(rho, i, j) * fx(rho, i, j) * fx(phi_y, i, j);

            s += s1 + s2 + s3;
        }
    }
    return params.kappa * s / (static_cast<double>(mesh.m) * mesh.n);
}

} // namespace oracles
} // namespace nskfv

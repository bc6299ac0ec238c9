#include "nskfv/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nskfv {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

double mode_val(Phase p, int k, double s) {
    const double w = two_pi * k;
    return p == Phase::Sin ? std::sin(w * s) : std::cos(w * s);
}
double mode_der(Phase p, int k, double s) {
    const double w = two_pi * k;
    return p == Phase::Sin ? w * std::cos(w * s) : -w * std::sin(w * s);
}
double mode_der2(Phase p, int k, double s) {
    const double w = two_pi * k;
    return -w * w * mode_val(p, k, s);
}
} // namespace

double TestFunction::theta(double t) const {
    const double s = std::sin(std::numbers::pi * t / period);
    return s * s;
}
double TestFunction::dtheta(double t) const {
    return std::numbers::pi / period * std::sin(two_pi * t / period);
}
double TestFunction::theta_antiderivative(double t) const {
    return 0.5 * t - period / (2.0 * two_pi) * std::sin(two_pi * t / period);
}
double TestFunction::shape(double x, double y) const {
    return mode_val(phase_x, kx, x) * mode_val(phase_y, ky, y);
}
double TestFunction::shape_dx(double x, double y) const {
    return mode_der(phase_x, kx, x) * mode_val(phase_y, ky, y);
}
double TestFunction::shape_dy(double x, double y) const {
    return mode_val(phase_x, kx, x) * mode_der(phase_y, ky, y);
}
double TestFunction::shape_dxx(double x, double y) const {
    return mode_der2(phase_x, kx, x) * mode_val(phase_y, ky, y);
}
double TestFunction::shape_dxy(double x, double y) const {
    return mode_der(phase_x, kx, x) * mode_der(phase_y, ky, y);
}
double TestFunction::shape_dyy(double x, double y) const {
    return mode_val(phase_x, kx, x) * mode_der2(phase_y, ky, y);
}

std::vector<TestFunction> scalar_battery(int kmax, double period) {
    std::vector<TestFunction> out;
    for (int kx = 0; kx <= kmax; ++kx) {
        for (Phase px : {Phase::Sin, Phase::Cos}) {
            if (kx == 0 && px == Phase::Sin) continue; // identically zero factor
            for (int ky = 0; ky <= kmax; ++ky) {
                for (Phase py : {Phase::Sin, Phase::Cos}) {
                    if (ky == 0 && py == Phase::Sin) continue;
                    TestFunction tf;
                    tf.kx = kx;
                    tf.ky = ky;
                    tf.phase_x = px;
                    tf.phase_y = py;
                    tf.period = period;
                    out.push_back(tf);
                }
            }
        }
    }
    return out;
}

namespace {

struct SampledShape {
    GridField s, sx, sy, sxx, sxy, syy;
};

SampledShape sample_shape(const TestFunction& tf, const Mesh& mesh) {
    SampledShape out{GridField(mesh), GridField(mesh), GridField(mesh),
                     GridField(mesh), GridField(mesh), GridField(mesh)};
    for (int j = 0; j < mesh.n; ++j) {
        const double y = j * mesh.hy;
        for (int i = 0; i < mesh.m; ++i) {
            const double x = i * mesh.hx;
            out.s(i, j) = tf.shape(x, y);
            out.sx(i, j) = tf.shape_dx(x, y);
            out.sy(i, j) = tf.shape_dy(x, y);
            out.sxx(i, j) = tf.shape_dxx(x, y);
            out.sxy(i, j) = tf.shape_dxy(x, y);
            out.syy(i, j) = tf.shape_dyy(x, y);
        }
    }
    return out;
}

/// Per-record fields shared by every battery entry.
struct RecordFields {
    GridField rho, mx, my;
    GridField flux_xx, flux_xy, flux_yy; // rho u^2 + p, rho u v, rho v^2 + p
    GridField cx_u, cy_u, cx_v, cy_v;    // central velocity differences
    GridField cxr, cyr;                  // central density gradient
    GridField t11, t12, t22;             // Dc rho tensor + half-trace terms
    GridField rho_cxr, rho_cyr;
};

RecordFields make_record_fields(const State& state, const FluidParams& params) {
    const Mesh& mesh = state.mesh();
    RecordFields f;
    f.rho = state.rho;
    f.mx = state.mx;
    f.my = state.my;
    f.flux_xx = GridField(mesh);
    f.flux_xy = GridField(mesh);
    f.flux_yy = GridField(mesh);
    f.t11 = GridField(mesh);
    f.t12 = GridField(mesh);
    f.t22 = GridField(mesh);
    f.rho_cxr = GridField(mesh);
    f.rho_cyr = GridField(mesh);
    auto [u, v] = velocity(state);
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            const double p = pressure(state.rho(i, j), params);
            f.flux_xx(i, j) = state.mx(i, j) * u(i, j) + p;
            f.flux_xy(i, j) = state.mx(i, j) * v(i, j);
            f.flux_yy(i, j) = state.my(i, j) * v(i, j) + p;
        }
    }
    f.cx_u = diff(u, Axis::X, DiffKind::Central);
    f.cy_u = diff(u, Axis::Y, DiffKind::Central);
    f.cx_v = diff(v, Axis::X, DiffKind::Central);
    f.cy_v = diff(v, Axis::Y, DiffKind::Central);
    f.cxr = diff(state.rho, Axis::X, DiffKind::Central);
    f.cyr = diff(state.rho, Axis::Y, DiffKind::Central);
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            const double gx = f.cxr(i, j), gy = f.cyr(i, j);
            const double half_tr = 0.5 * (gx * gx + gy * gy);
            f.t11(i, j) = gx * gx + half_tr;
            f.t12(i, j) = gx * gy;
            f.t22(i, j) = gy * gy + half_tr;
            f.rho_cxr(i, j) = state.rho(i, j) * gx;
            f.rho_cyr(i, j) = state.rho(i, j) * gy;
        }
    }
    return f;
}

/// Spatial pairings with one test-function shape, ready to be combined with
/// the envelope factors.
struct MassIntegrals {
    double j_rho = 0.0;  // int rho * S
    double j_conv = 0.0; // int (mx Sx + my Sy)
};
struct MomIntegrals {
    double j_m = 0.0;    // int m_c * S
    double j_rest = 0.0; // convective + pressure - mu viscous + kappa capillary terms
};

MassIntegrals mass_integrals(const RecordFields& f, const SampledShape& sh) {
    MassIntegrals mi;
    mi.j_rho = inner_product(f.rho, sh.s);
    mi.j_conv = inner_product(f.mx, sh.sx) + inner_product(f.my, sh.sy);
    return mi;
}

MomIntegrals momentum_integrals(const RecordFields& f, const SampledShape& sh, int component,
                                const FluidParams& params) {
    MomIntegrals mi;
    if (component == 0) {
        mi.j_m = inner_product(f.mx, sh.s);
        const double conv = inner_product(f.flux_xx, sh.sx) + inner_product(f.flux_xy, sh.sy);
        const double visc = inner_product(f.cx_u, sh.sx) + inner_product(f.cy_u, sh.sy);
        const double cap = inner_product(f.t11, sh.sx) + inner_product(f.t12, sh.sy);
        const double gdiv = inner_product(f.rho_cxr, sh.sxx) + inner_product(f.rho_cyr, sh.sxy);
        mi.j_rest = conv - params.mu * visc + params.kappa * (cap + gdiv);
    } else {
        mi.j_m = inner_product(f.my, sh.s);
        const double conv = inner_product(f.flux_xy, sh.sx) + inner_product(f.flux_yy, sh.sy);
        const double visc = inner_product(f.cx_v, sh.sx) + inner_product(f.cy_v, sh.sy);
        const double cap = inner_product(f.t12, sh.sx) + inner_product(f.t22, sh.sy);
        const double gdiv = inner_product(f.rho_cxr, sh.sxy) + inner_product(f.rho_cyr, sh.syy);
        mi.j_rest = conv - params.mu * visc + params.kappa * (cap + gdiv);
    }
    return mi;
}

void check_density(const Trajectory& traj) {
    if (traj.times.size() < 2)
        throw ValidationError("weak residual: trajectory needs at least two records");
}

void check_sparsity(const Trajectory& traj, double threshold) {
    for (size_t k = 0; k + 1 < traj.states.size(); ++k) {
        GridField d(traj.states[k].rho.mesh());
        const size_t sz = d.size();
        for (size_t q = 0; q < sz; ++q)
            d.data()[q] = std::abs(traj.states[k + 1].rho.data()[q] - traj.states[k].rho.data()[q]);
        const double l1 = integral(d);
        if (l1 > threshold) {
            std::ostringstream os;
            os << "weak residual: trajectory too sparse, records " << k << " and " << k + 1
               << " differ by " << l1 << " in L1 (threshold " << threshold << ")";
            throw ValidationError(os.str());
        }
    }
}

/// Time integral over one slice of theta'(t) J(t) + theta(t) Jr(t): the
/// envelope is integrated analytically against linear interpolation of the
/// measured spatial integrals J, Jr between records. Exact when J and Jr are
/// constant in time, so steady trajectories produce exactly zero residual.
double slice_quadrature(const TestFunction& tf, double t0, double t1,
                        double j0, double j1, double jr0, double jr1) {
    const double dt = t1 - t0;
    const double th0 = tf.theta(t0), th1 = tf.theta(t1);
    const double theta_int = tf.theta_antiderivative(t1) - tf.theta_antiderivative(t0);
    const double omega = two_pi / tf.period;
    // integral of theta(t) * (t - t0) over the slice
    const double theta_t_int = 0.25 * dt * dt
                               - 0.5 * (dt * std::sin(omega * t1) / omega
                                        + (std::cos(omega * t1) - std::cos(omega * t0))
                                              / (omega * omega));
    return j0 * (th1 - th0) + (j1 - j0) * (th1 - theta_int / dt)
         + jr0 * theta_int + (jr1 - jr0) * theta_t_int / dt;
}

/// Residual statistics for one test function from precomputed per-record
/// integrals.
struct ResidualStats {
    double total = 0.0;  // | full time integral + initial pairing |
    double sliced = 0.0; // sum over slices of |exact increment - quadrature|
};

ResidualStats combine(const TestFunction& tf, const std::vector<double>& times,
                      const std::vector<double>& j_lin, const std::vector<double>& j_rest,
                      size_t stride) {
    std::vector<size_t> idx;
    for (size_t k = 0; k < times.size(); k += stride) idx.push_back(k);
    if (idx.back() != times.size() - 1) idx.push_back(times.size() - 1);

    KahanSum total;
    double sliced = 0.0;
    for (size_t q = 0; q + 1 < idx.size(); ++q) {
        const size_t k0 = idx[q], k1 = idx[q + 1];
        const double quad = slice_quadrature(tf, times[k0], times[k1], j_lin[k0], j_lin[k1],
                                             j_rest[k0], j_rest[k1]);
        total.add(quad);
        sliced += std::abs(tf.theta(times[k1]) * j_lin[k1] - tf.theta(times[k0]) * j_lin[k0] - quad);
    }
    ResidualStats st;
    st.total = std::abs(total.value() + tf.theta(times.front()) * j_lin.front());
    st.sliced = sliced;
    return st;
}

} // namespace

double weak_residual_mass(const Trajectory& traj, const TestFunction& phi, double sparse_threshold) {
    check_density(traj);
    check_sparsity(traj, sparse_threshold);
    const size_t nrec = traj.times.size();
    std::vector<double> j_lin(nrec), j_rest(nrec);
    SampledShape sh = sample_shape(phi, traj.states.front().mesh());
    FluidParams dummy; // mass residual needs no constitutive data
    for (size_t k = 0; k < nrec; ++k) {
        RecordFields f = make_record_fields(traj.states[k], dummy);
        MassIntegrals mi = mass_integrals(f, sh);
        j_lin[k] = mi.j_rho;
        j_rest[k] = mi.j_conv;
    }
    KahanSum total;
    for (size_t k = 0; k + 1 < nrec; ++k)
        total.add(slice_quadrature(phi, traj.times[k], traj.times[k + 1], j_lin[k], j_lin[k + 1],
                                   j_rest[k], j_rest[k + 1]));
    return total.value() + phi.theta(traj.times.front()) * j_lin.front();
}

double weak_residual_momentum(const Trajectory& traj, const TestFunction& phi,
                              const FluidParams& params, double sparse_threshold) {
    check_density(traj);
    check_sparsity(traj, sparse_threshold);
    const size_t nrec = traj.times.size();
    std::vector<double> j_lin(nrec), j_rest(nrec);
    SampledShape sh = sample_shape(phi, traj.states.front().mesh());
    for (size_t k = 0; k < nrec; ++k) {
        RecordFields f = make_record_fields(traj.states[k], params);
        MomIntegrals mi = momentum_integrals(f, sh, phi.component, params);
        j_lin[k] = mi.j_m;
        j_rest[k] = mi.j_rest;
    }
    KahanSum total;
    for (size_t k = 0; k + 1 < nrec; ++k)
        total.add(slice_quadrature(phi, traj.times[k], traj.times[k + 1], j_lin[k], j_lin[k + 1],
                                   j_rest[k], j_rest[k + 1]));
    return total.value() + phi.theta(traj.times.front()) * j_lin.front();
}

BatteryResult evaluate_residual_battery(const Trajectory& traj, const FluidParams& params, int kmax) {
    check_density(traj);
    const Mesh& mesh = traj.states.front().mesh();
    const double T = traj.times.back();
    std::vector<TestFunction> modes = scalar_battery(kmax, T);
    std::vector<SampledShape> shapes;
    shapes.reserve(modes.size());
    for (const TestFunction& tf : modes) shapes.push_back(sample_shape(tf, mesh));

    const size_t nrec = traj.times.size();
    const size_t nmode = modes.size();
    std::vector<std::vector<double>> m_lin(nmode, std::vector<double>(nrec));
    std::vector<std::vector<double>> m_rest(nmode, std::vector<double>(nrec));
    std::vector<std::vector<double>> px_lin(nmode, std::vector<double>(nrec));
    std::vector<std::vector<double>> px_rest(nmode, std::vector<double>(nrec));
    std::vector<std::vector<double>> py_lin(nmode, std::vector<double>(nrec));
    std::vector<std::vector<double>> py_rest(nmode, std::vector<double>(nrec));

    for (size_t k = 0; k < nrec; ++k) {
        RecordFields f = make_record_fields(traj.states[k], params);
        for (size_t q = 0; q < nmode; ++q) {
            MassIntegrals mi = mass_integrals(f, shapes[q]);
            m_lin[q][k] = mi.j_rho;
            m_rest[q][k] = mi.j_conv;
            MomIntegrals mx = momentum_integrals(f, shapes[q], 0, params);
            px_lin[q][k] = mx.j_m;
            px_rest[q][k] = mx.j_rest;
            MomIntegrals my = momentum_integrals(f, shapes[q], 1, params);
            py_lin[q][k] = my.j_m;
            py_rest[q][k] = my.j_rest;
        }
    }

    BatteryResult out;
    for (size_t q = 0; q < nmode; ++q) {
        ResidualStats s1 = combine(modes[q], traj.times, m_lin[q], m_rest[q], 1);
        ResidualStats s1h = combine(modes[q], traj.times, m_lin[q], m_rest[q], 2);
        out.r1 = std::max(out.r1, s1.sliced);
        out.r1_total = std::max(out.r1_total, s1.total);
        out.r1_half = std::max(out.r1_half, s1h.sliced);
        for (const auto* comp : {&px_lin, &py_lin}) {
            const auto& lin = (*comp)[q];
            const auto& rest = (comp == &px_lin ? px_rest : py_rest)[q];
            ResidualStats s2 = combine(modes[q], traj.times, lin, rest, 1);
            ResidualStats s2h = combine(modes[q], traj.times, lin, rest, 2);
            out.r2 = std::max(out.r2, s2.sliced);
            out.r2_total = std::max(out.r2_total, s2.total);
            out.r2_half = std::max(out.r2_half, s2h.sliced);
        }
    }
    return out;
}

CapillaryPairing capillary_pairing(const GridField& rho, const TestFunction& phi,
                                   const FluidParams& params, double t) {
    const Mesh& mesh = rho.mesh();
    const double th = phi.theta(t);

    GridField phi_x(mesh, 0.0), phi_y(mesh, 0.0);
    {
        GridField* target = phi.component == 0 ? &phi_x : &phi_y;
        for (int j = 0; j < mesh.n; ++j)
            for (int i = 0; i < mesh.m; ++i)
                (*target)(i, j) = th * phi.shape(i * mesh.hx, j * mesh.hy);
    }

    auto mul = [](const GridField& a, const GridField& b) {
        GridField out(a.mesh());
        for (size_t k = 0; k < a.size(); ++k) out.data()[k] = a.data()[k] * b.data()[k];
        return out;
    };
    auto avg = [](const GridField& a, const GridField& b) {
        GridField out(a.mesh());
        for (size_t k = 0; k < a.size(); ++k) out.data()[k] = 0.5 * (a.data()[k] + b.data()[k]);
        return out;
    };

    GridField ld = laplacian(rho);
    GridField fxr = diff(rho, Axis::X, DiffKind::Forward);
    GridField fyr = diff(rho, Axis::Y, DiffKind::Forward);
    GridField bxr = diff(rho, Axis::X, DiffKind::Backward);
    GridField byr = diff(rho, Axis::Y, DiffKind::Backward);
    GridField cxr = diff(rho, Axis::X, DiffKind::Central);
    GridField cyr = diff(rho, Axis::Y, DiffKind::Central);

    GridField fx_phix = diff(phi_x, Axis::X, DiffKind::Forward);
    GridField fy_phix = diff(phi_x, Axis::Y, DiffKind::Forward);
    GridField fx_phiy = diff(phi_y, Axis::X, DiffKind::Forward);
    GridField fy_phiy = diff(phi_y, Axis::Y, DiffKind::Forward);

    // Original pairing: scheme bracket terms against D+ of the test function,
    // -kappa prefactor.
    GridField orig(mesh);
    {
        GridField t1x = mul(avg(mul(rho, shift(ld, Axis::X, 1)), mul(shift(rho, Axis::X, 1), ld)), fx_phix);
        GridField t1y = mul(avg(mul(rho, shift(ld, Axis::Y, 1)), mul(shift(rho, Axis::Y, 1), ld)), fy_phiy);
        GridField t2x = mul(mul(fxr, fxr), fx_phix);
        GridField t2y = mul(mul(fyr, fyr), fy_phiy);
        GridField t3x = mul(mul(byr, shift(byr, Axis::X, 1)), fx_phix);
        GridField t3y = mul(mul(bxr, shift(bxr, Axis::Y, 1)), fy_phiy);
        GridField t4x = mul(mul(cxr, fyr), fy_phix);
        GridField t4y = mul(mul(cyr, fxr), fx_phiy);
        for (size_t k = 0; k < orig.size(); ++k)
            orig.data()[k] = t1x.data()[k] + t1y.data()[k]
                           - 0.5 * (t2x.data()[k] + t2y.data()[k])
                           + 0.5 * (t3x.data()[k] + t3y.data()[k])
                           - t4x.data()[k] - t4y.data()[k];
    }

    // Decomposed form: kappa * (S1 + S2 + S3) after discrete integration by
    // parts, transcribed term by term.
    GridField s1(mesh), s2(mesh), s3(mesh);
    {
        GridField bx_fy_phiy = diff(fy_phiy, Axis::X, DiffKind::Backward);
        GridField by_fx_phix = diff(fx_phix, Axis::Y, DiffKind::Backward);
        GridField bx_fx_phix = diff(fx_phix, Axis::X, DiffKind::Backward);
        GridField by_fy_phiy = diff(fy_phiy, Axis::Y, DiffKind::Backward);

        GridField a1 = mul(avg(mul(rho, shift(byr, Axis::X, 1)), mul(shift(rho, Axis::X, 1), byr)), by_fx_phix);
        GridField a2 = mul(avg(mul(rho, shift(bxr, Axis::Y, 1)), mul(shift(rho, Axis::Y, 1), bxr)), bx_fy_phiy);
        GridField a3 = mul(mul(rho, cxr), bx_fx_phix);
        GridField a4 = mul(mul(rho, cyr), by_fy_phiy);
        for (size_t k = 0; k < s1.size(); ++k)
            s1.data()[k] = a1.data()[k] + a2.data()[k] + a3.data()[k] + a4.data()[k];

        GridField b1 = mul(mul(fxr, fxr), fx_phix);
        GridField b2 = mul(mul(fyr, fyr), fy_phiy);
        GridField b3 = mul(mul(byr, shift(byr, Axis::X, 1)), fx_phix);
        GridField b4 = mul(mul(bxr, shift(bxr, Axis::Y, 1)), fy_phiy);
        GridField b5 = mul(mul(byr, shift(byr, Axis::X, 1)), shift(fx_phix, Axis::Y, -1));
        GridField b6 = mul(mul(bxr, shift(bxr, Axis::Y, 1)), shift(fy_phiy, Axis::X, -1));
        for (size_t k = 0; k < s2.size(); ++k)
            s2.data()[k] = 0.5 * (b1.data()[k] + b2.data()[k])
                         - 0.5 * (b3.data()[k] + b4.data()[k])
                         + b5.data()[k] + b6.data()[k];

        GridField c1 = mul(mul(fxr, bxr), diff(phi_x, Axis::X, DiffKind::Central));
        GridField c2 = mul(mul(fyr, byr), diff(phi_y, Axis::Y, DiffKind::Central));
        GridField c3 = mul(mul(cxr, fyr), fy_phix);
        GridField c4 = mul(mul(cyr, fxr), fx_phiy);
        for (size_t k = 0; k < s3.size(); ++k)
            s3.data()[k] = c1.data()[k] + c2.data()[k] + c3.data()[k] + c4.data()[k];
    }

    GridField s_total(mesh);
    for (size_t k = 0; k < s_total.size(); ++k)
        s_total.data()[k] = s1.data()[k] + s2.data()[k] + s3.data()[k];

    CapillaryPairing cp;
    cp.original = -params.kappa * integral(orig);
    cp.decomposed = params.kappa * integral(s_total);
    return cp;
}

double capillary_decomposition_defect(const GridField& rho, const TestFunction& phi,
                                      const FluidParams& params, double t) {
    CapillaryPairing cp = capillary_pairing(rho, phi, params, t);
    return std::abs(cp.original - cp.decomposed);
}

std::pair<double, double> apriori_monitor(const Trajectory& traj, const FluidParams& params) {
    (void)params;
    double grad_max = 0.0;
    std::vector<double> lap_sq(traj.times.size());
    for (size_t k = 0; k < traj.states.size(); ++k) {
        const GridField& rho = traj.states[k].rho;
        GridField gx = diff(rho, Axis::X, DiffKind::Forward);
        GridField gy = diff(rho, Axis::Y, DiffKind::Forward);
        grad_max = std::max(grad_max, std::sqrt(inner_product(gx, gx) + inner_product(gy, gy)));
        GridField ld = laplacian(rho);
        lap_sq[k] = inner_product(ld, ld);
    }
    KahanSum time_int;
    for (size_t k = 0; k + 1 < traj.times.size(); ++k) {
        const double dt = traj.times[k + 1] - traj.times[k];
        time_int.add(0.5 * dt * (lap_sq[k] + lap_sq[k + 1]));
    }
    const double h = traj.states.front().mesh().h;
    return {grad_max, std::sqrt(h * time_int.value())};
}

GridField restrict_to_coarser(const GridField& fine, const Mesh& coarse) {
    const Mesh& fm = fine.mesh();
    if (fm.m == coarse.m && fm.n == coarse.n) return fine;
    if (fm.m != 2 * coarse.m || fm.n != 2 * coarse.n)
        throw ValidationError("restrict_to_coarser: meshes are not nested by factor 2");

    static const double w[3] = {0.25, 0.5, 0.25};
    GridField out(coarse);
    for (int J = 0; J < coarse.n; ++J) {
        for (int I = 0; I < coarse.m; ++I) {
            double acc = 0.0;
            for (int dj = -1; dj <= 1; ++dj) {
                const int jf = (2 * J + dj + fm.n) % fm.n;
                for (int di = -1; di <= 1; ++di) {
                    const int if_ = (2 * I + di + fm.m) % fm.m;
                    acc += w[di + 1] * w[dj + 1] * fine(if_, jf);
                }
            }
            out(I, J) = acc;
        }
    }
    return out;
}

namespace {
double l1_norm(const GridField& f) {
    GridField a(f.mesh());
    for (size_t k = 0; k < f.size(); ++k) a.data()[k] = std::abs(f.data()[k]);
    return integral(a);
}
GridField subtract(const GridField& a, const GridField& b) {
    GridField out(a.mesh());
    for (size_t k = 0; k < a.size(); ++k) out.data()[k] = a.data()[k] - b.data()[k];
    return out;
}
} // namespace

ConvergenceReport refinement_study(const StudyConfig& cfg) {
    cfg.validate();

    ConvergenceReport report;
    std::vector<State> finals;
    for (size_t lvl = 0; lvl < cfg.levels.size(); ++lvl) {
        RunConfig run = cfg.base;
        run.mesh = cfg.levels[lvl];

        Mesh mesh = make_mesh(run.mesh.m, run.mesh.n);
        State initial = build_initial(run, mesh);
        // Record as densely as the state budget allows (~320 records): the
        // residual time quadrature error scales with the squared record
        // spacing and is reported per level as quad_check.
        const double dt0 = stable_dt(initial, run.params, mesh, run.controls.cfl);
        const long est_steps = static_cast<long>(run.controls.t_end / dt0) + 1;
        run.controls.record_every = static_cast<int>(std::max(1L, est_steps / 320));
        Trajectory traj;
        try {
            traj = integrate(initial, run.params, run.controls);
        } catch (const Error& e) {
            std::ostringstream os;
            os << "refinement_study level " << run.mesh.m << "x" << run.mesh.n << ": " << e.what();
            throw Error(e.kind(), os.str());
        }

        BatteryResult battery = evaluate_residual_battery(traj, run.params, cfg.battery_kmax);
        auto [grad_max, lap_proxy] = apriori_monitor(traj, run.params);

        LevelData lv;
        lv.m = run.mesh.m;
        lv.n = run.mesh.n;
        lv.h = mesh.h;
        lv.r1 = battery.r1;
        lv.r2 = battery.r2;
        lv.r1_total = battery.r1_total;
        lv.r2_total = battery.r2_total;
        lv.quad_check_r1 = battery.r1 > 0.0 ? std::abs(battery.r1_half - battery.r1) / battery.r1 : 0.0;
        lv.quad_check_r2 = battery.r2 > 0.0 ? std::abs(battery.r2_half - battery.r2) / battery.r2 : 0.0;
        double lam_obs = 0.0;
        for (const DiagnosticsRow& row : traj.diagnostics) lam_obs = std::max(lam_obs, row.lambda);
        lv.lambda_h = lam_obs * mesh.h;
        lv.apriori_grad = grad_max;
        lv.apriori_lap = lap_proxy;
        report.levels.push_back(lv);
        finals.push_back(traj.states.back());
    }

    for (size_t l = 0; l + 1 < finals.size(); ++l) {
        const Mesh& coarse = finals[l].mesh();
        GridField dr = subtract(restrict_to_coarser(finals[l + 1].rho, coarse), finals[l].rho);
        GridField dmx = subtract(restrict_to_coarser(finals[l + 1].mx, coarse), finals[l].mx);
        GridField dmy = subtract(restrict_to_coarser(finals[l + 1].my, coarse), finals[l].my);
        report.cauchy_rho.push_back(l1_norm(dr));
        report.cauchy_m.push_back(l1_norm(dmx) + l1_norm(dmy));
    }

    auto orders = [](const std::vector<double>& v) {
        std::vector<double> o;
        for (size_t k = 0; k + 1 < v.size(); ++k)
            o.push_back(v[k + 1] > 0.0 ? std::log2(v[k] / v[k + 1]) : 0.0);
        return o;
    };
    std::vector<double> r1s, r2s;
    for (const LevelData& lv : report.levels) {
        r1s.push_back(lv.r1);
        r2s.push_back(lv.r2);
    }
    report.order_r1 = orders(r1s);
    report.order_r2 = orders(r2s);
    report.order_cauchy_rho = orders(report.cauchy_rho);
    report.order_cauchy_m = orders(report.cauchy_m);
    return report;
}

} // namespace nskfv

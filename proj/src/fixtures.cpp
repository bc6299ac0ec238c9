#include "nskfv/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace nskfv {
namespace fixtures {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

GridField random_smooth_field(const Mesh& mesh, std::mt19937_64& rng, double base, double amp) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    struct Mode {
        int kx, ky;
        double c_cos, c_sin;
    };
    std::vector<Mode> modes;
    double total = 0.0;
    for (int kx = 0; kx <= 2; ++kx) {
        for (int ky = (kx == 0 ? 1 : -2); ky <= 2; ++ky) {
            Mode m{kx, ky, coef(rng), coef(rng)};
            total += std::abs(m.c_cos) + std::abs(m.c_sin);
            modes.push_back(m);
        }
    }
    const double norm = total > 0.0 ? amp / total : 0.0;

    GridField out(mesh);
    for (int j = 0; j < mesh.n; ++j) {
        const double y = j * mesh.hy;
        for (int i = 0; i < mesh.m; ++i) {
            const double x = i * mesh.hx;
            double val = base;
            for (const Mode& m : modes) {
                const double arg = two_pi * (m.kx * x + m.ky * y);
                val += norm * (m.c_cos * std::cos(arg) + m.c_sin * std::sin(arg));
            }
            out(i, j) = val;
        }
    }
    return out;
}

GridField random_rough_field(const Mesh& mesh, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    GridField out(mesh);
    for (size_t k = 0; k < out.size(); ++k) out.data()[k] = dist(rng);
    return out;
}

State random_state(const Mesh& mesh, std::mt19937_64& rng, bool rough) {
    State s;
    GridField u, v;
    if (rough) {
        s.rho = random_rough_field(mesh, rng, 0.5, 2.0);
        u = random_rough_field(mesh, rng, -0.8, 0.8);
        v = random_rough_field(mesh, rng, -0.8, 0.8);
    } else {
        s.rho = random_smooth_field(mesh, rng, 1.2, 0.7);
        u = random_smooth_field(mesh, rng, 0.0, 0.8);
        v = random_smooth_field(mesh, rng, 0.0, 0.8);
    }
    s.mx = GridField(mesh);
    s.my = GridField(mesh);
    for (size_t k = 0; k < s.rho.size(); ++k) {
        s.mx.data()[k] = s.rho.data()[k] * u.data()[k];
        s.my.data()[k] = s.rho.data()[k] * v.data()[k];
    }
    return s;
}

SmoothReference trig_reference() {
    constexpr double a1 = 0.15, a2 = 0.05, b1 = 0.3, b2 = 0.2;
    SmoothReference ref;
    ref.rho = [=](double t, double x, double y) {
        return 1.0 + a1 * std::exp(-t) * std::sin(two_pi * x) * std::cos(two_pi * y)
               + a2 * std::cos(2.0 * two_pi * y + 0.5);
    };
    ref.rho_grad = [=](double t, double x, double y) {
        const double gx = a1 * std::exp(-t) * two_pi * std::cos(two_pi * x) * std::cos(two_pi * y);
        const double gy = -a1 * std::exp(-t) * two_pi * std::sin(two_pi * x) * std::sin(two_pi * y)
                          - a2 * 2.0 * two_pi * std::sin(2.0 * two_pi * y + 0.5);
        return std::make_pair(gx, gy);
    };
    ref.rho_lap = [=](double t, double x, double y) {
        return -2.0 * a1 * std::exp(-t) * two_pi * two_pi * std::sin(two_pi * x) * std::cos(two_pi * y)
               - a2 * 4.0 * two_pi * two_pi * std::cos(2.0 * two_pi * y + 0.5);
    };
    ref.u = [=](double, double x, double y) {
        return std::make_pair(b1 * std::sin(two_pi * y + 0.2), b2 * std::cos(two_pi * x - 0.4));
    };
    ref.u_grad = [=](double, double x, double y) {
        return std::array<double, 4>{0.0, b1 * two_pi * std::cos(two_pi * y + 0.2),
                                     -b2 * two_pi * std::sin(two_pi * x - 0.4), 0.0};
    };
    return ref;
}

} // namespace fixtures
} // namespace nskfv

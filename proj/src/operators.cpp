#include "nskfv/operators.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace nskfv {

namespace {
inline int up(int i, int m) { return i + 1 == m ? 0 : i + 1; }
inline int dn(int i, int m) { return i == 0 ? m - 1 : i - 1; }
} // namespace

GridField diff(const GridField& f, Axis axis, DiffKind kind) {
    const Mesh& mesh = f.mesh();
    GridField g(mesh);
    if (axis == Axis::X) {
        const double inv = 1.0 / mesh.hx;
        const double inv2 = 0.5 / mesh.hx;
        for (int j = 0; j < mesh.n; ++j) {
            for (int i = 0; i < mesh.m; ++i) {
                const int ip = up(i, mesh.m), im = dn(i, mesh.m);
                switch (kind) {
                case DiffKind::Forward: g(i, j) = (f(ip, j) - f(i, j)) * inv; break;
                case DiffKind::Backward: g(i, j) = (f(i, j) - f(im, j)) * inv; break;
                case DiffKind::Central: g(i, j) = (f(ip, j) - f(im, j)) * inv2; break;
                }
            }
        }
    } else {
        const double inv = 1.0 / mesh.hy;
        const double inv2 = 0.5 / mesh.hy;
        for (int j = 0; j < mesh.n; ++j) {
            const int jp = up(j, mesh.n), jm = dn(j, mesh.n);
            for (int i = 0; i < mesh.m; ++i) {
                switch (kind) {
                case DiffKind::Forward: g(i, j) = (f(i, jp) - f(i, j)) * inv; break;
                case DiffKind::Backward: g(i, j) = (f(i, j) - f(i, jm)) * inv; break;
                case DiffKind::Central: g(i, j) = (f(i, jp) - f(i, jm)) * inv2; break;
                }
            }
        }
    }
    return g;
}

GridField shift(const GridField& f, Axis axis, int offset) {
    if (std::abs(offset) > 2) {
        std::ostringstream os;
        os << "shift: offset " << offset << " out of range (|offset| <= 2)";
        throw ValidationError(os.str());
    }
    const Mesh& mesh = f.mesh();
    GridField g(mesh);
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            if (axis == Axis::X) {
                int is = (i + offset + mesh.m) % mesh.m;
                g(i, j) = f(is, j);
            } else {
                int js = (j + offset + mesh.n) % mesh.n;
                g(i, j) = f(i, js);
            }
        }
    }
    return g;
}

GridField laplacian(const GridField& f) {
    const Mesh& mesh = f.mesh();
    GridField g(mesh);
    const double ix2 = 1.0 / (mesh.hx * mesh.hx);
    const double iy2 = 1.0 / (mesh.hy * mesh.hy);
    for (int j = 0; j < mesh.n; ++j) {
        const int jp = up(j, mesh.n), jm = dn(j, mesh.n);
        for (int i = 0; i < mesh.m; ++i) {
            const int ip = up(i, mesh.m), im = dn(i, mesh.m);
            g(i, j) = (f(ip, j) - 2.0 * f(i, j) + f(im, j)) * ix2
                    + (f(i, jp) - 2.0 * f(i, j) + f(i, jm)) * iy2;
        }
    }
    return g;
}

double integral(const GridField& f) {
    KahanSum s;
    const double* p = f.data();
    const size_t sz = f.size();
    for (size_t k = 0; k < sz; ++k) s.add(p[k]);
    return f.mesh().hx * f.mesh().hy * s.value();
}

double inner_product(const GridField& f, const GridField& g) {
    if (!same_mesh(f.mesh(), g.mesh()))
        throw ValidationError("inner_product: mesh mismatch");
    KahanSum s;
    const double* pf = f.data();
    const double* pg = g.data();
    const size_t sz = f.size();
    for (size_t k = 0; k < sz; ++k) s.add(pf[k] * pg[k]);
    return f.mesh().hx * f.mesh().hy * s.value();
}

} // namespace nskfv

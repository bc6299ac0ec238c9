#include "nskfv/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nskfv {

Mesh make_mesh(int m, int n) {
    if (m < 3 || n < 3) {
        std::ostringstream os;
        os << "make_mesh: need at least 3 cells per axis for the difference stencils, got "
           << m << "x" << n;
        throw ValidationError(os.str());
    }
    Mesh mesh;
    mesh.m = m;
    mesh.n = n;
    mesh.hx = 1.0 / m;
    mesh.hy = 1.0 / n;
    mesh.h = std::max(mesh.hx, mesh.hy);
    return mesh;
}

double GridField::at_periodic(long i, long j) const {
    long im = i % mesh_.m;
    if (im < 0) im += mesh_.m;
    long jm = j % mesh_.n;
    if (jm < 0) jm += mesh_.n;
    return values_[static_cast<size_t>(jm) * mesh_.m + im];
}

double GridField::min_value() const {
    double v = values_.empty() ? 0.0 : values_[0];
    for (double x : values_) v = std::min(v, x);
    return v;
}

double GridField::max_value() const {
    double v = values_.empty() ? 0.0 : values_[0];
    for (double x : values_) v = std::max(v, x);
    return v;
}

bool GridField::all_finite() const {
    for (double x : values_)
        if (!std::isfinite(x)) return false;
    return true;
}

std::pair<GridField, GridField> velocity(const State& state) {
    const Mesh& mesh = state.mesh();
    GridField u(mesh), v(mesh);
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            const double rho = state.rho(i, j);
            if (!(rho > 0.0)) {
                std::ostringstream os;
                os << "velocity: nonpositive density " << rho << " in cell (" << i << "," << j << ")";
                throw PositivityError(os.str());
            }
            u(i, j) = state.mx(i, j) / rho;
            v(i, j) = state.my(i, j) / rho;
        }
    }
    return {std::move(u), std::move(v)};
}

GridField project_to_cell_averages(const std::function<double(double, double)>& f, const Mesh& mesh) {
    // 5-point Gauss-Legendre on [-1/2, 1/2], tensorized per cell.
    const double r1 = 0.5 * 0.5384693101056831;
    const double r2 = 0.5 * 0.9061798459386640;
    const double node[5] = {-r2, -r1, 0.0, r1, r2};
    const double w0 = 0.5 * 0.5688888888888889;
    const double w1 = 0.5 * 0.4786286704993665;
    const double w2 = 0.5 * 0.2369268850561891;
    const double wgt[5] = {w2, w1, w0, w1, w2};

    GridField out(mesh);
    for (int j = 0; j < mesh.n; ++j) {
        const double yc = j * mesh.hy;
        for (int i = 0; i < mesh.m; ++i) {
            const double xc = i * mesh.hx;
            double acc = 0.0;
            for (int qj = 0; qj < 5; ++qj) {
                const double y = yc + node[qj] * mesh.hy;
                for (int qi = 0; qi < 5; ++qi) {
                    const double x = xc + node[qi] * mesh.hx;
                    acc += wgt[qi] * wgt[qj] * f(x, y);
                }
            }
            out(i, j) = acc;
        }
    }
    return out;
}

} // namespace nskfv

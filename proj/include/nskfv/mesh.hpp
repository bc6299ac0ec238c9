#ifndef NSKFV_MESH_HPP
#define NSKFV_MESH_HPP

#include <functional>
#include <utility>
#include <vector>

#include "nskfv/errors.hpp"

namespace nskfv {

/// Uniform periodic Cartesian mesh on the unit torus. Cell (i, j) has its
/// center at (i*hx, j*hy) and interfaces at ((i +- 1/2)*hx, (j +- 1/2)*hy),
/// i = 0..m-1, j = 0..n-1, with periodic identification.
struct Mesh {
    int m = 0;      ///< cells in x
    int n = 0;      ///< cells in y
    double hx = 0.0;
    double hy = 0.0;
    double h = 0.0; ///< max(hx, hy)
};

/// Throws ValidationError unless m, n >= 3 (central and mixed stencils need
/// distinct neighbors).
Mesh make_mesh(int m, int n);

inline bool same_mesh(const Mesh& a, const Mesh& b) { return a.m == b.m && a.n == b.n; }

/// Piecewise-constant scalar grid function: one value per cell, stored
/// row-major with i fastest. Immutable by convention once returned from an
/// operation; operations construct fresh fields.
class GridField {
public:
    GridField() = default;
    explicit GridField(const Mesh& mesh, double fill = 0.0)
        : mesh_(mesh), values_(static_cast<size_t>(mesh.m) * mesh.n, fill) {}

    const Mesh& mesh() const { return mesh_; }
    int m() const { return mesh_.m; }
    int n() const { return mesh_.n; }
    size_t size() const { return values_.size(); }

    double operator()(int i, int j) const { return values_[static_cast<size_t>(j) * mesh_.m + i]; }
    double& operator()(int i, int j) { return values_[static_cast<size_t>(j) * mesh_.m + i]; }

    /// Value at an arbitrary logical index: (i + k*m, j + l*n) resolves to (i, j).
    double at_periodic(long i, long j) const;

    const double* data() const { return values_.data(); }
    double* data() { return values_.data(); }

    double min_value() const;
    double max_value() const;
    bool all_finite() const;

private:
    Mesh mesh_;
    std::vector<double> values_;
};

/// Conserved variables (rho, rho*u, rho*v) sharing one mesh.
struct State {
    GridField rho;
    GridField mx;
    GridField my;

    const Mesh& mesh() const { return rho.mesh(); }
};

/// Cellwise velocity recovery u = mx/rho, v = my/rho.
/// Throws PositivityError if any density cell is <= 0.
std::pair<GridField, GridField> velocity(const State& state);

/// Cell averages of a smooth function on the torus, composite 5x5
/// Gauss-Legendre per cell (exact for per-cell polynomials up to degree 9).
GridField project_to_cell_averages(const std::function<double(double, double)>& f, const Mesh& mesh);

} // namespace nskfv

#endif

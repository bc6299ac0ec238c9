#ifndef NSKFV_OPERATORS_HPP
#define NSKFV_OPERATORS_HPP

#include "nskfv/mesh.hpp"

namespace nskfv {

enum class Axis { X, Y };
enum class DiffKind { Forward, Backward, Central };

/// Periodic finite difference of f along an axis:
///   Forward:  (f(i+1) - f(i)) / h
///   Backward: (f(i) - f(i-1)) / h
///   Central:  (f(i+1) - f(i-1)) / (2h)
GridField diff(const GridField& f, Axis axis, DiffKind kind);

/// Periodic index shift, g(i,j) = f(i+offset, j) along X (Y analogous).
/// The scheme never references neighbors farther than 2 cells; |offset| > 2
/// is rejected to catch indexing bugs.
GridField shift(const GridField& f, Axis axis, int offset);

/// Five-point periodic Laplacian, equal to diff(diff(f,A,Forward),A,Backward)
/// summed over both axes.
GridField laplacian(const GridField& f);

/// Compensated (Kahan) accumulator. Conservation and summation-by-parts tests
/// require ~1e-13 relative cancellation on grids up to 256^2, which naive
/// summation can lose.
class KahanSum {
public:
    void add(double x) {
        const double y = x - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// Exact integral of the piecewise-constant function over the unit torus:
/// hx*hy * sum f(i,j), compensated summation.
double integral(const GridField& f);

/// L2 pairing integral(f*g). Throws ValidationError on mesh mismatch.
double inner_product(const GridField& f, const GridField& g);

} // namespace nskfv

#endif

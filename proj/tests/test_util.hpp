#ifndef NSKFV_TEST_UTIL_HPP
#define NSKFV_TEST_UTIL_HPP

#include <cmath>

#include "nskfv/fixtures.hpp"
#include "nskfv/operators.hpp"

namespace testutil {

inline double field_max_abs(const nskfv::GridField& f) {
    return std::max(std::abs(f.min_value()), std::abs(f.max_value()));
}

inline double max_abs_diff(const nskfv::GridField& a, const nskfv::GridField& b) {
    double worst = 0.0;
    for (size_t k = 0; k < a.size(); ++k)
        worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    return worst;
}

/// |a - b| <= abs + rel * max(|a|, |b|), elementwise scale taken fieldwise.
inline bool fields_close(const nskfv::GridField& a, const nskfv::GridField& b,
                         double rel = 1e-12, double abs = 1e-13) {
    return max_abs_diff(a, b) <= abs + rel * std::max(field_max_abs(a), field_max_abs(b));
}

inline bool scalars_close(double a, double b, double rel = 1e-12, double abs = 1e-13) {
    return std::abs(a - b) <= abs + rel * std::max(std::abs(a), std::abs(b));
}

inline nskfv::State constant_state(const nskfv::Mesh& mesh, double rho, double u, double v) {
    nskfv::State s;
    s.rho = nskfv::GridField(mesh, rho);
    s.mx = nskfv::GridField(mesh, rho * u);
    s.my = nskfv::GridField(mesh, rho * v);
    return s;
}

} // namespace testutil

#endif

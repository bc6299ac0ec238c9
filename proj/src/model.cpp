#include "nskfv/model.hpp"

#include <cmath>
#include <sstream>

#include "nskfv/operators.hpp"

namespace nskfv {

void FluidParams::validate() const {
    auto fail = [](const std::string& msg) { throw ValidationError("params: " + msg); };
    if (!(a > 0.0)) fail("a must be positive");
    if (!(gamma > 1.0)) fail("gamma must exceed 1");
    if (!(mu >= 0.0)) fail("mu must be nonnegative");
    if (!(kappa > 0.0)) fail("kappa must be positive");
    if (!(delta > 0.0) || !(delta < 1.0)) fail("delta must lie in (0, 1)");
    if (!(rho_floor > 0.0)) fail("rho_floor must be positive");
}

namespace {
void require_positive(double rho, const char* who) {
    if (!(rho > 0.0)) {
        std::ostringstream os;
        os << who << ": density " << rho << " outside the domain rho > 0";
        throw ValidationError(os.str());
    }
}
} // namespace

double pressure(double rho, const FluidParams& params) {
    require_positive(rho, "pressure");
    return params.a * std::pow(rho, params.gamma);
}

double pressure_derivative(double rho, const FluidParams& params) {
    require_positive(rho, "pressure_derivative");
    return params.a * params.gamma * std::pow(rho, params.gamma - 1.0);
}

double potential(double rho, const FluidParams& params) {
    require_positive(rho, "potential");
    return params.a * std::pow(rho, params.gamma) / (params.gamma - 1.0);
}

double discrete_total_energy(const State& state, const FluidParams& params) {
    const Mesh& mesh = state.mesh();
    auto [u, v] = velocity(state); // checks positivity

    GridField dxr = diff(state.rho, Axis::X, DiffKind::Forward);
    GridField dyr = diff(state.rho, Axis::Y, DiffKind::Forward);

    GridField density(mesh);
    for (int j = 0; j < mesh.n; ++j) {
        for (int i = 0; i < mesh.m; ++i) {
            const double rho = state.rho(i, j);
            const double kin = 0.5 * rho * (u(i, j) * u(i, j) + v(i, j) * v(i, j));
            const double grad2 = dxr(i, j) * dxr(i, j) + dyr(i, j) * dyr(i, j);
            density(i, j) = kin + potential(rho, params) + 0.5 * params.kappa * grad2;
        }
    }
    return integral(density);
}

} // namespace nskfv

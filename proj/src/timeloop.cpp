#include "nskfv/timeloop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nskfv {

void TimeControls::validate() const {
    if (!(cfl > 0.0) || !(cfl <= 1.0))
        throw ValidationError("controls: cfl must lie in (0, 1]");
    if (!(t_end > 0.0)) throw ValidationError("controls: t_end must be positive");
    if (record_every < 1) throw ValidationError("controls: record_every must be positive");
    if (max_steps < 1) throw ValidationError("controls: max_steps must be positive");
}

double stable_dt(const State& state, const FluidParams& params, const Mesh& mesh, double cfl) {
    if (!(cfl > 0.0) || !(cfl <= 1.0))
        throw ValidationError("stable_dt: cfl must lie in (0, 1]");
    const double lam = lambda_max(state, params); // checks positivity
    const double rho_min = state.rho.min_value();
    const double rho_max = state.rho.max_value();
    const double h_min = std::min(mesh.hx, mesh.hy);

    const double dt_conv = h_min / (2.0 * lam);
    const double dt_visc = h_min * h_min / (8.0 * (params.mu / rho_min + lam * mesh.h));
    const double dt_cap = rho_min * h_min * h_min * h_min / (8.0 * params.kappa * rho_max);
    return cfl * std::min({dt_conv, dt_visc, dt_cap});
}

namespace {

/// a*s + b*(t + dt*F(t)) over all three conserved fields.
State blend(double a, const State& s, double b, const State& t, double dt, const SchemeRhs& f) {
    State out;
    out.rho = GridField(s.mesh());
    out.mx = GridField(s.mesh());
    out.my = GridField(s.mesh());
    const size_t sz = s.rho.size();
    for (size_t k = 0; k < sz; ++k) {
        out.rho.data()[k] = a * s.rho.data()[k] + b * (t.rho.data()[k] + dt * f.drho_dt.data()[k]);
        out.mx.data()[k] = a * s.mx.data()[k] + b * (t.mx.data()[k] + dt * f.dmx_dt.data()[k]);
        out.my.data()[k] = a * s.my.data()[k] + b * (t.my.data()[k] + dt * f.dmy_dt.data()[k]);
    }
    return out;
}

State ssprk3(const State& state, double dt, const FluidParams& params, bool freeze_lambda) {
    const double lam0 = freeze_lambda ? lambda_max(state, params) : 0.0;
    auto eval = [&](const State& s, const char* stage) {
        try {
            return freeze_lambda ? rhs_full_frozen(s, params, lam0) : rhs_full(s, params);
        } catch (const PositivityError& e) {
            throw PositivityError(std::string("ssprk3 ") + stage + ": " + e.what());
        }
    };
    SchemeRhs f0 = eval(state, "stage 1");
    State s1 = blend(0.0, state, 1.0, state, dt, f0);
    SchemeRhs f1 = eval(s1, "stage 2");
    State s2 = blend(0.75, state, 0.25, s1, dt, f1);
    SchemeRhs f2 = eval(s2, "stage 3");
    return blend(1.0 / 3.0, state, 2.0 / 3.0, s2, dt, f2);
}

} // namespace

State step_ssprk3(const State& state, double dt, const FluidParams& params) {
    if (!(dt > 0.0)) throw ValidationError("step_ssprk3: dt must be positive");
    return ssprk3(state, dt, params, false);
}

Trajectory integrate(const State& initial, const FluidParams& params, const TimeControls& controls) {
    controls.validate();
    params.validate();

    // Assumption guard: the positivity floor is tied to the initial data.
    FluidParams run_params = params;
    run_params.rho_floor = 1e-8 * initial.rho.min_value();
    if (!(run_params.rho_floor > 0.0))
        throw PositivityError("integrate: initial density is not strictly positive");

    Trajectory traj;
    auto record = [&](const State& s, double t) {
        traj.times.push_back(t);
        traj.diagnostics.push_back(compute_diagnostics(s, run_params, t));
        traj.states.push_back(s);
    };

    record(initial, 0.0);
    const double e0 = traj.diagnostics.front().energy;
    const double growth_tol = 1e-8 * (1.0 + e0);

    State state = initial;
    double t = 0.0;
    long step = 0;
    const double t_eps = 1e-14 * std::max(1.0, controls.t_end);

    while (t < controls.t_end - t_eps) {
        if (step >= controls.max_steps) {
            std::ostringstream os;
            os << "integrate: step budget " << controls.max_steps << " exhausted at t = " << t
               << " (t_end = " << controls.t_end << ")";
            throw StepBudgetError(os.str());
        }
        double dt = stable_dt(state, run_params, state.mesh(), controls.cfl);
        bool final_step = false;
        if (t + dt >= controls.t_end - t_eps) {
            dt = controls.t_end - t;
            final_step = true;
        }
        try {
            state = ssprk3(state, dt, run_params, controls.freeze_lambda);
        } catch (const PositivityError& e) {
            std::ostringstream os;
            os << e.what() << " (at t = " << t << ", dt = " << dt << ")";
            throw PositivityError(os.str());
        }
        t = final_step ? controls.t_end : t + dt;
        ++step;

        if (final_step || step % controls.record_every == 0) {
            record(state, t);
            const size_t k = traj.diagnostics.size() - 1;
            const double de = traj.diagnostics[k].energy - traj.diagnostics[k - 1].energy;
            if (de > growth_tol) {
                std::ostringstream os;
                os << "integrate: discrete energy grew by " << de << " between t = "
                   << traj.times[k - 1] << " and t = " << traj.times[k]
                   << " (tolerance " << growth_tol << ")";
                throw EnergyGrowthError(os.str());
            }
        }
    }
    return traj;
}

} // namespace nskfv

#include "chemolab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chemolab/errors.hpp"
#include "chemolab/operators.hpp"

namespace chemolab {

void Coefficients::validate() const {
    if (!(chi >= 0.0) || !std::isfinite(chi)) throw DomainError("chi must be >= 0");
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be > 0");
}

void SchemeConfig::validate() const {
    if (!(dt_safety > 0.0 && dt_safety <= 1.0)) throw DomainError("dt_safety must lie in (0, 1]");
    if (!(dt_min > 0.0)) throw DomainError("dt_min must be > 0");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be > 0");
    if (!(blowup_factor > 1.0)) throw DomainError("blowup_factor must be > 1");
    if (!(output_interval > 0.0)) throw DomainError("output_interval must be > 0");
}

double StepLimits::binding() const noexcept {
    return std::min({diffusive, advective, reaction});
}

StepLimits step_limits(const State& state, const Mesh& mesh, const Coefficients& coeff) {
    const double h = mesh.min_spacing();
    const double d = mesh.space_directions();
    StepLimits limits{};
    limits.diffusive = h * h / (2.0 * d * std::max(1.0, coeff.k));
    const double rate = coeff.chi > 0.0 ? max_outflow_rate(state.v, coeff.chi, mesh) : 0.0;
    limits.advective = rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
    limits.reaction = 0.5;
    return limits;
}

double stable_dt(const State& state, const Mesh& mesh, const Coefficients& coeff,
                 const SchemeConfig& cfg, double next_output) {
    double dt = cfg.dt_safety * step_limits(state, mesh, coeff).binding();
    if (state.t + dt > next_output) dt = next_output - state.t;
    return dt;
}

State step(const State& state, const Mesh& mesh, const Coefficients& coeff, double dt) {
    const auto cells = static_cast<long>(mesh.size());
    State next{Field(mesh.size()), Field(mesh.size()), state.t + dt};
    const double* u = state.u.data();
    const double* v = state.v.data();
    double* un = next.u.data();
    double* vn = next.v.data();
    const double chi = coeff.chi;
    const double k = coeff.k;
    const double decay = std::exp(-dt);
    const double gain = 1.0 - decay;  // exact for dt <= ln 2

#pragma omp parallel for schedule(static)
    for (long c = 0; c < cells; ++c) {
        const auto i = static_cast<std::size_t>(c);
        double lap_u = 0.0;
        double lap_v = 0.0;
        double taxis = 0.0;
        for (const Neighbor& nb : mesh.neighbors(i)) {
            const std::size_t j = nb.cell;
            const double g = nb.area / nb.distance;
            lap_u += g * (u[j] - u[i]);
            lap_v += g * (v[j] - v[i]);
            const double w = face_velocity(v[i], v[j], chi, nb.distance);
            taxis += nb.area * w * (w > 0.0 ? u[i] : u[j]);
        }
        const double inv_vol = 1.0 / mesh.volume(i);
        un[i] = u[i] + dt * (lap_u - taxis) * inv_vol;
        vn[i] = decay * (v[i] + dt * k * lap_v * inv_vol) + gain * u[i];
    }

    validate_state(next, mesh);
    return next;
}

namespace reference {

State step(const State& state, const Mesh& mesh, const Coefficients& coeff, double dt) {
    const Field lap_u = reference::laplacian_neumann(state.u, mesh);
    const Field lap_v = reference::laplacian_neumann(state.v, mesh);
    const Field taxis = reference::chemotactic_divergence(state.u, state.v, coeff.chi, mesh);
    State next{Field(mesh.size()), Field(mesh.size()), state.t + dt};
    const double decay = std::exp(-dt);
    const double gain = 1.0 - decay;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        next.u[i] = state.u[i] + dt * (lap_u[i] - taxis[i]);
        next.v[i] = decay * (state.v[i] + dt * coeff.k * lap_v[i]) + gain * state.u[i];
    }
    validate_state(next, mesh);
    return next;
}

}  // namespace reference

const char* to_string(RunStatus status) {
    switch (status) {
        case RunStatus::completed: return "completed";
        case RunStatus::suspected_blowup: return "suspected_blowup";
        case RunStatus::dt_collapse: return "dt_collapse";
    }
    return "?";
}

RunReport run(const State& initial, const Mesh& mesh, const Coefficients& coeff,
              const SchemeConfig& cfg, const MonitorConfig& monitors) {
    coeff.validate();
    cfg.validate();
    validate_state(initial, mesh);

    RunReport report;
    report.series.monitors = monitors;

    State state = initial;
    const double t0 = initial.t;
    const double t_end = t0 + cfg.t_end;
    const double max_u0 = state.u.max();
    const double min_v0 = state.v.min();
    report.initial_mass = integrate(state.u, mesh);
    report.max_u_over_run = max_u0;
    report.min_u_over_run = state.u.min();
    report.min_v_over_run = min_v0;
    report.worst_v_floor_margin = 0.0;

    auto record = [&] {
        report.series.rows.push_back(sample(state, mesh, monitors));
        const double drift = std::abs(report.series.rows.back().mass - report.initial_mass);
        const double scale = report.initial_mass > 0.0 ? report.initial_mass : 1.0;
        report.max_mass_drift_rel = std::max(report.max_mass_drift_rel, drift / scale);
    };
    record();

    std::size_t next_row = 1;
    report.status = RunStatus::completed;
    while (state.t < t_end) {
        const double next_output = std::min(t_end, t0 + static_cast<double>(next_row) * cfg.output_interval);
        const double dt_stable = stable_dt(state, mesh, coeff, cfg);
        if (dt_stable < cfg.dt_min) {
            report.status = RunStatus::dt_collapse;
            std::ostringstream msg;
            msg << "stable dt " << dt_stable << " below dt_min at t = " << state.t;
            report.message = msg.str();
            break;
        }
        const bool hits_output = state.t + dt_stable >= next_output;
        const double dt = hits_output ? next_output - state.t : dt_stable;

        try {
            state = step(state, mesh, coeff, dt);
        } catch (const NonFinite& e) {
            report.status = RunStatus::suspected_blowup;
            report.message = e.what();
            break;
        } catch (const PositivityViolation& e) {
            report.status = RunStatus::dt_collapse;
            report.message = e.what();
            break;
        }
        ++report.steps;
        if (hits_output) state.t = next_output;

        const double max_u = state.u.max();
        const double min_v = state.v.min();
        report.max_u_over_run = std::max(report.max_u_over_run, max_u);
        report.min_u_over_run = std::min(report.min_u_over_run, state.u.min());
        report.min_v_over_run = std::min(report.min_v_over_run, min_v);
        const double margin = min_v - std::exp(-(state.t - t0)) * min_v0;
        report.worst_v_floor_margin = std::min(report.worst_v_floor_margin, margin);
        if (margin < -kVFloorRelTol * min_v0) report.v_floor_held = false;

        if (max_u > cfg.blowup_factor * max_u0) {
            report.status = RunStatus::suspected_blowup;
            std::ostringstream msg;
            msg << "max u = " << max_u << " exceeded " << cfg.blowup_factor << " x max u0 at t = " << state.t;
            report.message = msg.str();
            record();
            break;
        }
        if (hits_output) {
            record();
            ++next_row;
        }
    }
    report.t_final = state.t;
    if (report.status == RunStatus::completed && report.message.empty()) report.message = "ok";
    return report;
}

}  // namespace chemolab

#pragma once

// Explicit, positivity-preserving time integration of
//   u_t = Δu - χ ∇·(u/v ∇v),   v_t = k Δv - v + u
// on a Mesh, with blow-up and time-step-collapse detection.

#include <cstddef>
#include <limits>
#include <string>

#include "chemolab/diagnostics.hpp"
#include "chemolab/mesh.hpp"

namespace chemolab {

/// χ >= 0 (χ = 0 decouples u into heat flow), k > 0.
struct Coefficients {
    double chi = 0.5;
    double k = 1.0;

    void validate() const;
    bool operator==(const Coefficients&) const = default;
};

struct SchemeConfig {
    double dt_safety = 0.4;
    double dt_min = 1e-10;
    double t_end = 10.0;
    double blowup_factor = 1e6;
    double output_interval = 0.1;

    void validate() const;
    bool operator==(const SchemeConfig&) const = default;
};

struct StepLimits {
    double diffusive;   // h² / (2 d max(1, k))
    double advective;   // 1 / max outflow rate; +inf when ∇v ≡ 0
    double reaction;    // 1/2

    double binding() const noexcept;
};

StepLimits step_limits(const State& state, const Mesh& mesh, const Coefficients& coeff);

/// dt_safety * min(limits), further capped so that t + dt <= next_output.
double stable_dt(const State& state, const Mesh& mesh, const Coefficients& coeff,
                 const SchemeConfig& cfg,
                 double next_output = std::numeric_limits<double>::infinity());

/// One explicit step of size dt: forward Euler for u; for v, exponential
/// Euler on the reaction with u frozen,
///   v' = e^{-dt} (v + dt kΔv) + (1 - e^{-dt}) u,
/// so min v' >= e^{-dt} min v holds discretely and u = v = const is a fixed
/// point to the last bit.
/// Throws NonFinite on overflow and PositivityViolation if dt exceeded the
/// positivity bound.
State step(const State& state, const Mesh& mesh, const Coefficients& coeff, double dt);

namespace reference {
State step(const State& state, const Mesh& mesh, const Coefficients& coeff, double dt);
}

enum class RunStatus { completed, suspected_blowup, dt_collapse };

const char* to_string(RunStatus status);

struct RunReport {
    RunStatus status = RunStatus::completed;
    double t_final = 0.0;
    std::size_t steps = 0;
    double max_u_over_run = 0.0;
    double min_u_over_run = 0.0;
    double min_v_over_run = 0.0;
    double initial_mass = 0.0;
    double max_mass_drift_rel = 0.0;  // over output rows
    bool v_floor_held = true;         // min v(t) >= e^{-t} min v(0) (1 - 1e-8)
    double worst_v_floor_margin = 0.0;  // min over steps of min v - e^{-t} min v(0)
    std::string message;
    TimeSeries series;

    bool operator==(const RunReport&) const = default;
};

/// Relative slack of the v floor check, as a fraction of min v(0).
inline constexpr double kVFloorRelTol = 1e-8;

/// Integrates from `initial` to cfg.t_end, sampling one row per output
/// interval. Step failures end the run with a non-completed status.
RunReport run(const State& initial, const Mesh& mesh, const Coefficients& coeff,
              const SchemeConfig& cfg, const MonitorConfig& monitors);

}  // namespace chemolab

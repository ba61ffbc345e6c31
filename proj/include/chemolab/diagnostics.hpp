#pragma once

// Norms and the functionals E_{p,r} = Σ vol u^p v^{-r} and
// D_{p,r} = Σ vol u^{p+1} v^{-r-1}, sampled along a trajectory, plus the
// discrete checks of the growth bounds they satisfy for admissible (p, r):
//
//   dE/dt <= r E - r D            (dissipation_check)
//   E(t)  <= E(t0) exp(r (t - t0)) (gronwall_check)

#include <cstddef>
#include <vector>

#include "chemolab/mesh.hpp"

namespace chemolab {

struct ExponentPair {
    double p;
    double r;

    bool operator==(const ExponentPair&) const = default;
};

struct MonitorConfig {
    std::vector<double> q_list;          // L^q norms of u
    std::vector<ExponentPair> pr_pairs;  // functionals E, D
    std::vector<double> v_list;          // L^s norms of v
    double tolerance_rel = 0.05;

    bool operator==(const MonitorConfig&) const = default;
};

/// Rejects q < 1, s < 1, tolerance < 0, and any pair whose r is not strictly
/// inside admissible_window(p, chi, k).
void validate_monitors(const MonitorConfig& monitors, double chi, double k);

/// s = p - r for every pair, deduplicated, in pair order.
std::vector<double> default_v_list(const std::vector<ExponentPair>& pairs);

struct TimeSeriesRow {
    double t = 0.0;
    double mass = 0.0;
    double min_v = 0.0;
    double max_u = 0.0;
    std::vector<double> lq_norms;      // aligned with q_list
    std::vector<double> energies;      // aligned with pr_pairs
    std::vector<double> dissipations;  // aligned with pr_pairs
    std::vector<double> v_norms;       // aligned with v_list

    bool operator==(const TimeSeriesRow&) const = default;
};

struct TimeSeries {
    MonitorConfig monitors;
    std::vector<TimeSeriesRow> rows;

    bool operator==(const TimeSeries&) const = default;
};

/// (Σ vol f^q)^{1/q}; f must be nonnegative.
double lq_norm(const Field& f, double q, const Mesh& mesh);

double energy(const State& state, double p, double r, const Mesh& mesh);
double dissipation(const State& state, double p, double r, const Mesh& mesh);

TimeSeriesRow sample(const State& state, const Mesh& mesh, const MonitorConfig& monitors);

struct Verdict {
    bool passed = true;
    double worst = 0.0;  // gronwall: max E/envelope; dissipation: max normalized excess
    std::size_t worst_row = 0;

    bool operator==(const Verdict&) const = default;
};

Verdict gronwall_check(const TimeSeries& series, ExponentPair pair, double tol);

/// Centred differences on interior rows. Throws InsufficientRows below 3 rows.
Verdict dissipation_check(const TimeSeries& series, ExponentPair pair, double tol);

/// Throws ExponentConditionError unless n/2 (1/q_u - 1/p_v) < 1 and q_u <= p_v.
void check_smoothing_exponents(double p_v, double q_u, int n);

/// ‖v‖_{p_v} / (1 + sup_{s<=t} ‖u‖_{q_u}) per row. Both exponents must be
/// monitored in the series.
std::vector<double> smoothing_ratio(const TimeSeries& series, double p_v, double q_u, int n);

}  // namespace chemolab

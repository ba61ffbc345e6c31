#include "chemolab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chemolab/errors.hpp"
#include "chemolab/exponents.hpp"
#include "chemolab/operators.hpp"

namespace chemolab {

namespace {

std::size_t pair_index(const TimeSeries& series, ExponentPair pair) {
    const auto& pairs = series.monitors.pr_pairs;
    const auto it = std::find(pairs.begin(), pairs.end(), pair);
    if (it == pairs.end()) {
        std::ostringstream msg;
        msg << "pair (p = " << pair.p << ", r = " << pair.r << ") is not monitored";
        throw DomainError(msg.str());
    }
    return static_cast<std::size_t>(it - pairs.begin());
}

std::size_t value_index(const std::vector<double>& list, double value, const char* what) {
    const auto it = std::find(list.begin(), list.end(), value);
    if (it == list.end()) {
        std::ostringstream msg;
        msg << what << " exponent " << value << " is not monitored";
        throw DomainError(msg.str());
    }
    return static_cast<std::size_t>(it - list.begin());
}

}  // namespace

void validate_monitors(const MonitorConfig& monitors, double chi, double k) {
    for (double q : monitors.q_list) {
        if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("q_list entries must be >= 1");
    }
    for (double s : monitors.v_list) {
        if (!(s >= 1.0) || !std::isfinite(s)) throw DomainError("v_list entries must be >= 1");
    }
    if (!(monitors.tolerance_rel >= 0.0)) throw DomainError("tolerance_rel must be >= 0");
    for (const ExponentPair& pr : monitors.pr_pairs) {
        if (!(pr.p > 1.0)) throw DomainError("monitored pairs need p > 1");
        const AdmissibleWindow window = admissible_window(pr.p, chi, k);
        if (!window.contains(pr.r)) {
            std::ostringstream msg;
            msg << "r = " << pr.r << " lies outside the admissible window (" << window.r_minus << ", "
                << window.r_plus << ") at p = " << pr.p;
            throw DomainError(msg.str());
        }
    }
}

std::vector<double> default_v_list(const std::vector<ExponentPair>& pairs) {
    std::vector<double> out;
    for (const ExponentPair& pr : pairs) {
        const double s = pr.p - pr.r;
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    return out;
}

double lq_norm(const Field& f, double q, const Mesh& mesh) {
    if (!(q >= 1.0)) throw DomainError("lq_norm requires q >= 1");
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < 0.0) throw DomainError("lq_norm requires a nonnegative field");
        sum += mesh.volume(i) * (q == 1.0 ? f[i] : std::pow(f[i], q));
    }
    return q == 1.0 ? sum : std::pow(sum, 1.0 / q);
}

double energy(const State& state, double p, double r, const Mesh& mesh) {
    require_positive_field(state.v, "v");
    double sum = 0.0;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        sum += mesh.volume(i) * std::pow(state.u[i], p) * std::pow(state.v[i], -r);
    }
    return sum;
}

double dissipation(const State& state, double p, double r, const Mesh& mesh) {
    return energy(state, p + 1.0, r + 1.0, mesh);
}

TimeSeriesRow sample(const State& state, const Mesh& mesh, const MonitorConfig& monitors) {
    TimeSeriesRow row;
    row.t = state.t;
    row.mass = integrate(state.u, mesh);
    row.min_v = state.v.min();
    row.max_u = state.u.max();
    for (double q : monitors.q_list) row.lq_norms.push_back(lq_norm(state.u, q, mesh));
    for (const ExponentPair& pr : monitors.pr_pairs) {
        row.energies.push_back(energy(state, pr.p, pr.r, mesh));
        row.dissipations.push_back(dissipation(state, pr.p, pr.r, mesh));
    }
    for (double s : monitors.v_list) row.v_norms.push_back(lq_norm(state.v, s, mesh));
    return row;
}

Verdict gronwall_check(const TimeSeries& series, ExponentPair pair, double tol) {
    const std::size_t idx = pair_index(series, pair);
    Verdict verdict;
    if (series.rows.empty()) return verdict;
    const double t0 = series.rows.front().t;
    const double e0 = series.rows.front().energies[idx];
    for (std::size_t j = 0; j < series.rows.size(); ++j) {
        const auto& row = series.rows[j];
        const double envelope = e0 * std::exp(pair.r * (row.t - t0));
        const double ratio = envelope > 0.0 ? row.energies[idx] / envelope
                                            : (row.energies[idx] > 0.0 ? kInfinity : 1.0);
        if (j == 0 || ratio > verdict.worst) {
            verdict.worst = ratio;
            verdict.worst_row = j;
        }
    }
    verdict.passed = verdict.worst <= 1.0 + tol;
    return verdict;
}

Verdict dissipation_check(const TimeSeries& series, ExponentPair pair, double tol) {
    const std::size_t idx = pair_index(series, pair);
    const auto& rows = series.rows;
    if (rows.size() < 3) throw InsufficientRows("dissipation_check needs at least 3 rows");
    const double scale = rows.front().energies[idx];
    Verdict verdict;
    verdict.worst = -kInfinity;
    for (std::size_t j = 1; j + 1 < rows.size(); ++j) {
        const double dedt = (rows[j + 1].energies[idx] - rows[j - 1].energies[idx]) /
                            (rows[j + 1].t - rows[j - 1].t);
        const double growth = pair.r * rows[j].energies[idx];
        const double loss = pair.r * rows[j].dissipations[idx];
        const double allowance = std::abs(growth) + std::abs(loss) + scale;
        const double excess = (dedt - (growth - loss)) / allowance;
        if (excess > verdict.worst) {
            verdict.worst = excess;
            verdict.worst_row = j;
        }
    }
    verdict.passed = verdict.worst <= tol;
    return verdict;
}

void check_smoothing_exponents(double p_v, double q_u, int n) {
    if (!(q_u >= 1.0) || !(p_v >= q_u) || 0.5 * n * (1.0 / q_u - 1.0 / p_v) >= 1.0) {
        std::ostringstream msg;
        msg << "smoothing estimate needs 1 <= q <= p and n/2 (1/q - 1/p) < 1; got p = " << p_v
            << ", q = " << q_u << ", n = " << n;
        throw ExponentConditionError(msg.str());
    }
}

std::vector<double> smoothing_ratio(const TimeSeries& series, double p_v, double q_u, int n) {
    check_smoothing_exponents(p_v, q_u, n);
    const std::size_t vi = value_index(series.monitors.v_list, p_v, "v norm");
    const std::size_t ui = value_index(series.monitors.q_list, q_u, "u norm");
    std::vector<double> out;
    out.reserve(series.rows.size());
    double sup_u = 0.0;
    for (const auto& row : series.rows) {
        sup_u = std::max(sup_u, row.lq_norms[ui]);
        out.push_back(row.v_norms[vi] / (1.0 + sup_u));
    }
    return out;
}

}  // namespace chemolab

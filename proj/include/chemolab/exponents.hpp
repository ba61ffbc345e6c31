#pragma once

// Closed-form thresholds and the exponent bootstrap for the chemotaxis
// system with singular sensitivity
//
//   u_t = Δu - χ ∇·(u/v ∇v),   v_t = k Δv - v + u,   Neumann boundary.
//
// Everything here is a pure function of its arguments. An infinite upper
// bound (e.g. p_max when χ² + χ(k-1) <= 0) is returned as +inf.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace chemolab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative band inside which a strict inequality a < b is treated as a
/// boundary hit and rejected.
inline constexpr double kBoundaryRelTol = 1e-12;

/// True when a < b strictly and a is not within kBoundaryRelTol of b.
bool strictly_below(double a, double b);

/// (χ, k, n) with χ > 0, k > 0, n >= 2 enforced on construction.
class ModelParams {
public:
    ModelParams(double chi, double k, int n);

    double chi() const noexcept { return chi_; }
    double k() const noexcept { return k_; }
    int n() const noexcept { return n_; }

    bool operator==(const ModelParams&) const = default;

private:
    double chi_;
    double k_;
    int n_;
};

struct AdmissibleWindow {
    double p;
    double r_minus;
    double r_plus;

    double midpoint() const noexcept { return 0.5 * (r_minus + r_plus); }
    bool contains(double r) const noexcept { return r_minus < r && r < r_plus; }
};

/// inf and sup of h over (1, n/2].
struct HCoefficients {
    double c0;
    double c_sup;

    bool operator==(const HCoefficients&) const = default;
};

enum class Monotonicity { constant, increasing, decreasing };

const char* to_string(Monotonicity m);

/// -(k-1)/2 + sqrt((k-1)² + 8k/n)/2, evaluated without cancellation.
double chi_star(double k, int n);

/// k / [χ² + χ(k-1)]₊, +inf when the bracket is not positive.
double p_max(double chi, double k);

/// h(p) = (pχ(1-k) + 2k) / (p(1-k)² + 4k). Accepts p >= 1 so that the
/// continuous extension h(1) is available for c_bounds.
double h(double p, double chi, double k);

Monotonicity h_monotonicity(double chi, double k);

HCoefficients c_bounds(double chi, double k, int n);

/// p[(p-1)χ + r + rk]² / (4(p-1)) - prχ - r(r+1)k
double f_quadratic(double r, double p, double chi, double k);

/// 4(p-1) f written as a r² + b r + c.
struct QuadraticCoefficients {
    double a;
    double b;
    double c;
    double operator()(double r) const noexcept { return (a * r + b) * r + c; }
};

QuadraticCoefficients f_expanded(double p, double chi, double k);

/// k² - pχk(k-1) - pχ²k; the full discriminant is 16(p-1)² times this.
double discriminant_inner(double p, double chi, double k);

/// Throws WindowUndefined when discriminant_inner(p, chi, k) is not positive.
AdmissibleWindow admissible_window(double p, double chi, double k);

double lemma25_g(double x, double c0, double c_sup, int n);

/// +inf at x = n/2 (zero denominator).
double lemma25_f(double x, double c0, double c_sup, int n);

/// Upper end of the interval for the next exponent in the bootstrap; +inf
/// at p_prev = n/2.
double next_p_upper(double p_prev, double c0, double c_sup, int n);

/// Step-zero upper bound (n(1-c0) + 2c0) / ((n-2)(1-c0)).
double first_p_upper(double c0, int n);

/// Finite stand-in for an infinite selection bound.
inline double infinite_bound_cap(double p_prev, int n) {
    return std::max(2.0 * n, 2.0 * p_prev + 2.0);
}

struct BootstrapStep {
    double p;
    double r;
    double q;
    double upper_used;

    bool operator==(const BootstrapStep&) const = default;
};

struct BootstrapChain {
    std::vector<BootstrapStep> steps;
    bool terminated = false;
    std::optional<double> final_q;
    std::optional<HCoefficients> coefficients;  // absent for n = 2

    bool operator==(const BootstrapChain&) const = default;
};

/// Exponent lifting p_0 < p_1 < ... until some p_l > n/2.
///
/// Each p is placed at fraction theta of its admissible interval, r_l is the
/// window midpoint (p_l - 1) h(p_l) and q_l is the midpoint of
/// (1, min{p_l, n(p_l - r_l)/[n - 2r_l]₊}). For n = 2 the chain is the
/// single step p_0 in (1, p_max) and carries no coefficients.
///
/// Throws NotApplicable when chi is not strictly below chi_star(k, n).
/// Returns terminated == false when max_steps is exhausted.
BootstrapChain bootstrap(const ModelParams& params, double theta = 0.5, int max_steps = 50);

}  // namespace chemolab

#include "chemolab/exponents.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "chemolab/errors.hpp"

namespace chemolab {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << name << " must be positive and finite, got " << value;
        throw DomainError(msg.str());
    }
}

void require_dimension(int n, int minimum) {
    if (n < minimum) {
        throw DomainError("dimension n must be >= " + std::to_string(minimum) + ", got " +
                          std::to_string(n));
    }
}

void require_exponent(double p, double lower, bool inclusive) {
    const bool ok = std::isfinite(p) && (inclusive ? p >= lower : p > lower);
    if (!ok) {
        std::ostringstream msg;
        msg << "exponent p must be " << (inclusive ? ">= " : "> ") << lower << ", got " << p;
        throw DomainError(msg.str());
    }
}

bool near(double a, double b) {
    return std::abs(a - b) <= kBoundaryRelTol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

bool strictly_below(double a, double b) {
    if (std::isinf(b) && b > 0.0) return std::isfinite(a);
    return a < b && !near(a, b);
}

ModelParams::ModelParams(double chi, double k, int n) : chi_(chi), k_(k), n_(n) {
    require_positive(chi, "chi");
    require_positive(k, "k");
    require_dimension(n, 2);
}

const char* to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::constant: return "constant";
        case Monotonicity::increasing: return "increasing";
        case Monotonicity::decreasing: return "decreasing";
    }
    return "?";
}

double chi_star(double k, int n) {
    require_positive(k, "k");
    require_dimension(n, 2);
    const double km1 = k - 1.0;
    const double root = std::sqrt(km1 * km1 + 8.0 * k / n);
    // Positive root of χ² + (k-1)χ - 2k/n; rationalized when k > 1.
    if (km1 >= 0.0) return (4.0 * k / n) / (km1 + root);
    return 0.5 * (-km1 + root);
}

double p_max(double chi, double k) {
    require_positive(chi, "chi");
    require_positive(k, "k");
    const double bracket = chi * chi + chi * (k - 1.0);
    if (!(bracket > 0.0)) return kInfinity;
    return k / bracket;
}

double h(double p, double chi, double k) {
    require_exponent(p, 1.0, true);
    require_positive(chi, "chi");
    require_positive(k, "k");
    const double omk = 1.0 - k;
    return (p * chi * omk + 2.0 * k) / (p * omk * omk + 4.0 * k);
}

Monotonicity h_monotonicity(double chi, double k) {
    require_positive(chi, "chi");
    require_positive(k, "k");
    const double omk = 1.0 - k;
    // sign of h'(p) is the sign of (1-k)(2χ - (1-k))
    if (near(k, 1.0) || near(2.0 * chi, omk)) return Monotonicity::constant;
    return omk * (2.0 * chi - omk) > 0.0 ? Monotonicity::increasing : Monotonicity::decreasing;
}

HCoefficients c_bounds(double chi, double k, int n) {
    require_dimension(n, 3);
    if (!strictly_below(chi, chi_star(k, n))) {
        std::ostringstream msg;
        msg << "c_bounds requires chi < chi_star(k, n) = " << chi_star(k, n) << ", got chi = " << chi;
        throw NotApplicable(msg.str());
    }
    // h is monotone in p, so the extremes over (1, n/2] sit at the endpoints.
    const double at_one = h(1.0, chi, k);
    const double at_half_n = h(0.5 * n, chi, k);
    return {std::min(at_one, at_half_n), std::max(at_one, at_half_n)};
}

double f_quadratic(double r, double p, double chi, double k) {
    require_exponent(p, 1.0, false);
    const double s = (p - 1.0) * chi + r + r * k;
    return p * s * s / (4.0 * (p - 1.0)) - p * r * chi - r * (r + 1.0) * k;
}

QuadraticCoefficients f_expanded(double p, double chi, double k) {
    require_exponent(p, 1.0, false);
    const double pm1 = p - 1.0;
    const double km1 = k - 1.0;
    return {p * km1 * km1 + 4.0 * k,
            2.0 * p * pm1 * chi * km1 - 4.0 * pm1 * k,
            p * pm1 * pm1 * chi * chi};
}

double discriminant_inner(double p, double chi, double k) {
    require_exponent(p, 1.0, false);
    require_positive(chi, "chi");
    require_positive(k, "k");
    return k * k - p * chi * k * (k - 1.0) - p * chi * chi * k;
}

AdmissibleWindow admissible_window(double p, double chi, double k) {
    const double inner = discriminant_inner(p, chi, k);
    if (!(inner > 0.0) || !strictly_below(p, p_max(chi, k))) {
        std::ostringstream msg;
        msg << "no admissible r-window at p = " << p << " (chi = " << chi << ", k = " << k
            << "): requires p < p_max = " << p_max(chi, k);
        throw WindowUndefined(msg.str());
    }
    const QuadraticCoefficients q = f_expanded(p, chi, k);
    const double center = (p - 1.0) * h(p, chi, k);
    const double half_width = (p - 1.0) * 2.0 * std::sqrt(inner) / q.a;
    const double r_plus = center + half_width;
    // Product of roots avoids cancellation in center - half_width.
    const double r_minus = (q.c / q.a) / r_plus;
    return {p, r_minus, r_plus};
}

double lemma25_g(double x, double c0, double c_sup, int n) {
    require_exponent(x, 1.0, true);
    const double spread = n * (c_sup - c0);
    return 2.0 * (1.0 - c0) * x * x + (2.0 * c0 - spread) * x + spread;
}

double lemma25_f(double x, double c0, double c_sup, int n) {
    return next_p_upper(x, c0, c_sup, n) - x;
}

double next_p_upper(double p_prev, double c0, double c_sup, int n) {
    require_dimension(n, 2);
    require_exponent(p_prev, 1.0, false);
    const double half_n = 0.5 * n;
    if (near(p_prev, half_n)) return kInfinity;
    if (p_prev > half_n) {
        std::ostringstream msg;
        msg << "next_p_upper requires p_prev <= n/2 = " << half_n << ", got " << p_prev;
        throw DomainError(msg.str());
    }
    const double numer = n * ((1.0 - c_sup) * p_prev + c_sup - c0) + 2.0 * c0 * p_prev;
    return numer / ((n - 2.0 * p_prev) * (1.0 - c0));
}

double first_p_upper(double c0, int n) {
    require_dimension(n, 2);
    if (n == 2) return kInfinity;
    return (n * (1.0 - c0) + 2.0 * c0) / ((n - 2.0) * (1.0 - c0));
}

BootstrapChain bootstrap(const ModelParams& params, double theta, int max_steps) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw DomainError("theta must lie in (0, 1), got " + std::to_string(theta));
    }
    if (max_steps < 1) throw DomainError("max_steps must be >= 1");

    const double chi = params.chi();
    const double k = params.k();
    const int n = params.n();
    const double threshold = chi_star(k, n);
    if (!strictly_below(chi, threshold)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "chi = " << chi << " is not below chi_star(k = " << k << ", n = " << n
            << ") = " << threshold;
        throw NotApplicable(msg.str());
    }

    const double pm = p_max(chi, k);
    const double half_n = 0.5 * n;

    auto place = [&](double lower, double upper) {
        if (std::isinf(upper)) upper = infinite_bound_cap(lower, n);
        return BootstrapStep{lower + theta * (upper - lower), 0.0, 0.0, upper};
    };
    auto complete = [&](BootstrapStep step) {
        step.r = (step.p - 1.0) * h(step.p, chi, k);
        const double denom = n - 2.0 * step.r;
        const double q_bound = denom > 0.0 ? n * (step.p - step.r) / denom : kInfinity;
        step.q = 0.5 * (1.0 + std::min(step.p, q_bound));
        return step;
    };

    BootstrapChain chain;
    if (n == 2) {
        chain.steps.push_back(complete(place(1.0, pm)));
    } else {
        const HCoefficients hc = c_bounds(chi, k, n);
        chain.coefficients = hc;
        chain.steps.push_back(complete(place(1.0, std::min(pm, first_p_upper(hc.c0, n)))));
        while (!(chain.steps.back().p > half_n) &&
               static_cast<int>(chain.steps.size()) < max_steps) {
            const double prev = chain.steps.back().p;
            const double upper = std::min(pm, next_p_upper(prev, hc.c0, hc.c_sup, n));
            chain.steps.push_back(complete(place(prev, upper)));
        }
    }

    const double p_last = chain.steps.back().p;
    chain.terminated = p_last > half_n;
    if (chain.terminated) chain.final_q = 0.5 * (half_n + p_last);
    return chain;
}

}  // namespace chemolab

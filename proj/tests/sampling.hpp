#pragma once

// Seeded generators for property tests.

#include <cmath>
#include <random>

#include "chemolab/exponents.hpp"

namespace chemolab::testing {

class Sampler {
public:
    explicit Sampler(unsigned seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    /// k log-uniform in [1e-2, 1e2], chi strictly inside (0, chi_star(k, n)).
    ModelParams admissible(int n) {
        const double k = log_uniform(1e-2, 1e2);
        const double chi = uniform(0.01, 0.99) * chi_star(k, n);
        return ModelParams(chi, k, n);
    }

    struct WindowSample {
        double p;
        double chi;
        double k;
    };

    /// p strictly between 1 and min(p_max, 50); chi, k unconstrained by the threshold.
    WindowSample window_point() {
        for (;;) {
            const double k = log_uniform(1e-2, 1e2);
            const double chi = log_uniform(1e-2, 3.0);
            const double top = std::min(p_max(chi, k), 50.0);
            if (!(top > 1.0 + 1e-6)) continue;
            const double p = 1.0 + uniform(0.001, 0.999) * (top - 1.0);
            if (discriminant_inner(p, chi, k) > 1e-9 * k * k) return {p, chi, k};
        }
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace chemolab::testing

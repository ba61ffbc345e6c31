#include <cmath>
#include <random>

#include "chemolab/diagnostics.hpp"
#include "chemolab/errors.hpp"
#include "chemolab/exponents.hpp"
#include "doctest.h"

using namespace chemolab;

namespace {

State random_state(const Mesh& mesh, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> du(0.0, 4.0);
    std::uniform_real_distribution<double> dv(0.05, 3.0);
    State s{Field(mesh.size()), Field(mesh.size()), 0.0};
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        s.u[i] = du(rng);
        s.v[i] = dv(rng);
    }
    return s;
}

long double brute_power_sum(const Field& f, const Field* g, double a, double b, const Mesh& mesh) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        long double term = static_cast<long double>(mesh.volume(i)) * std::pow(static_cast<long double>(f[i]), a);
        if (g != nullptr) term *= std::pow(static_cast<long double>((*g)[i]), -static_cast<long double>(b));
        s += term;
    }
    return s;
}

TimeSeries synthetic(ExponentPair pair, int rows, double dt, double (*e)(double), double (*d)(double)) {
    TimeSeries series;
    series.monitors.pr_pairs = {pair};
    for (int j = 0; j < rows; ++j) {
        TimeSeriesRow row;
        row.t = j * dt;
        row.energies = {e(row.t)};
        row.dissipations = {d(row.t)};
        series.rows.push_back(row);
    }
    return series;
}

constexpr double kR = 0.75;

}  // namespace

TEST_CASE("norms and functionals against brute-force sums") {
    std::mt19937_64 rng(11);
    const Mesh mesh = Mesh::radial(3, 1.5, 30);
    for (int trial = 0; trial < 50; ++trial) {
        const State s = random_state(mesh, rng);
        for (double q : {1.0, 1.5, 2.0, 4.0}) {
            const double expected = static_cast<double>(std::pow(brute_power_sum(s.u, nullptr, q, 0.0, mesh), 1.0L / q));
            CHECK(lq_norm(s.u, q, mesh) == doctest::Approx(expected).epsilon(1e-12));
        }
        const double e = static_cast<double>(brute_power_sum(s.u, &s.v, 2.5, 0.75, mesh));
        const double d = static_cast<double>(brute_power_sum(s.u, &s.v, 3.5, 1.75, mesh));
        CHECK(energy(s, 2.5, 0.75, mesh) == doctest::Approx(e).epsilon(1e-12));
        CHECK(dissipation(s, 2.5, 0.75, mesh) == doctest::Approx(d).epsilon(1e-12));
    }

    const Mesh square = Mesh::cartesian(2.0, 3.0, 6, 6);
    CHECK(lq_norm(Field(36, 2.0), 2.0, square) == doctest::Approx(2.0 * std::sqrt(6.0)));
    CHECK(lq_norm(Field(36, 2.0), 1.0, square) == doctest::Approx(12.0));

    Field neg(36, 1.0);
    neg[4] = -0.5;
    CHECK_THROWS_AS(lq_norm(neg, 2.0, square), DomainError);
    CHECK_THROWS_AS(lq_norm(Field(36, 1.0), 0.5, square), DomainError);
    State bad{Field(36, 1.0), Field(36, 1.0), 0.0};
    bad.v[0] = 0.0;
    CHECK_THROWS_AS(energy(bad, 2.0, 0.5, square), PositivityViolation);
}

TEST_CASE("Hoelder and interpolation inequalities hold for the discrete norms") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Mesh mesh = Mesh::cartesian(1.0, 2.0, 8, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        const State s = random_state(mesh, rng);
        const double p = 1.0 + 4.0 * unit(rng);
        const double pc = p / (p - 1.0);
        Field prod(mesh.size());
        for (std::size_t i = 0; i < mesh.size(); ++i) prod[i] = s.u[i] * s.v[i];
        CHECK(lq_norm(prod, 1.0, mesh) <= lq_norm(s.u, p, mesh) * lq_norm(s.v, pc, mesh) * (1.0 + 1e-12));

        const double a = 1.0 + unit(rng);
        const double b = a + 5.0 * unit(rng);
        const double theta = unit(rng);
        const double q = 1.0 / (theta / a + (1.0 - theta) / b);
        const double bound = std::pow(lq_norm(s.u, a, mesh), theta) * std::pow(lq_norm(s.u, b, mesh), 1.0 - theta);
        CHECK(lq_norm(s.u, q, mesh) <= bound * (1.0 + 1e-12));

        // E <= D^{p/(p+1)} (Σ vol v^{p-r})^{1/(p+1)}
        const double pe = 1.5 + 2.0 * unit(rng);
        const double re = pe * unit(rng);
        const double e = energy(s, pe, re, mesh);
        const double d = dissipation(s, pe, re, mesh);
        const double w = static_cast<double>(brute_power_sum(s.v, nullptr, pe - re, 0.0, mesh));
        CHECK(e <= std::pow(d, pe / (pe + 1.0)) * std::pow(w, 1.0 / (pe + 1.0)) * (1.0 + 1e-12));
    }
}

TEST_CASE("gronwall check on synthetic series") {
    const ExponentPair pair{2.5, kR};
    const TimeSeries below = synthetic(pair, 20, 0.1, [](double t) { return 2.0 * std::exp(kR * t) * (t > 0 ? 0.99 : 1.0); },
                                       [](double) { return 1.0; });
    const Verdict ok = gronwall_check(below, pair, 0.05);
    CHECK(ok.passed);
    CHECK(ok.worst == doctest::Approx(1.0));
    CHECK(ok.worst_row == 0);

    const TimeSeries above = synthetic(pair, 20, 0.1, [](double t) { return std::exp(kR * t) * (1.0 + t); },
                                       [](double) { return 1.0; });
    const Verdict bad = gronwall_check(above, pair, 0.05);
    CHECK_FALSE(bad.passed);
    CHECK(bad.worst_row == 19);
    CHECK(bad.worst == doctest::Approx(2.9));

    CHECK_THROWS_AS(gronwall_check(above, ExponentPair{3.0, 1.0}, 0.05), DomainError);
}

TEST_CASE("dissipation check on synthetic series") {
    const ExponentPair pair{2.5, kR};
    // dE/dt = rE - rD exactly with D = E/2
    const TimeSeries exact = synthetic(pair, 50, 0.02, [](double t) { return std::exp(0.5 * kR * t); },
                                       [](double t) { return 0.5 * std::exp(0.5 * kR * t); });
    const Verdict ok = dissipation_check(exact, pair, 1e-3);
    CHECK(ok.passed);
    CHECK(std::abs(ok.worst) < 1e-4);

    // grows at 3r with no dissipation credit
    const TimeSeries fast = synthetic(pair, 50, 0.02, [](double t) { return std::exp(3.0 * kR * t); },
                                      [](double) { return 0.0; });
    const Verdict bad = dissipation_check(fast, pair, 0.05);
    CHECK_FALSE(bad.passed);
    CHECK(bad.worst > 0.5);

    const TimeSeries two = synthetic(pair, 2, 0.1, [](double) { return 1.0; }, [](double) { return 1.0; });
    CHECK_THROWS_AS(dissipation_check(two, pair, 0.05), InsufficientRows);
}

TEST_CASE("smoothing ratio") {
    const Mesh mesh = Mesh::cartesian(2.0, 2.0, 8, 8);
    MonitorConfig mon{{1.0, 2.0}, {}, {1.75, 3.0}, 0.05};
    TimeSeries series{mon, {}};
    for (int j = 0; j < 4; ++j) {
        State s{Field(64, 1.0), Field(64, 1.0), 0.1 * j};
        series.rows.push_back(sample(s, mesh, mon));
    }
    const std::vector<double> ratio = smoothing_ratio(series, 1.75, 1.0, 2);
    REQUIRE(ratio.size() == 4);
    for (double x : ratio) CHECK(x == doctest::Approx(std::pow(4.0, 1.0 / 1.75) / 5.0));

    CHECK_THROWS_AS(check_smoothing_exponents(3.0, 1.0, 4), ExponentConditionError);
    CHECK_THROWS_AS(check_smoothing_exponents(1.5, 2.0, 2), ExponentConditionError);
    CHECK_NOTHROW(check_smoothing_exponents(3.0, 2.0, 4));
    CHECK_THROWS_AS(smoothing_ratio(series, 3.0, 1.0, 4), ExponentConditionError);
    CHECK_THROWS_AS(smoothing_ratio(series, 2.5, 2.0, 2), DomainError);
}

TEST_CASE("monitor validation and sampling layout") {
    const double chi = 0.4;
    const double k = 1.0;
    const AdmissibleWindow w = admissible_window(2.5, chi, k);
    MonitorConfig mon{{1.0, 2.0}, {{2.5, w.midpoint()}}, {}, 0.05};
    CHECK_NOTHROW(validate_monitors(mon, chi, k));
    mon.pr_pairs[0].r = w.r_plus + 0.01;
    CHECK_THROWS_AS(validate_monitors(mon, chi, k), DomainError);
    mon.pr_pairs.clear();
    mon.q_list = {0.5};
    CHECK_THROWS_AS(validate_monitors(mon, chi, k), DomainError);

    CHECK(default_v_list({{2.5, 0.75}, {3.0, 1.25}, {2.0, 0.5}}) == std::vector<double>{1.75, 1.5});

    const Mesh mesh = Mesh::radial(2, 1.0, 10);
    const MonitorConfig full{{1.0, 3.0}, {{2.5, 0.75}, {3.0, 1.0}}, {1.75}, 0.05};
    State s{Field(10, 2.0), Field(10, 0.5), 0.3};
    const TimeSeriesRow row = sample(s, mesh, full);
    CHECK(row.t == 0.3);
    CHECK(row.lq_norms.size() == 2);
    CHECK(row.energies.size() == 2);
    CHECK(row.dissipations.size() == 2);
    CHECK(row.v_norms.size() == 1);
    CHECK(row.mass == doctest::Approx(1.0));
    CHECK(row.energies[1] == doctest::Approx(0.5 * 8.0 * 2.0));
}

#include "chemolab/harness.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "chemolab/errors.hpp"
#include "chemolab/exponents.hpp"
#include "chemolab/initial.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chemolab {

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_label(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc{} ? std::string(buf, ptr) : format_real(x);
}

std::vector<std::string> csv_columns(const MonitorConfig& monitors) {
    std::vector<std::string> cols{"t", "mass", "min_v", "max_u"};
    for (double q : monitors.q_list) cols.push_back("u_Lq_" + format_label(q));
    for (const ExponentPair& pr : monitors.pr_pairs) {
        const std::string tag = format_label(pr.p) + "_" + format_label(pr.r);
        cols.push_back("E_" + tag);
        cols.push_back("D_" + tag);
    }
    for (double s : monitors.v_list) cols.push_back("v_L" + format_label(s));
    return cols;
}

std::string timeseries_csv(const TimeSeries& series) {
    std::ostringstream out;
    const auto cols = csv_columns(series.monitors);
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const TimeSeriesRow& row : series.rows) {
        out << format_real(row.t) << "," << format_real(row.mass) << "," << format_real(row.min_v) << ","
            << format_real(row.max_u);
        for (double x : row.lq_norms) out << "," << format_real(x);
        for (std::size_t j = 0; j < row.energies.size(); ++j) {
            out << "," << format_real(row.energies[j]) << "," << format_real(row.dissipations[j]);
        }
        for (double x : row.v_norms) out << "," << format_real(x);
        out << "\n";
    }
    return out.str();
}

double RunChecks::worst_gronwall_ratio() const {
    if (pairs.empty()) return std::nan("");
    double worst = pairs.front().gronwall.worst;
    for (const PairChecks& pc : pairs) worst = std::max(worst, pc.gronwall.worst);
    return worst;
}

RunChecks evaluate_checks(const RunReport& report, int n, double tol) {
    RunChecks checks;
    const TimeSeries& series = report.series;
    for (const ExponentPair& pr : series.monitors.pr_pairs) {
        PairChecks pc{pr, gronwall_check(series, pr, tol), std::nullopt};
        if (series.rows.size() >= 3) pc.dissipation = dissipation_check(series, pr, tol);
        checks.all_passed = checks.all_passed && pc.gronwall.passed && (!pc.dissipation || pc.dissipation->passed);
        checks.pairs.push_back(pc);
    }
    for (double s : series.monitors.v_list) {
        for (double q : series.monitors.q_list) {
            try {
                check_smoothing_exponents(s, q, n);
            } catch (const ExponentConditionError&) {
                continue;
            }
            const auto ratios = smoothing_ratio(series, s, q, n);
            double worst = 0.0;
            for (double r : ratios) worst = std::max(worst, r);
            checks.smoothing.push_back({s, q, worst});
        }
    }
    checks.v_floor_held = report.v_floor_held;
    checks.all_passed = checks.all_passed && checks.v_floor_held;
    return checks;
}

RunOutcome execute(const RunConfig& config) {
    return execute(config, resolve_monitors(config));
}

RunOutcome execute(const RunConfig& config, const MonitorConfig& monitors) {
    validate(config);
    const Mesh mesh = build_mesh(config.model);
    const State initial = make_initial_state(config.initial, mesh);
    const Coefficients coeff{config.model.chi, config.model.k};

    RunOutcome outcome;
    outcome.report = run(initial, mesh, coeff, config.scheme, monitors);
    outcome.checks = evaluate_checks(outcome.report, config.model.n, monitors.tolerance_rel);
    switch (outcome.report.status) {
        case RunStatus::completed:
            outcome.exit_code = outcome.checks.all_passed ? exit_code::ok : exit_code::check_failed;
            break;
        case RunStatus::suspected_blowup: outcome.exit_code = exit_code::suspected_blowup; break;
        case RunStatus::dt_collapse: outcome.exit_code = exit_code::dt_collapse; break;
    }
    return outcome;
}

std::string report_text(const RunOutcome& outcome) {
    const RunReport& r = outcome.report;
    const RunChecks& c = outcome.checks;
    auto verdict = [](bool ok) { return ok ? "pass" : "fail"; };
    std::ostringstream out;
    out << "status: " << to_string(r.status) << "\n"
        << "t_final: " << format_real(r.t_final) << "\n"
        << "steps: " << r.steps << "\n"
        << "max_u_over_run: " << format_real(r.max_u_over_run) << "\n"
        << "min_u_over_run: " << format_real(r.min_u_over_run) << "\n"
        << "min_v_over_run: " << format_real(r.min_v_over_run) << "\n"
        << "mass_drift_rel: " << format_real(r.max_mass_drift_rel) << "\n"
        << "worst_gronwall_ratio: "
        << (c.pairs.empty() ? std::string("n/a") : format_real(c.worst_gronwall_ratio())) << "\n";
    for (const PairChecks& pc : c.pairs) {
        const std::string tag = "[p=" + format_label(pc.pair.p) + ",r=" + format_label(pc.pair.r) + "]";
        out << "gronwall" << tag << ": " << verdict(pc.gronwall.passed)
            << " worst_ratio=" << format_real(pc.gronwall.worst) << "\n";
        if (pc.dissipation) {
            out << "dissipation" << tag << ": " << verdict(pc.dissipation->passed)
                << " worst_excess=" << format_real(pc.dissipation->worst) << "\n";
        } else {
            out << "dissipation" << tag << ": skipped (fewer than 3 rows)\n";
        }
    }
    out << "v_floor: " << verdict(c.v_floor_held) << " worst_margin=" << format_real(r.worst_v_floor_margin)
        << "\n";
    for (const SmoothingSummary& s : c.smoothing) {
        out << "smoothing_ratio_max[v_L" << format_label(s.p_v) << "/u_Lq_" << format_label(s.q_u)
            << "]: " << format_real(s.max_ratio) << "\n";
    }
    out << "exit_code: " << outcome.exit_code << "\n"
        << "message: " << r.message << "\n";
    return out.str();
}

int cmd_exponents(const ExponentsOptions& o, std::ostream& out, std::ostream& err) {
    try {
        const ModelParams params(o.chi, o.k, o.n);
        const double threshold = chi_star(o.k, o.n);
        const double pm = p_max(o.chi, o.k);
        const bool admissible = strictly_below(o.chi, threshold);
        out << std::setprecision(10);
        out << "chi_star(k, n)  = " << threshold << "\n"
            << "p_max(chi, k)   = " << (std::isinf(pm) ? std::string("inf") : format_real(pm)) << "\n"
            << "h monotonicity  = " << to_string(h_monotonicity(o.chi, o.k)) << "\n"
            << "admissible      = " << (admissible ? "yes (chi < chi_star)" : "no (chi >= chi_star)") << "\n";
        if (!admissible) {
            err << "not applicable: chi = " << o.chi << " is not below chi_star = " << threshold << "\n";
            return exit_code::not_applicable;
        }

        const BootstrapChain chain = bootstrap(params, o.theta, o.max_steps);
        if (chain.coefficients) {
            out << "c0              = " << chain.coefficients->c0 << "\n"
                << "c_sup           = " << chain.coefficients->c_sup << "\n";
        } else {
            out << "c0, c_sup       = n/a (n = 2)\n";
        }
        out << "\n  l  " << std::setw(18) << "p_l" << std::setw(18) << "r_l" << std::setw(18) << "q_l"
            << std::setw(18) << "upper_used" << "\n";
        for (std::size_t l = 0; l < chain.steps.size(); ++l) {
            const BootstrapStep& s = chain.steps[l];
            out << std::setw(3) << l << "  " << std::setw(18) << s.p << std::setw(18) << s.r << std::setw(18)
                << s.q << std::setw(18) << s.upper_used << "\n";
        }
        out << "\nterminated      = " << (chain.terminated ? "yes" : "no");
        if (chain.final_q) out << ", final_q = " << *chain.final_q;
        out << "\n";

        if (o.csv) {
            std::ofstream csv(*o.csv);
            if (!csv) {
                err << "cannot write " << o.csv->string() << "\n";
                return exit_code::input_error;
            }
            csv << "l,p,r,q,upper_used\n";
            for (std::size_t l = 0; l < chain.steps.size(); ++l) {
                const BootstrapStep& s = chain.steps[l];
                csv << l << "," << format_real(s.p) << "," << format_real(s.r) << "," << format_real(s.q) << ","
                    << format_real(s.upper_used) << "\n";
            }
        }
        if (!chain.terminated) {
            err << "bootstrap did not terminate within " << o.max_steps << " steps\n";
        }
        return exit_code::ok;
    } catch (const NotApplicable& e) {
        err << "not applicable: " << e.what() << "\n";
        return exit_code::not_applicable;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }
}

namespace {

bool write_text(const std::filesystem::path& path, const std::string& text, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "cannot write " << path.string() << "\n";
        return false;
    }
    f << text;
    return static_cast<bool>(f);
}

}  // namespace

int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
            const std::vector<std::string>& overrides, std::ostream& out, std::ostream& err) {
    RunConfig config;
    MonitorConfig monitors;
    try {
        config = load_run_config(config_path);
        for (const std::string& o : overrides) apply_override(config, o);
        monitors = resolve_monitors(config);
        make_initial_state(config.initial, build_mesh(config.model));
    } catch (const std::exception& e) {
        err << config_path.string() << ": " << e.what() << "\n";
        return exit_code::input_error;
    }

    if (const auto threads = threads_from_env()) {
#ifdef _OPENMP
        omp_set_num_threads(*threads);
#endif
    }

    const RunOutcome outcome = execute(config, monitors);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (!write_text(out_dir / "timeseries.csv", timeseries_csv(outcome.report.series), err) ||
        !write_text(out_dir / "report.txt", report_text(outcome), err)) {
        return exit_code::input_error;
    }
    out << "status " << to_string(outcome.report.status) << ", t_final " << outcome.report.t_final << ", "
        << outcome.report.series.rows.size() << " rows -> " << (out_dir / "timeseries.csv").string() << "\n";
    return outcome.exit_code;
}

std::optional<int> threads_from_env() {
    const char* raw = std::getenv("CHEMOLAB_THREADS");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(raw, raw + std::char_traits<char>::length(raw), value);
    if (ec != std::errc{} || *ptr != '\0' || value < 1) return std::nullopt;
    return value;
}

namespace {

struct SweepRow {
    double chi;
    double k;
    double threshold;
    bool below;
    std::string status;
    double max_u = std::nan("");
    double worst_gronwall = std::nan("");
};

std::string csv_safe(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
    }
    return s;
}

SweepRow run_point(const SweepSpec& spec, double chi, double k) {
    SweepRow row{chi, k, chi_star(k, spec.base.model.n), false, "", std::nan(""), std::nan("")};
    row.below = strictly_below(chi, row.threshold);
    try {
        RunConfig config = spec.base;
        config.model.chi = chi;
        config.model.k = k;
        MonitorConfig monitors;
        try {
            monitors = resolve_monitors(config);
        } catch (const std::exception&) {
            if (config.monitors.pr_source != PairSource::bootstrap) throw;
            // No chain above the threshold: run with norms only.
            RunConfig bare = config;
            bare.monitors.pr_source = PairSource::none;
            monitors = resolve_monitors(bare);
        }
        const RunOutcome outcome = execute(config, monitors);
        row.status = to_string(outcome.report.status);
        row.max_u = outcome.report.max_u_over_run;
        row.worst_gronwall = outcome.checks.worst_gronwall_ratio();
    } catch (const std::exception& e) {
        row.status = "error(" + csv_safe(e.what()) + ")";
    }
    return row;
}

}  // namespace

std::string sweep_summary_csv(const SweepSpec& spec, int parallelism) {
    std::vector<std::pair<double, double>> points;
    for (double chi : spec.chi_values) {
        for (double k : spec.k_values) points.emplace_back(chi, k);
    }
    std::vector<SweepRow> rows(points.size());
    const long count = static_cast<long>(points.size());
    const int threads = std::max(1, parallelism);

#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        rows[idx] = run_point(spec, points[idx].first, points[idx].second);
    }

    std::ostringstream out;
    out << "chi,k,chi_star,below_threshold,status,max_u_over_run,worst_gronwall_ratio\n";
    for (const SweepRow& r : rows) {
        out << format_real(r.chi) << "," << format_real(r.k) << "," << format_real(r.threshold) << ","
            << (r.below ? "true" : "false") << "," << r.status << "," << format_real(r.max_u) << ","
            << format_real(r.worst_gronwall) << "\n";
    }
    return out.str();
}

int cmd_sweep(const std::filesystem::path& spec_path, const std::filesystem::path& out_dir,
              std::optional<int> parallelism, std::ostream& out, std::ostream& err) {
    SweepSpec spec;
    try {
        spec = load_sweep_spec(spec_path);
    } catch (const std::exception& e) {
        err << spec_path.string() << ": " << e.what() << "\n";
        return exit_code::input_error;
    }
    int threads = parallelism.value_or(spec.parallelism);
    if (const auto env = threads_from_env()) threads = *env;
    if (threads < 1) {
        err << "parallelism must be >= 1\n";
        return exit_code::input_error;
    }

    const std::string csv = sweep_summary_csv(spec, threads);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (!write_text(out_dir / "sweep_summary.csv", csv, err)) return exit_code::input_error;
    out << spec.chi_values.size() * spec.k_values.size() << " sweep points -> "
        << (out_dir / "sweep_summary.csv").string() << "\n";
    return exit_code::ok;
}

}  // namespace chemolab

#pragma once

// Subcommands behind the `chemolab` executable. Each returns the process
// exit code and writes human-readable output to the given streams, so the
// same code paths are exercised by the tests.
//
// Exit codes:
//   exponents  0 ok, 1 malformed input, 2 chi not below the threshold
//   run        0 completed and all checks pass, 1 config error,
//              3 completed with a failed check, 4 suspected blow-up,
//              5 time-step collapse
//   sweep      0 ok, 1 spec error

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chemolab/config.hpp"
#include "chemolab/diagnostics.hpp"
#include "chemolab/solver.hpp"

namespace chemolab {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int input_error = 1;
inline constexpr int not_applicable = 2;
inline constexpr int check_failed = 3;
inline constexpr int suspected_blowup = 4;
inline constexpr int dt_collapse = 5;
}  // namespace exit_code

/// 17 significant digits, round-trippable.
std::string format_real(double x);

/// Shortest round-trip form, used inside column names.
std::string format_label(double x);

std::vector<std::string> csv_columns(const MonitorConfig& monitors);
std::string timeseries_csv(const TimeSeries& series);

struct PairChecks {
    ExponentPair pair;
    Verdict gronwall;
    std::optional<Verdict> dissipation;  // absent with fewer than 3 rows
};

struct SmoothingSummary {
    double p_v;
    double q_u;
    double max_ratio;
};

struct RunChecks {
    std::vector<PairChecks> pairs;
    std::vector<SmoothingSummary> smoothing;
    bool v_floor_held = true;
    bool all_passed = true;

    /// max gronwall ratio over pairs; NaN without pairs.
    double worst_gronwall_ratio() const;
};

RunChecks evaluate_checks(const RunReport& report, int n, double tol);

struct RunOutcome {
    RunReport report;
    RunChecks checks;
    int exit_code = exit_code::ok;
};

/// Resolves monitors, builds mesh and initial data, runs and checks.
/// Throws on configuration problems.
RunOutcome execute(const RunConfig& config);
RunOutcome execute(const RunConfig& config, const MonitorConfig& monitors);

std::string report_text(const RunOutcome& outcome);

struct ExponentsOptions {
    double chi = 0.0;
    double k = 1.0;
    int n = 2;
    double theta = 0.5;
    int max_steps = 50;
    std::optional<std::filesystem::path> csv;
};

int cmd_exponents(const ExponentsOptions& options, std::ostream& out, std::ostream& err);

int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
            const std::vector<std::string>& overrides, std::ostream& out, std::ostream& err);

/// Sweep rows in axis order (chi outer, k inner). `parallelism` overrides
/// the spec; the CHEMOLAB_THREADS environment variable overrides both.
std::string sweep_summary_csv(const SweepSpec& spec, int parallelism);

int cmd_sweep(const std::filesystem::path& spec_path, const std::filesystem::path& out_dir,
              std::optional<int> parallelism, std::ostream& out, std::ostream& err);

/// CHEMOLAB_THREADS as a positive integer, if set.
std::optional<int> threads_from_env();

}  // namespace chemolab

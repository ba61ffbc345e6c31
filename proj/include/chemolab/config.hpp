#pragma once

// Run and sweep configuration documents.
//
// Plain-text sections of `key = value` lines; `#` starts a comment. Lists are
// comma separated, exponent pairs are written `p:r`. Unknown sections or
// keys, duplicates and out-of-range values raise ConfigError carrying the
// offending line number.
//
//   [model]     chi, k, n, geometry (cartesian2d | radial), Lx, Ly, nx, ny, R, m
//   [initial]   kind (constant_cosine | gaussian), amplitude, width, u_base,
//               v0_base, v_amplitude, v0_min
//   [scheme]    dt_safety, dt_min, t_end, blowup_factor, output_interval
//   [monitors]  q_list, pr_source (bootstrap | explicit | none), pairs,
//               v_list, theta, tolerance_rel
//   [sweep]     chi | chi_range, k | k_range, parallelism, max_points
//               (sweep documents only; ranges are start:stop:step, inclusive)

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "chemolab/diagnostics.hpp"
#include "chemolab/initial.hpp"
#include "chemolab/mesh.hpp"
#include "chemolab/solver.hpp"

namespace chemolab {

enum class GeometryKind { cartesian2d, radial };
enum class PairSource { bootstrap, explicit_pairs, none };

struct ModelSection {
    double chi = 0.5;
    double k = 1.0;
    int n = 2;
    GeometryKind geometry = GeometryKind::cartesian2d;
    double lx = 2.0;
    double ly = 2.0;
    int nx = 64;
    int ny = 64;
    double radius = 2.0;
    int shells = 128;

    bool operator==(const ModelSection&) const = default;
};

struct MonitorSection {
    std::vector<double> q_list{1.0, 2.0};
    PairSource pr_source = PairSource::bootstrap;
    std::vector<ExponentPair> pairs;
    std::vector<double> v_list;  // empty: s = p - r for each pair
    double theta = 0.5;
    double tolerance_rel = 0.05;

    bool operator==(const MonitorSection&) const = default;
};

struct RunConfig {
    ModelSection model;
    InitialCondition initial;
    SchemeConfig scheme;
    MonitorSection monitors;

    bool operator==(const RunConfig&) const = default;
};

struct SweepSpec {
    std::vector<double> chi_values;
    std::vector<double> k_values;
    int parallelism = 1;
    std::size_t max_points = 10000;
    RunConfig base;

    bool operator==(const SweepSpec&) const = default;
};

RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Applies `section.key=value` on top of a parsed config, then revalidates.
void apply_override(RunConfig& config, const std::string& assignment);

/// Inverse of parse_run_config: every key written, reals with 17 digits.
std::string serialize(const RunConfig& config);

/// Structural checks that need no exponent computations.
void validate(const RunConfig& config);

SweepSpec parse_sweep_spec(std::string_view text);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

Mesh build_mesh(const ModelSection& model);

/// Monitors for a run: pairs from the bootstrap chain (one per step), the
/// explicit list, or none. Throws NotApplicable for a bootstrap source when
/// chi is not below the threshold, DomainError/WindowUndefined for bad pairs.
MonitorConfig resolve_monitors(const RunConfig& config);

const char* to_string(GeometryKind g);
const char* to_string(PairSource s);

}  // namespace chemolab

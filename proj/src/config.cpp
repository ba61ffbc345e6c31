#include "chemolab/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "chemolab/errors.hpp"
#include "chemolab/exponents.hpp"

namespace chemolab {

namespace {

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line;
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<Entry> parse_document(std::string_view text) {
    std::vector<Entry> entries;
    std::set<std::pair<std::string, std::string>> seen;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError(line_no, "empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
        if (section.empty()) throw ConfigError(line_no, "key outside of any section");
        Entry e{section, trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)),
                line_no};
        if (e.key.empty()) throw ConfigError(line_no, "empty key");
        if (!seen.insert({e.section, e.key}).second) {
            throw ConfigError(line_no, "duplicate key '" + e.key + "' in [" + e.section + "]");
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

double parse_real(const std::string& s, int line) {
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw ConfigError(line, "expected a finite real number, got '" + s + "'");
    }
    return value;
}

long parse_integer(const std::string& s, int line) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError(line, "expected an integer, got '" + s + "'");
    }
    return value;
}

int parse_int(const std::string& s, int line) {
    const long v = parse_integer(s, line);
    if (v < -1000000000L || v > 1000000000L) throw ConfigError(line, "integer out of range: " + s);
    return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string current;
    std::istringstream in(s);
    while (std::getline(in, current, sep)) parts.push_back(trim(current));
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

std::vector<double> parse_real_list(const std::string& s, int line) {
    std::vector<double> out;
    if (s.empty()) return out;
    for (const std::string& item : split(s, ',')) out.push_back(parse_real(item, line));
    return out;
}

std::vector<ExponentPair> parse_pairs(const std::string& s, int line) {
    std::vector<ExponentPair> out;
    if (s.empty()) return out;
    for (const std::string& item : split(s, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) throw ConfigError(line, "pairs are written p:r, got '" + item + "'");
        out.push_back({parse_real(parts[0], line), parse_real(parts[1], line)});
    }
    return out;
}

std::vector<double> parse_range(const std::string& s, int line) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw ConfigError(line, "ranges are written start:stop:step");
    const double start = parse_real(parts[0], line);
    const double stop = parse_real(parts[1], line);
    const double step = parse_real(parts[2], line);
    if (!(step > 0.0)) throw ConfigError(line, "range step must be > 0");
    std::vector<double> out;
    if (stop < start) return out;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 10000000) throw ConfigError(line, "range has too many points");
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

std::string real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + real(xs[i]);
    return out;
}

GeometryKind parse_geometry(const std::string& s, int line) {
    if (s == "cartesian2d") return GeometryKind::cartesian2d;
    if (s == "radial") return GeometryKind::radial;
    throw ConfigError(line, "geometry must be cartesian2d or radial, got '" + s + "'");
}

PairSource parse_pair_source(const std::string& s, int line) {
    if (s == "bootstrap") return PairSource::bootstrap;
    if (s == "explicit") return PairSource::explicit_pairs;
    if (s == "none") return PairSource::none;
    throw ConfigError(line, "pr_source must be bootstrap, explicit or none, got '" + s + "'");
}

void apply_entry(RunConfig& c, const Entry& e) {
    const std::string& k = e.key;
    const std::string& v = e.value;
    const int ln = e.line;
    auto unknown = [&] { throw ConfigError(ln, "unknown key '" + k + "' in [" + e.section + "]"); };

    if (e.section == "model") {
        auto& m = c.model;
        if (k == "chi") m.chi = parse_real(v, ln);
        else if (k == "k") m.k = parse_real(v, ln);
        else if (k == "n") m.n = parse_int(v, ln);
        else if (k == "geometry") m.geometry = parse_geometry(v, ln);
        else if (k == "Lx") m.lx = parse_real(v, ln);
        else if (k == "Ly") m.ly = parse_real(v, ln);
        else if (k == "nx") m.nx = parse_int(v, ln);
        else if (k == "ny") m.ny = parse_int(v, ln);
        else if (k == "R") m.radius = parse_real(v, ln);
        else if (k == "m") m.shells = parse_int(v, ln);
        else unknown();
    } else if (e.section == "initial") {
        auto& ic = c.initial;
        if (k == "kind") {
            try {
                ic.kind = parse_initial_kind(v);
            } catch (const DomainError& err) {
                throw ConfigError(ln, err.what());
            }
        } else if (k == "amplitude") ic.amplitude = parse_real(v, ln);
        else if (k == "width") ic.width = parse_real(v, ln);
        else if (k == "u_base") ic.u_base = parse_real(v, ln);
        else if (k == "v0_base") ic.v0_base = parse_real(v, ln);
        else if (k == "v_amplitude") ic.v_amplitude = parse_real(v, ln);
        else if (k == "v0_min") ic.v0_min = parse_real(v, ln);
        else unknown();
    } else if (e.section == "scheme") {
        auto& s = c.scheme;
        if (k == "dt_safety") s.dt_safety = parse_real(v, ln);
        else if (k == "dt_min") s.dt_min = parse_real(v, ln);
        else if (k == "t_end") s.t_end = parse_real(v, ln);
        else if (k == "blowup_factor") s.blowup_factor = parse_real(v, ln);
        else if (k == "output_interval") s.output_interval = parse_real(v, ln);
        else unknown();
    } else if (e.section == "monitors") {
        auto& mo = c.monitors;
        if (k == "q_list") mo.q_list = parse_real_list(v, ln);
        else if (k == "pr_source") mo.pr_source = parse_pair_source(v, ln);
        else if (k == "pairs") mo.pairs = parse_pairs(v, ln);
        else if (k == "v_list") mo.v_list = parse_real_list(v, ln);
        else if (k == "theta") mo.theta = parse_real(v, ln);
        else if (k == "tolerance_rel") mo.tolerance_rel = parse_real(v, ln);
        else unknown();
    } else {
        throw ConfigError(ln, "unknown section [" + e.section + "]");
    }
}

// Validation with the line of the key that set each value, when known.
void validate_with_lines(const RunConfig& c, const std::map<std::string, int>& lines) {
    auto fail = [&](const std::string& key, const std::string& msg) {
        const auto it = lines.find(key);
        throw ConfigError(it == lines.end() ? 0 : it->second, key + ": " + msg);
    };
    const auto& m = c.model;
    if (!(m.chi >= 0.0)) fail("model.chi", "must be >= 0");
    if (!(m.k > 0.0)) fail("model.k", "must be > 0");
    if (m.n < 2) fail("model.n", "must be >= 2");
    if (m.geometry == GeometryKind::cartesian2d) {
        if (m.n != 2) fail("model.n", "cartesian2d geometry requires n = 2");
        if (!(m.lx > 0.0)) fail("model.Lx", "must be > 0");
        if (!(m.ly > 0.0)) fail("model.Ly", "must be > 0");
        if (m.nx < 4) fail("model.nx", "must be >= 4");
        if (m.ny < 4) fail("model.ny", "must be >= 4");
    } else {
        if (!(m.radius > 0.0)) fail("model.R", "must be > 0");
        if (m.shells < 8) fail("model.m", "must be >= 8");
    }

    const auto& ic = c.initial;
    if (!(ic.width > 0.0)) fail("initial.width", "must be > 0");
    if (!(ic.v0_min > 0.0)) fail("initial.v0_min", "must be > 0");
    if (ic.u_base < 0.0) fail("initial.u_base", "must be >= 0");

    const auto& s = c.scheme;
    if (!(s.dt_safety > 0.0 && s.dt_safety <= 1.0)) fail("scheme.dt_safety", "must lie in (0, 1]");
    if (!(s.dt_min > 0.0)) fail("scheme.dt_min", "must be > 0");
    if (!(s.t_end > 0.0)) fail("scheme.t_end", "must be > 0");
    if (!(s.blowup_factor > 1.0)) fail("scheme.blowup_factor", "must be > 1");
    if (!(s.output_interval > 0.0)) fail("scheme.output_interval", "must be > 0");

    const auto& mo = c.monitors;
    for (double q : mo.q_list) {
        if (!(q >= 1.0)) fail("monitors.q_list", "entries must be >= 1");
    }
    for (double x : mo.v_list) {
        if (!(x >= 1.0)) fail("monitors.v_list", "entries must be >= 1");
    }
    if (!(mo.theta > 0.0 && mo.theta < 1.0)) fail("monitors.theta", "must lie in (0, 1)");
    if (!(mo.tolerance_rel >= 0.0)) fail("monitors.tolerance_rel", "must be >= 0");
    if (mo.pr_source == PairSource::explicit_pairs) {
        if (mo.pairs.empty()) fail("monitors.pairs", "pr_source = explicit needs at least one pair");
        if (!(m.chi > 0.0)) fail("monitors.pairs", "explicit pairs need chi > 0 for window validation");
        try {
            validate_monitors(MonitorConfig{{}, mo.pairs, {}, mo.tolerance_rel}, m.chi, m.k);
        } catch (const std::exception& err) {
            fail("monitors.pairs", err.what());
        }
    } else if (!mo.pairs.empty()) {
        fail("monitors.pairs", "pairs are only read when pr_source = explicit");
    }
}

std::map<std::string, int> key_lines(const std::vector<Entry>& entries) {
    std::map<std::string, int> lines;
    for (const Entry& e : entries) lines[e.section + "." + e.key] = e.line;
    return lines;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

const char* to_string(GeometryKind g) {
    return g == GeometryKind::radial ? "radial" : "cartesian2d";
}

const char* to_string(PairSource s) {
    switch (s) {
        case PairSource::bootstrap: return "bootstrap";
        case PairSource::explicit_pairs: return "explicit";
        case PairSource::none: return "none";
    }
    return "?";
}

void validate(const RunConfig& config) { validate_with_lines(config, {}); }

RunConfig parse_run_config(std::string_view text) {
    const auto entries = parse_document(text);
    RunConfig config;
    for (const Entry& e : entries) apply_entry(config, e);
    validate_with_lines(config, key_lines(entries));
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return parse_run_config(read_file(path));
}

void apply_override(RunConfig& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
        throw ConfigError(0, "override must look like section.key=value, got '" + assignment + "'");
    }
    Entry e{trim(assignment.substr(0, dot)), trim(assignment.substr(dot + 1, eq - dot - 1)),
            trim(assignment.substr(eq + 1)), 0};
    apply_entry(config, e);
    validate(config);
}

std::string serialize(const RunConfig& c) {
    std::ostringstream out;
    const auto& m = c.model;
    out << "[model]\n"
        << "chi = " << real(m.chi) << "\n"
        << "k = " << real(m.k) << "\n"
        << "n = " << m.n << "\n"
        << "geometry = " << to_string(m.geometry) << "\n"
        << "Lx = " << real(m.lx) << "\n"
        << "Ly = " << real(m.ly) << "\n"
        << "nx = " << m.nx << "\n"
        << "ny = " << m.ny << "\n"
        << "R = " << real(m.radius) << "\n"
        << "m = " << m.shells << "\n\n";
    const auto& ic = c.initial;
    out << "[initial]\n"
        << "kind = " << to_string(ic.kind) << "\n"
        << "amplitude = " << real(ic.amplitude) << "\n"
        << "width = " << real(ic.width) << "\n"
        << "u_base = " << real(ic.u_base) << "\n"
        << "v0_base = " << real(ic.v0_base) << "\n"
        << "v_amplitude = " << real(ic.v_amplitude) << "\n"
        << "v0_min = " << real(ic.v0_min) << "\n\n";
    const auto& s = c.scheme;
    out << "[scheme]\n"
        << "dt_safety = " << real(s.dt_safety) << "\n"
        << "dt_min = " << real(s.dt_min) << "\n"
        << "t_end = " << real(s.t_end) << "\n"
        << "blowup_factor = " << real(s.blowup_factor) << "\n"
        << "output_interval = " << real(s.output_interval) << "\n\n";
    const auto& mo = c.monitors;
    out << "[monitors]\n"
        << "q_list = " << join(mo.q_list) << "\n"
        << "pr_source = " << to_string(mo.pr_source) << "\n";
    if (!mo.pairs.empty()) {
        out << "pairs = ";
        for (std::size_t i = 0; i < mo.pairs.size(); ++i) {
            out << (i ? ", " : "") << real(mo.pairs[i].p) << ":" << real(mo.pairs[i].r);
        }
        out << "\n";
    }
    out << "v_list = " << join(mo.v_list) << "\n"
        << "theta = " << real(mo.theta) << "\n"
        << "tolerance_rel = " << real(mo.tolerance_rel) << "\n";
    return out.str();
}

SweepSpec parse_sweep_spec(std::string_view text) {
    const auto entries = parse_document(text);
    SweepSpec spec;
    bool chi_set = false;
    bool k_set = false;
    int sweep_line = 0;
    std::vector<Entry> base_entries;
    for (const Entry& e : entries) {
        if (e.section != "sweep") {
            base_entries.push_back(e);
            continue;
        }
        sweep_line = e.line;
        auto set_axis = [&](std::vector<double>& axis, bool& flag, std::vector<double> values) {
            if (flag) throw ConfigError(e.line, "axis given twice (list and range)");
            flag = true;
            axis = std::move(values);
        };
        if (e.key == "chi") set_axis(spec.chi_values, chi_set, parse_real_list(e.value, e.line));
        else if (e.key == "chi_range") set_axis(spec.chi_values, chi_set, parse_range(e.value, e.line));
        else if (e.key == "k") set_axis(spec.k_values, k_set, parse_real_list(e.value, e.line));
        else if (e.key == "k_range") set_axis(spec.k_values, k_set, parse_range(e.value, e.line));
        else if (e.key == "parallelism") spec.parallelism = parse_int(e.value, e.line);
        else if (e.key == "max_points") {
            const long v = parse_integer(e.value, e.line);
            if (v < 1) throw ConfigError(e.line, "max_points must be >= 1");
            spec.max_points = static_cast<std::size_t>(v);
        } else {
            throw ConfigError(e.line, "unknown key '" + e.key + "' in [sweep]");
        }
    }
    for (const Entry& e : base_entries) apply_entry(spec.base, e);
    validate_with_lines(spec.base, key_lines(base_entries));

    if (!chi_set) spec.chi_values = {spec.base.model.chi};
    if (!k_set) spec.k_values = {spec.base.model.k};
    if (spec.chi_values.empty() || spec.k_values.empty()) throw ConfigError(sweep_line, "empty sweep");
    if (spec.parallelism < 1) throw ConfigError(sweep_line, "parallelism must be >= 1");
    if (spec.chi_values.size() * spec.k_values.size() > spec.max_points) {
        throw ConfigError(sweep_line, "sweep has " + std::to_string(spec.chi_values.size() * spec.k_values.size()) +
                                          " points, above max_points = " + std::to_string(spec.max_points));
    }
    for (double chi : spec.chi_values) {
        if (!(chi >= 0.0)) throw ConfigError(sweep_line, "chi axis values must be >= 0");
    }
    for (double k : spec.k_values) {
        if (!(k > 0.0)) throw ConfigError(sweep_line, "k axis values must be > 0");
    }
    return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
    return parse_sweep_spec(read_file(path));
}

Mesh build_mesh(const ModelSection& model) {
    if (model.geometry == GeometryKind::radial) return Mesh::radial(model.n, model.radius, model.shells);
    return Mesh::cartesian(model.lx, model.ly, model.nx, model.ny);
}

MonitorConfig resolve_monitors(const RunConfig& config) {
    const auto& mo = config.monitors;
    MonitorConfig out;
    out.q_list = mo.q_list;
    out.tolerance_rel = mo.tolerance_rel;
    if (mo.pr_source == PairSource::bootstrap) {
        const BootstrapChain chain =
            bootstrap(ModelParams(config.model.chi, config.model.k, config.model.n), mo.theta);
        for (const BootstrapStep& s : chain.steps) out.pr_pairs.push_back({s.p, s.r});
    } else if (mo.pr_source == PairSource::explicit_pairs) {
        out.pr_pairs = mo.pairs;
    }
    out.v_list = mo.v_list.empty() ? default_v_list(out.pr_pairs) : mo.v_list;
    if (!out.pr_pairs.empty()) validate_monitors(out, config.model.chi, config.model.k);
    return out;
}

}  // namespace chemolab

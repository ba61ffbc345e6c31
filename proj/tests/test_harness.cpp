#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "chemolab/harness.hpp"
#include "doctest.h"

using namespace chemolab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("chemolab_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write(const fs::path& dir, const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kSmallRadial = R"([model]
chi = 0.3
k = 1
n = 3
geometry = radial
R = 1
m = 16
[initial]
amplitude = 1
u_base = 0.5
width = 0.3
[scheme]
t_end = 0.2
output_interval = 0.02
[monitors]
q_list = 1, 2
)";

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(2.0) == "2");
    CHECK(format_label(0.1) == "0.1");
    CHECK(format_label(2.5) == "2.5");
    CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("csv schema") {
    const MonitorConfig mon{{1.0, 2.0}, {{2.5, 0.75}}, {1.75}, 0.05};
    const std::vector<std::string> expected{"t", "mass", "min_v", "max_u", "u_Lq_1", "u_Lq_2",
                                            "E_2.5_0.75", "D_2.5_0.75", "v_L1.75"};
    CHECK(csv_columns(mon) == expected);

    TimeSeries series{mon, {}};
    series.rows.push_back(TimeSeriesRow{0.0, 1.0, 0.5, 2.0, {1.0, 1.5}, {3.0}, {4.0}, {0.25}});
    const std::string csv = timeseries_csv(series);
    CHECK(csv == "t,mass,min_v,max_u,u_Lq_1,u_Lq_2,E_2.5_0.75,D_2.5_0.75,v_L1.75\n0,1,0.5,2,1,1.5,3,4,0.25\n");
}

TEST_CASE("exponents subcommand") {
    const fs::path dir = scratch("exponents");
    std::ostringstream out, err;
    ExponentsOptions o;
    o.chi = 0.4;
    o.k = 1.0;
    o.n = 6;
    o.csv = dir / "chain.csv";
    CHECK(cmd_exponents(o, out, err) == exit_code::ok);
    CHECK(out.str().find("admissible      = yes") != std::string::npos);
    const std::string csv = slurp(dir / "chain.csv");
    CHECK(csv.rfind("l,p,r,q,upper_used\n", 0) == 0);
    CHECK(csv.find("\n0,1.5,") != std::string::npos);
    CHECK(csv.find("\n1,2.75,") != std::string::npos);
    CHECK(csv.find("\n2,4.5,") != std::string::npos);

    o.csv.reset();
    o.chi = 2.0;
    CHECK(cmd_exponents(o, out, err) == exit_code::not_applicable);
    o.chi = 0.4;
    o.n = 1;
    CHECK(cmd_exponents(o, out, err) == exit_code::input_error);
    o.n = 3;
    o.k = -1.0;
    CHECK(cmd_exponents(o, out, err) == exit_code::input_error);
    o.k = 1.0;
    o.theta = 1.5;
    CHECK(cmd_exponents(o, out, err) == exit_code::input_error);
}

TEST_CASE("run subcommand: steady state and heat flow") {
    const fs::path dir = scratch("run_steady");
    std::ostringstream out, err;
    const fs::path cfg = write(dir, "steady.ini",
                               "[model]\nnx = 8\nny = 8\n[initial]\namplitude = 0\nu_base = 1\n"
                               "[scheme]\nt_end = 0.5\noutput_interval = 0.1\n");
    CHECK(cmd_run(cfg, dir / "out", {}, out, err) == exit_code::ok);
    const std::string report = slurp(dir / "out" / "report.txt");
    CHECK(report.find("status: completed\n") != std::string::npos);
    CHECK(report.find("exit_code: 0\n") != std::string::npos);
    CHECK(report.find("gronwall[p=") != std::string::npos);
    const std::string csv = slurp(dir / "out" / "timeseries.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);

    const fs::path heat = write(dir, "heat.ini",
                                "[model]\nchi = 0\nnx = 8\nny = 8\n[scheme]\nt_end = 0.2\n"
                                "[monitors]\npr_source = none\n");
    CHECK(cmd_run(heat, dir / "heat", {}, out, err) == exit_code::ok);
    CHECK(slurp(dir / "heat" / "report.txt").find("worst_gronwall_ratio: n/a") != std::string::npos);
}

TEST_CASE("run subcommand: exit codes") {
    const fs::path dir = scratch("run_codes");
    std::ostringstream out, err;
    const fs::path cfg = write(dir, "small.ini", kSmallRadial);
    CHECK(cmd_run(cfg, dir / "a", {}, out, err) == exit_code::ok);
    CHECK(cmd_run(cfg, dir / "b", {"scheme.dt_min=1"}, out, err) == exit_code::dt_collapse);
    CHECK(cmd_run(cfg, dir / "c", {"model.chi=4", "monitors.pr_source=none", "initial.amplitude=0",
                                   "initial.u_base=1", "initial.v_amplitude=5", "initial.width=0.2",
                                   "scheme.blowup_factor=1.5", "scheme.t_end=1"},
                  out, err) == exit_code::suspected_blowup);
    CHECK(cmd_run(cfg, dir / "d", {"model.chi=4"}, out, err) == exit_code::input_error);
    CHECK(cmd_run(cfg, dir / "e", {"model.bogus=1"}, out, err) == exit_code::input_error);
    CHECK(cmd_run(dir / "missing.ini", dir / "f", {}, out, err) == exit_code::input_error);
    CHECK(cmd_run(write(dir, "bad.ini", "[model]\nchi = x\n"), dir / "g", {}, out, err) == exit_code::input_error);
    CHECK(err.str().find("line 2") != std::string::npos);
}

TEST_CASE("execute reports check outcomes") {
    RunConfig c = parse_run_config(kSmallRadial);
    const RunOutcome o = execute(c);
    CHECK(o.report.status == RunStatus::completed);
    CHECK(o.exit_code == exit_code::ok);
    REQUIRE_FALSE(o.checks.pairs.empty());
    for (const PairChecks& pc : o.checks.pairs) {
        CHECK(pc.gronwall.passed);
        REQUIRE(pc.dissipation.has_value());
        CHECK(pc.dissipation->passed);
    }
    CHECK(o.checks.worst_gronwall_ratio() <= 1.05);

    c.scheme.t_end = 0.01;
    c.scheme.output_interval = 1.0;
    const RunOutcome two = execute(c);
    CHECK(two.report.series.rows.size() == 2);
    CHECK_FALSE(two.checks.pairs.front().dissipation.has_value());
    CHECK(report_text(two).find("skipped") != std::string::npos);
}

TEST_CASE("sweep subcommand") {
    const fs::path dir = scratch("sweep");
    std::ostringstream out, err;
    const std::string base = std::string(kSmallRadial) + "[sweep]\nchi = 0.1, 0.3, 2\nk = 0.5, 1\n";
    const fs::path spec = write(dir, "sweep.ini", base);
    CHECK(cmd_sweep(spec, dir / "p1", 1, out, err) == exit_code::ok);
    CHECK(cmd_sweep(spec, dir / "p4", 4, out, err) == exit_code::ok);
    const std::string a = slurp(dir / "p1" / "sweep_summary.csv");
    const std::string b = slurp(dir / "p4" / "sweep_summary.csv");
    CHECK(a == b);
    CHECK(std::count(a.begin(), a.end(), '\n') == 7);
    CHECK(a.rfind("chi,k,chi_star,below_threshold,status,max_u_over_run,worst_gronwall_ratio\n", 0) == 0);
    CHECK(a.find(",false,") != std::string::npos);
    CHECK(a.find("error(") == std::string::npos);

    const fs::path empty = write(dir, "empty.ini", "[sweep]\nchi_range = 1:0:0.1\n");
    CHECK(cmd_sweep(empty, dir / "e", std::nullopt, out, err) == exit_code::input_error);
    CHECK(cmd_sweep(spec, dir / "z", 0, out, err) == exit_code::input_error);
}

// End-to-end checks of the plasmon-chain executable: exit codes, CSV layout,
// summary lines, config-file merging, and run-to-run determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const std::string& work_dir() {
    static const std::string dir = [] {
        char tmpl[] = "/tmp/plasmon-cli-XXXXXX";
        if (mkdtemp(tmpl) == nullptr) {
            std::perror("mkdtemp");
            std::abort();
        }
        return std::string(tmpl);
    }();
    return dir;
}

// Runs the CLI through /bin/sh (so env-var prefixes work) and captures both
// streams. WEXITSTATUS gives the documented 0/1/2 code.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string out_path = work_dir() + "/stdout.txt";
    const std::string err_path = work_dir() + "/stderr.txt";
    std::string cmd;
    if (!env_prefix.empty()) cmd += env_prefix + " ";
    cmd += std::string(PLASMON_CLI_PATH) + " " + args;
    cmd += " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

double num(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

} // namespace

TEST_CASE("spectrum writes the documented CSV") {
    const std::string csv = work_dir() + "/spectrum.csv";
    const RunResult r = run_cli("spectrum --n 1 --gamma 0 --omega 0.9:1.1:21 --out " + csv);
    CHECK(r.exit_code == 0);
    CHECK(starts_with(r.out, "spectrum: wrote 21 rows to " + csv));

    const std::string text = slurp(csv);
    REQUIRE(!text.empty());
    CHECK(text.back() == '\n');
    const auto lines = lines_of(text);
    REQUIRE(lines.size() == 22);
    CHECK(lines[0] == "omega_over_omega0,T2,argT,R2,loss_total");
    for (std::size_t i = 1; i < lines.size(); ++i)
        CHECK(fields_of(lines[i]).size() == 5);
}

TEST_CASE("values render with twelve significant digits") {
    // Single undamped particle driven on resonance transmits perfectly, so the
    // middle row must start with exactly rendered ones.
    const std::string csv = work_dir() + "/exact.csv";
    const RunResult r = run_cli("spectrum --n 1 --gamma 0 --omega 0.9:1.1:3 --out " + csv);
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 4);
    CHECK(starts_with(lines[1], "0.900000000000,"));
    CHECK(starts_with(lines[2], "1.00000000000,1.00000000000,"));
    CHECK(starts_with(lines[3], "1.10000000000,"));
}

TEST_CASE("reruns are byte-identical") {
    const std::string a = work_dir() + "/rerun_a.csv";
    const std::string b = work_dir() + "/rerun_b.csv";
    const std::string args = "spectrum --n 3 --gamma 0.0158 --omega 0.8:1.2:41 --out ";
    REQUIRE(run_cli(args + a).exit_code == 0);
    REQUIRE(run_cli(args + b).exit_code == 0);
    const std::string ta = slurp(a);
    REQUIRE(!ta.empty());
    CHECK(ta == slurp(b));
}

TEST_CASE("invalid input exits with code 1") {
    SUBCASE("bad chain size") {
        const RunResult r = run_cli("spectrum --n 0 --out " + work_dir() + "/x.csv");
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("error:") != std::string::npos);
    }
    SUBCASE("inverted grid") {
        const RunResult r = run_cli("spectrum --omega 1.1:0.9:5 --out " + work_dir() + "/x.csv");
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("--omega") != std::string::npos);
    }
    SUBCASE("unknown flag") {
        const RunResult r = run_cli("spectrum --bogus 3");
        CHECK(r.exit_code == 1);
    }
    SUBCASE("no subcommand prints help") {
        const RunResult r = run_cli("");
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("Usage") != std::string::npos);
    }
    SUBCASE("unwritable output path") {
        const RunResult r = run_cli("spectrum --omega 0.9:1.1:3 --out /nonexistent-dir/x.csv");
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("cannot open output file") != std::string::npos);
    }
}

TEST_CASE("numerical failure exits with code 2") {
    // A fully decoupled lossless particle driven exactly on resonance leaves
    // the system matrix singular.
    const RunResult r = run_cli(
        "--si spectrum --n 1 --gin 0 --gout 0 --gamma 0 --omega 4e15:6e15:3 --out " +
        work_dir() + "/sing.csv");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("--help exits cleanly") {
    const RunResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("Usage") != std::string::npos);
}

TEST_CASE("interference --minimize reports the optimum in the summary") {
    const std::string csv = work_dir() + "/intf.csv";
    const RunResult r =
        run_cli("interference --n 3 --gamma 0.0158 --gin 0.05:0.1:6 --minimize --out " + csv);
    REQUIRE(r.exit_code == 0);

    const std::string key = "g_opt/g_np=";
    const std::size_t pos = r.out.find(key);
    REQUIRE(pos != std::string::npos);
    double gopt = 0.0, p1 = -1.0;
    REQUIRE(std::sscanf(r.out.c_str() + pos, "g_opt/g_np=%lf P1=%lf", &gopt, &p1) == 2);
    CHECK(std::abs(gopt - 0.1543) <= 1e-3);
    CHECK(std::abs(p1 - 0.012) <= 2e-3);

    const auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "gin_over_abs_gnp,p20,p02,p11,p10,p01,p00,P0,P1,P2");
}

TEST_CASE("config file fills defaults and flags win") {
    const std::string cfg = work_dir() + "/run.cfg";
    {
        std::ofstream f(cfg);
        f << "[spectrum]\n"
          << "n = 2\n"
          << "omega = 0.9:1.1:11\n";
    }
    const std::string a = work_dir() + "/cfg_a.csv";
    const RunResult ra = run_cli("--config " + cfg + " spectrum --out " + a);
    REQUIRE(ra.exit_code == 0);
    CHECK(lines_of(slurp(a)).size() == 12);

    const std::string b = work_dir() + "/cfg_b.csv";
    const RunResult rb = run_cli("--config " + cfg + " spectrum --omega 0.9:1.1:5 --out " + b);
    REQUIRE(rb.exit_code == 0);
    CHECK(lines_of(slurp(b)).size() == 6);
}

TEST_CASE("materials table has the fixed coupling ratio") {
    const std::string csv = work_dir() + "/materials.csv";
    const RunResult r = run_cli("materials --d 3:8:6 --out " + csv);
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "d_over_R,omega_I_over_omega0,gT_over_omega0,gL_over_omega0");
    const auto row = fields_of(lines[1]);
    REQUIRE(row.size() == 4);
    CHECK(row[0] == "3.00000000000");
    CHECK(num(row[3]) == doctest::Approx(-2.0 * num(row[2])).epsilon(1e-9));
}

TEST_CASE("dispersion summary reports the linear bandwidth") {
    const std::string csv = work_dir() + "/dispersion.csv";
    const RunResult r = run_cli("dispersion --omega 0.9:1.1:101 --out " + csv);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("linear_bandwidth_over_omega0=") != std::string::npos);
    const auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 102);
    CHECK(lines[0] == "omega_over_omega0,kd,vg_m_per_s,v_tilde");
}

TEST_CASE("wire table tracks the bound mode") {
    const std::string csv = work_dir() + "/wire.csv";
    const RunResult r = run_cli("wire --omega 0.3:0.5:5 --out " + csv);
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] ==
          "omega_over_omega0,k_photon_over_k0,k_flat_re_over_k0,"
          "k_flat_im_over_k0,n_wire_re,n_wire_im");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = fields_of(lines[i]);
        REQUIRE(row.size() == 6);
        CHECK(num(row[4]) > 1.0);   // bound mode lies beyond the light line
        CHECK(num(row[5]) >= 0.0);  // lossy metal: decaying, never growing
    }
}

TEST_CASE("loss-sweep rows are ordered and monotone in the loss") {
    const std::string csv = work_dir() + "/sweep.csv";
    const RunResult r = run_cli("loss-sweep --gamma 0:0.02:3 --out " + csv);
    REQUIRE(r.exit_code == 0);
    CHECK(starts_with(r.out, "loss-sweep: wrote 3 rows to "));
    const auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] ==
          "gamma_over_omega0,g_opt_over_abs_gnp,P0,P1_min,P2,R2,T2,endpoint_warning");
    double prev = -1.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = fields_of(lines[i]);
        REQUIRE(row.size() == 8);
        const double p1 = num(row[3]);
        CHECK(p1 >= prev - 1e-12);
        prev = p1;
    }
    CHECK(num(fields_of(lines[1])[3]) <= 1e-9); // lossless chain loses nothing
}

TEST_CASE("fidelity-map output is independent of the worker count") {
    const std::string args =
        "fidelity-map --n 3 --sigma 0.01:0.05:3 --gin 0.05:0.2:4 --quad-points 201 --out ";
    const std::string a = work_dir() + "/map_t1.csv";
    const std::string b = work_dir() + "/map_t4.csv";
    const RunResult ra = run_cli(args + a, "PLASMON_CHAIN_THREADS=1");
    const RunResult rb = run_cli(args + b, "PLASMON_CHAIN_THREADS=4");
    REQUIRE(ra.exit_code == 0);
    REQUIRE(rb.exit_code == 0);
    CHECK(ra.out.find("max=") != std::string::npos);

    const std::string ta = slurp(a);
    REQUIRE(!ta.empty());
    CHECK(ta == slurp(b));
    CHECK(lines_of(ta).size() == 13);
    CHECK(lines_of(ta)[0] == "sigma_over_omega0,gin_over_abs_gnp,avg_fidelity");
}

TEST_CASE("fidelity-map contour output is optional and well-formed") {
    const std::string csv = work_dir() + "/map_c.csv";
    const std::string contour = work_dir() + "/contour.csv";
    const RunResult r = run_cli(
        "fidelity-map --n 3 --sigma 0.01:0.05:3 --gin 0.05:0.2:4 --quad-points 201 "
        "--contour-out " + contour + " --out " + csv);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("contour_segments=") != std::string::npos);
    const auto lines = lines_of(slurp(contour));
    REQUIRE(!lines.empty());
    CHECK(lines[0] ==
          "sigma_a_over_omega0,gin_a_over_abs_gnp,sigma_b_over_omega0,gin_b_over_abs_gnp");
    for (std::size_t i = 1; i < lines.size(); ++i)
        CHECK(fields_of(lines[i]).size() == 4);
}

#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tdho_cli/app.hpp"
#include "tdho_cli/config.hpp"
#include "tdho_cli/csv.hpp"
#include "tdho_cli/run.hpp"

namespace fs = std::filesystem;
using namespace tdho::cli;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("tdho_cli_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    args.insert(args.begin(), "tdho");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

double num(const std::string& s) { return std::stod(s); }

}  // namespace

TEST(Csv, ShortestRoundTrip) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(-2.5e-300), "-2.5e-300");
    for (double v : {std::sqrt(2.0), 1.0 / 3.0, 6.02214076e23, 4.9e-324}) {
        const std::string s = format_number(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        EXPECT_EQ(back, v);
    }
}

TEST(Config, PresetsPinParameters) {
    const auto e1 = preset("example1");
    EXPECT_EQ(e1.profile.kind, tdho::ProfileKind::TanhStep);
    EXPECT_EQ(e1.profile.omega0, 10.0);
    EXPECT_EQ(e1.profile.omega_target, 100.0);
    EXPECT_EQ(e1.profile.kappa, 5.0);
    EXPECT_EQ(e1.t_min, -2.0);
    EXPECT_EQ(e1.t_max, 2.0);
    EXPECT_EQ(e1.n_out, 1201u);
    EXPECT_EQ(e1.N, (std::vector<int>{0, 1, 8}));
    const auto e2 = preset("example2");
    EXPECT_EQ(e2.profile.omega_target, std::sqrt(102.0));
    EXPECT_EQ(e2.t_min, -3.0);
    EXPECT_EQ(e2.n_out, 1201u);
    EXPECT_THROW((void)preset("example3"), UsageError);
}

TEST(Config, JsonRoundTrip) {
    auto c = preset("example2");
    c.reference_time = -1.0;
    c.emit.temps = false;
    const auto back = config_from_json(config_to_json(c));
    EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Config, FieldLevelErrors) {
    try {
        (void)config_from_json(nlohmann::json::parse(R"({"grid": {"t_mn": 1}})"));
        FAIL();
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("grid.t_mn"), std::string::npos);
    }
    try {
        (void)config_from_json(nlohmann::json::parse(R"({"profile": {"kappa": "fast"}})"));
        FAIL();
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("profile.kappa"), std::string::npos);
    }
    RunConfig c;
    c.t_min = 0.5;
    EXPECT_THROW(validate(c), UsageError);
    c = RunConfig{};
    c.tail_tol = 1e-2;
    EXPECT_THROW(validate(c), UsageError);
    c = RunConfig{};
    c.rel_tol = 1e-15;
    EXPECT_THROW(validate(c), UsageError);
}

TEST(Cli, ConstantProfileGivesPointMassesAndNoHeat) {
    TempDir d("const");
    ASSERT_EQ(cli({"simulate", "--profile", "constant", "--omega0", "3", "--N", "2", "-o", d.path.string()}), 0);
    for (const char* rep : {"initial", "diagonal"}) {
        for (const auto& row : read_csv(d.path / (std::string("transitions_") + rep + "_N2.csv"))) {
            if (row[0] == "t") continue;
            EXPECT_EQ(num(row[3]), row[2] == "2" ? 1.0 : 0.0);
        }
    }
    const auto rows = read_csv(d.path / "thermo_N2.csv");
    const auto& header = rows.front();
    for (std::size_t r = 1; r < rows.size(); ++r)
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c].rfind("Q", 0) == 0 || header[c].rfind("W", 0) == 0) EXPECT_EQ(num(rows[r][c]), 0.0);
}

TEST(Cli, FlagsOverrideConfigFile) {
    TempDir d("override");
    const fs::path cfg = d.path / "run.json";
    std::ofstream(cfg) << R"({"preset": "example2", "N": [0], "grid": {"n_out": 101},
                             "output": {"emit": {"transitions": false, "entropy": false, "temps": false}}})";
    ASSERT_EQ(cli({"simulate", "--config", cfg.string(), "--kappa", "5", "-o", (d.path / "out").string()}), 0);
    const auto manifest = nlohmann::json::parse(slurp(d.path / "out" / "manifest.json"));
    EXPECT_EQ(manifest["config"]["profile"]["kappa"], 5.0);
    EXPECT_EQ(manifest["config"]["grid"]["n_out"], 101);
    EXPECT_EQ(manifest["config"]["profile"]["omega0"], 2.0);
    EXPECT_EQ(manifest["version"], kToolVersion);
}

TEST(Cli, ManifestChecksumsMatchFiles) {
    TempDir d("manifest");
    ASSERT_EQ(cli({"reproduce", "example2", "--N", "0", "--n-out", "201", "-o", d.path.string()}), 0);
    const auto manifest = nlohmann::json::parse(slurp(d.path / "manifest.json"));
    ASSERT_FALSE(manifest["files"].empty());
    for (const auto& f : manifest["files"]) {
        const fs::path p = d.path / f["name"].get<std::string>();
        ASSERT_TRUE(fs::exists(p));
        EXPECT_EQ(f["sha256"], sha256_file(p));
        EXPECT_EQ(f["bytes"], fs::file_size(p));
    }
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
    TempDir a("det_a"), b("det_b");
    ASSERT_EQ(cli({"reproduce", "example2", "--n-out", "301", "-o", a.path.string()}), 0);
    ASSERT_EQ(cli({"reproduce", "example2", "--n-out", "301", "-o", b.path.string()}), 0);
    int compared = 0;
    for (const auto& e : fs::directory_iterator(a.path)) {
        if (e.path().extension() != ".csv") continue;
        EXPECT_EQ(slurp(e.path()), slurp(b.path / e.path().filename())) << e.path().filename();
        ++compared;
    }
    EXPECT_GT(compared, 10);
}

TEST(Cli, TransitionsCommandWritesTablesAndDensity) {
    TempDir d("transitions");
    ASSERT_EQ(cli({"transitions", "--config", "/dev/null", "--profile", "sech_bump", "--omega0", "2", "--omega-target",
                   "10", "--kappa", "7", "--N", "1", "--density-time", "0", "--density-max-mode", "9", "-o",
                   d.path.string()}),
              1);  // /dev/null is not valid JSON
    ASSERT_EQ(cli({"transitions", "--profile", "sech_bump", "--omega0", "2", "--omega-target", "10", "--kappa", "7",
                   "--N", "1", "--density-time", "0", "--density-max-mode", "9", "-o", d.path.string()}),
              0);
    EXPECT_TRUE(fs::exists(d.path / "transitions_initial_N1.csv"));
    EXPECT_FALSE(fs::exists(d.path / "thermo_N1.csv"));
    const auto rows = read_csv(d.path / "density_initial_N1.csv");
    EXPECT_EQ(rows.front(), (std::vector<std::string>{"t", "I", "J", "Re", "Im"}));
    EXPECT_EQ(rows.size(), 1u + 25u);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli({"simulate", "--no-such-flag"}), 1);
    EXPECT_EQ(cli({}), 1);
    EXPECT_EQ(cli({"simulate", "--t-min", "1"}), 1);
    EXPECT_EQ(cli({"reproduce", "example9"}), 1);
    EXPECT_EQ(cli({"--help"}), 0);
    TempDir d("exit");
    std::string err;
    // A vanishing invariant frequency lets σ reach zero, which the integrator reports.
    EXPECT_EQ(cli({"simulate", "--profile", "constant", "--reference-frequency", "1e-9", "-o", d.path.string()},
                  nullptr, &err),
              2);
    EXPECT_NE(err.find("collapsed"), std::string::npos);
    EXPECT_EQ(cli({"oracle-check", "--N", "9", "-o", d.path.string()}), 1);
    EXPECT_EQ(cli({"oracle-check", "--oracle-dimension", "500", "-o", d.path.string()}), 1);
}

TEST(Cli, OracleCheckPassesAndCatchesCoarseTolerance) {
    TempDir d("oracle");
    std::string out;
    EXPECT_EQ(cli({"oracle-check", "--preset", "example2", "--N", "0", "1", "-o", d.path.string()}, &out), 0) << out;
    const auto report = nlohmann::json::parse(slurp(d.path / "oracle_report.json"));
    EXPECT_TRUE(report["passed"].get<bool>());
    EXPECT_EQ(cli({"oracle-check", "--profile", "constant", "--omega0", "3", "--N", "0", "2", "-o", d.path.string()}),
              0);
    EXPECT_EQ(cli({"oracle-check", "--preset", "example2", "--N", "1", "--rel-tol", "1e-4", "-o", d.path.string()},
                  &out),
              3);
    EXPECT_NE(out.find("FAIL fock_"), std::string::npos) << out;
}

TEST(Cli, SingleValueSweepEqualsRun) {
    TempDir d("sweep_single");
    ASSERT_EQ(cli({"sweep", "--preset", "example2", "--parameter", "kappa", "--values", "7", "--N", "1", "--n-out",
                   "201", "-o", (d.path / "sweep").string()}),
              0);
    ASSERT_EQ(cli({"reproduce", "example2", "--N", "1", "--n-out", "201", "-o", (d.path / "run").string()}), 0);
    for (const auto& e : fs::directory_iterator(d.path / "run")) {
        if (e.path().extension() != ".csv") continue;
        EXPECT_EQ(slurp(e.path()), slurp(d.path / "sweep" / "kappa_0" / e.path().filename()));
    }
    EXPECT_TRUE(fs::exists(d.path / "sweep" / "summary.csv"));
    EXPECT_TRUE(fs::exists(d.path / "sweep" / "manifest.json"));
}

TEST(Cli, KappaSweepIncreasesParticleCreation) {
    TempDir d("sweep_kappa");
    ASSERT_EQ(cli({"sweep", "--preset", "example1", "--parameter", "kappa", "--values", "0.5,5,50", "--N", "0",
                   "--emit", "thermo", "-o", d.path.string()}),
              0);
    const auto rows = read_csv(d.path / "summary.csv");
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_LT(num(rows[1][4]), num(rows[2][4]));
    EXPECT_LT(num(rows[2][4]), num(rows[3][4]));
}

TEST(Cli, NSweepIsAffineWithClosedFormSlope) {
    TempDir d("sweep_n");
    ASSERT_EQ(cli({"sweep", "--preset", "example1", "--parameter", "N", "--values", "0,1,2", "--emit", "thermo",
                   "--n-out", "401", "-o", d.path.string()}),
              0);
    std::vector<std::vector<std::vector<std::string>>> th;
    for (int i = 0; i < 3; ++i)
        th.push_back(read_csv(d.path / ("N_" + std::to_string(i)) / ("thermo_N" + std::to_string(i) + ".csv")));
    const auto sol = [] {
        const auto c = preset("example1");
        const auto p = make_profile(c.profile);
        tdho::ErmakovOptions o;
        o.reference_time = c.t_min;
        o.reference_frequency = p.omega(c.t_min);
        return tdho::solve(p, c.t_min, c.t_max, o);
    }();
    for (std::size_t r = 1; r < th[0].size(); r += 20) {
        const double n0 = num(th[0][r][2]), n1 = num(th[1][r][2]), n2 = num(th[2][r][2]);
        // Least-squares slope over N = 0, 1, 2 and the residual of the affine fit.
        const double slope = (n2 - n0) / 2.0;
        EXPECT_NEAR(n1, (n0 + n2) / 2.0, 1e-9 * std::max(1.0, n2));
        const double t = num(th[0][r][0]);
        const auto b = tdho::bogoliubov(sol, tdho::Representation::Initial, t);
        EXPECT_NEAR(slope, std::norm(b.alpha) + std::norm(b.beta), 1e-8 * slope);
    }
}

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdho/oracle.hpp"
#include "tdho_cli/config.hpp"

namespace tdho::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Per-N figures of merit collected during a run.
struct RunSummary {
    int N = 0;
    double peak_N_omega = 0.0;
    double asymptotic_N0 = 0.0;
    std::optional<double> max_T_macr_initial;
    std::optional<double> max_T_macr_diagonal;
};

struct RunResult {
    std::filesystem::path directory;
    std::vector<std::string> files;  ///< relative to directory, sorted
    std::vector<RunSummary> summaries;
    double reference_time = 0.0;
    double reference_frequency = 0.0;
};

/// Computes every requested product and writes the CSVs plus manifest.json into cfg.output_dir.
RunResult run(const RunConfig& cfg, const std::string& command = "simulate");

struct OracleOutcome {
    OracleReport report;
    int dimension = 0;
    std::filesystem::path report_path;
};

/// Truncated-Fock and quadrature checks against the closed forms; writes oracle_report.json.
OracleOutcome oracle_check(const RunConfig& cfg);
[[nodiscard]] nlohmann::json report_to_json(const OracleOutcome& outcome);

struct SweepResult {
    std::filesystem::path directory;
    std::vector<RunResult> runs;
    std::filesystem::path summary_path;
};

/// One run per value of kappa, omega_target or N, in subdirectories, plus summary.csv.
SweepResult sweep(const RunConfig& cfg, const std::string& parameter, const std::vector<double>& values);

/// manifest.json with the config echo, tool version and SHA-256 of each listed file.
void write_manifest(const std::filesystem::path& dir, const std::string& command, const RunConfig& cfg,
                    const std::vector<std::string>& files, const nlohmann::json& extra = nlohmann::json::object());

}  // namespace tdho::cli

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdho/profiles.hpp"
#include "tdho/representations.hpp"

namespace tdho::cli {

/// Invalid configuration; the message names the offending field.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProfileSpec {
    ProfileKind kind = ProfileKind::Constant;
    double omega0 = 1.0;
    double omega_target = 1.0;
    double kappa = 1.0;
    std::string samples;  ///< CSV path for tabulated profiles
};

enum class ReferenceMode { Profile, InRegion };

struct EmitFlags {
    bool sigma = true;
    bool bogoliubov = true;
    bool transitions = true;
    bool thermo = true;
    bool entropy = true;
    bool temps = true;
    bool oracle = false;
};

struct RunConfig {
    ProfileSpec profile;
    std::vector<int> N{0};
    double t_min = -3.0;
    double t_max = 3.0;
    std::size_t n_out = 1201;
    ReferenceMode reference = ReferenceMode::Profile;
    std::optional<double> reference_time;
    std::optional<double> reference_frequency;
    std::vector<Representation> representations{Representation::Initial, Representation::Diagonal};
    double tail_tol = 1e-10;
    int max_mode = 2000;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int temps_max_mode = 80;
    std::optional<double> density_time;  ///< emit the density block at this time when set
    int density_max_mode = 40;
    int oracle_dimension = 0;
    int oracle_samples = 20;
    int oracle_max_mode = 60;
    std::filesystem::path output_dir = "out";
    EmitFlags emit;
};

[[nodiscard]] RunConfig preset(const std::string& name);
[[nodiscard]] RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
[[nodiscard]] nlohmann::json config_to_json(const RunConfig& cfg);
/// Throws UsageError on the first violated constraint.
void validate(const RunConfig& cfg);

[[nodiscard]] FrequencyProfile make_profile(const ProfileSpec& spec);
/// Reference time and frequency implied by the config for the given profile.
[[nodiscard]] std::pair<double, double> resolve_reference(const RunConfig& cfg, const FrequencyProfile& profile);

}  // namespace tdho::cli

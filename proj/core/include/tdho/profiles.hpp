#pragma once

#include <filesystem>
#include <memory>
#include <vector>

namespace tdho {

enum class ProfileKind { Constant, TanhStep, SechBump, Tabulated };

/// Frequency law ω(t) of a unit-mass oscillator. Immutable and cheap to copy.
class FrequencyProfile {
public:
    /// Constant profile with ω₀ = 1.
    FrequencyProfile() = default;

    static FrequencyProfile constant(double omega0);
    /// ω² interpolates from ω₀² to ω_f² as (1 + tanh κt)/2.
    static FrequencyProfile tanh_step(double omega0, double omega_f, double kappa);
    /// ω² = ω₀² + (ω_c² − ω₀²) sech² κt.
    static FrequencyProfile sech_bump(double omega0, double omega_c, double kappa);
    /// Monotone cubic interpolation through (t, ω) samples; at least four, strictly increasing t.
    static FrequencyProfile tabulated(std::vector<double> t, std::vector<double> omega);
    /// Two-column CSV (t, omega); a non-numeric first line is treated as a header.
    static FrequencyProfile from_csv(const std::filesystem::path& path);

    [[nodiscard]] ProfileKind kind() const noexcept { return kind_; }
    [[nodiscard]] double omega0() const noexcept { return omega0_; }
    [[nodiscard]] double omega_target() const noexcept { return omega_target_; }
    [[nodiscard]] double kappa() const noexcept { return kappa_; }
    [[nodiscard]] const std::vector<double>& sample_times() const noexcept { return sample_t_; }
    [[nodiscard]] const std::vector<double>& sample_omegas() const noexcept { return sample_w_; }

    [[nodiscard]] double omega(double t) const;
    [[nodiscard]] double omega_dot(double t) const;
    /// |tanh κt| > 1 − 1e-12 for the closed-form kinds; always true for Constant.
    [[nodiscard]] bool in_asymptotic_region(double t) const;

private:
    struct Interp;

    void check_finite(double t) const;

    ProfileKind kind_ = ProfileKind::Constant;
    double omega0_ = 1.0;
    double omega_target_ = 1.0;
    double kappa_ = 0.0;
    std::vector<double> sample_t_;
    std::vector<double> sample_w_;
    std::shared_ptr<const Interp> interp_;
};

[[nodiscard]] const char* to_string(ProfileKind kind) noexcept;

}  // namespace tdho

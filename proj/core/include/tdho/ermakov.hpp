#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "tdho/profiles.hpp"

namespace tdho {

struct ErmakovOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// Time at which σ = 1, σ̇ = 0, τ = 0.
    double reference_time = 0.0;
    /// Constant Ω on the right-hand side Ω²/σ³; defaults to the profile's ω₀.
    std::optional<double> reference_frequency;
    /// Extra times the integrator must step onto exactly (usually the output grid).
    std::vector<double> output_times;
    /// Upper bound on |h|; zero means unbounded.
    double max_step = 0.0;
};

struct ErmakovState {
    double sigma = 1.0;
    double sigma_dot = 0.0;
    double tau = 0.0;
};

/// Solution of σ̈ + ω²σ = Ω²/σ³ together with τ̇ = 1/σ², with cubic Hermite dense output.
class ErmakovSolution {
public:
    [[nodiscard]] const FrequencyProfile& profile() const noexcept { return profile_; }
    [[nodiscard]] double reference_time() const noexcept { return t_ref_; }
    [[nodiscard]] double reference_frequency() const noexcept { return big_omega_; }
    [[nodiscard]] double t_min() const noexcept { return knots_.front(); }
    [[nodiscard]] double t_max() const noexcept { return knots_.back(); }
    [[nodiscard]] double rel_tol() const noexcept { return rel_tol_; }
    [[nodiscard]] double abs_tol() const noexcept { return abs_tol_; }

    /// Requested output times if any were given, otherwise the accepted step points.
    [[nodiscard]] const std::vector<double>& grid() const noexcept {
        return grid_.empty() ? knots_ : grid_;
    }
    [[nodiscard]] const std::vector<double>& knots() const noexcept { return knots_; }
    [[nodiscard]] std::size_t rejected_steps() const noexcept { return rejected_; }

    [[nodiscard]] bool contains(double t) const noexcept;
    [[nodiscard]] ErmakovState state(double t) const;
    [[nodiscard]] double sigma(double t) const { return state(t).sigma; }
    [[nodiscard]] double sigma_dot(double t) const { return state(t).sigma_dot; }
    /// σ̈ from the equation of motion at the interpolated state.
    [[nodiscard]] double sigma_ddot(double t) const;

private:
    friend ErmakovSolution solve(const FrequencyProfile&, double, double, const ErmakovOptions&);

    FrequencyProfile profile_;
    double t_ref_ = 0.0;
    double big_omega_ = 1.0;
    double rel_tol_ = 0.0;
    double abs_tol_ = 0.0;
    std::vector<double> knots_;
    std::vector<std::array<double, 3>> y_;
    std::vector<std::array<double, 3>> f_;
    std::vector<double> grid_;
    std::size_t rejected_ = 0;
};

/// Evenly spaced times with both end points exact.
[[nodiscard]] std::vector<double> uniform_grid(double t_min, double t_max, std::size_t n);

/// Integrates forward and backward from the reference time with Dormand–Prince 5(4).
[[nodiscard]] ErmakovSolution solve(const FrequencyProfile& profile, double t_min, double t_max,
                                    const ErmakovOptions& options = {});

[[nodiscard]] double tau_at(const ErmakovSolution& sol, double t);

/// Matrix taking (x, p) at the reference time to (x(t), p(t)).
[[nodiscard]] std::array<std::array<double, 2>, 2> classical_propagator(const ErmakovSolution& sol, double t);

/// σ̈ + ω²σ − Ω²/σ³ with σ̈ from a centered difference of the dense σ̇ with step h.
[[nodiscard]] double ermakov_residual(const ErmakovSolution& sol, double t, double h);

/// ν = ½(√(1 + 4(ω_c² − ω₀²)/κ²) − 1) for the sech² bump.
[[nodiscard]] double sech_legendre_degree(double omega0, double omega_c, double kappa);

/// Closed-form σ for the sech² bump when ν is a nonnegative integer, normalized to 1 at t_norm.
/// Exact Ermakov solution for t_norm = 0; for t_norm deep in the past σ̇(t_norm) is exponentially small.
[[nodiscard]] double analytic_sigma_sech(double omega0, double omega_c, double kappa, double t,
                                         double t_norm = 0.0);

/// Ω that makes analytic_sigma_sech(…, t_norm) solve the Ermakov equation.
[[nodiscard]] double sech_reference_frequency(double omega0, double omega_c, double kappa,
                                              double t_norm = 0.0);

}  // namespace tdho

#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "tdho/ermakov.hpp"

namespace tdho {

enum class Representation { Initial, Diagonal, Invariant };

[[nodiscard]] const char* to_string(Representation rep) noexcept;
[[nodiscard]] Representation representation_from_string(std::string_view name);

/// Bogoliubov pair relating the invariant ladder operators to those of a representation.
/// Moduli are kept separately so |β| never comes from a difference of nearly equal numbers.
struct BogoliubovSet {
    Representation representation = Representation::Initial;
    std::complex<double> alpha{1.0, 0.0};
    std::complex<double> beta{0.0, 0.0};
    double alpha_mod = 1.0;
    double beta_mod = 0.0;
    double theta_alpha = 0.0;  ///< continuous in t
    double theta_beta = 0.0;   ///< principal value unless produced by bogoliubov_series
    double r = 0.0;            ///< asinh |β|
    double t = 0.0;
};

struct HamiltonianCoeffs {
    Representation representation = Representation::Initial;
    std::complex<double> lambda_plus;
    std::complex<double> lambda_minus;
    double lambda0 = 0.0;
    double t = 0.0;
};

[[nodiscard]] BogoliubovSet bogoliubov(const ErmakovSolution& sol, Representation rep, double t);

/// Same as bogoliubov() at each time, with θ_β unwrapped along the sequence.
[[nodiscard]] std::vector<BogoliubovSet> bogoliubov_series(const ErmakovSolution& sol, Representation rep,
                                                           std::span<const double> times);

[[nodiscard]] HamiltonianCoeffs hamiltonian_coeffs(const ErmakovSolution& sol, Representation rep, double t);

/// θ_α + θ_β from a single two-argument arctangent, in (−π, π].
[[nodiscard]] double phase_sum(const ErmakovSolution& sol, Representation rep, double t);
/// θ_α + θ_β unwrapped along the given increasing times.
[[nodiscard]] std::vector<double> phase_sum_series(const ErmakovSolution& sol, Representation rep,
                                                   std::span<const double> times);

/// |α|² + |β|² from σ, σ̇ (and ω for the diagonal case) without forming α, β.
[[nodiscard]] double modulus_sum(const ErmakovSolution& sol, Representation rep, double t);
/// |β|² from σ, σ̇ (and ω for the diagonal case).
[[nodiscard]] double beta_mod_sq(const ErmakovSolution& sol, Representation rep, double t);

/// ω₀ for the initial representation, ω(t) for the diagonal one, λ₀ for the invariant one.
[[nodiscard]] double representation_frequency(const ErmakovSolution& sol, Representation rep, double t);

}  // namespace tdho

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdho/ermakov.hpp"
#include "tdho/profiles.hpp"
#include "tdho/representations.hpp"

namespace tdho {

/// Amplitudes over the fixed number basis of frequency Ω (the initial representation).
struct FockState {
    double t = 0.0;
    std::vector<std::complex<double>> amplitudes;

    [[nodiscard]] int dimension() const noexcept { return static_cast<int>(amplitudes.size()); }
    [[nodiscard]] double norm_sq() const;
    [[nodiscard]] double probability(int M) const { return std::norm(amplitudes.at(static_cast<std::size_t>(M))); }
    /// Mass held by the last 10% of modes.
    [[nodiscard]] double top_band_mass() const;
    [[nodiscard]] double mean_occupation() const;
};

struct FockOptions {
    int dimension = 0;  ///< 0 picks max(200, 8N + 100)
    double rel_tol = 1e-11;
    double abs_tol = 1e-12;
    double leak_tol = 1e-10;
    double reference_time = 0.0;
    std::optional<double> reference_frequency;  ///< defaults to the profile's ω₀
};

/// Integrates i dc/dt = H(t) c from |N⟩ at the reference time with a controlled Runge–Kutta–Fehlberg 7(8).
/// Throws DimensionError if the top band of the basis collects more than leak_tol at any accepted step.
[[nodiscard]] std::vector<FockState> evolve_fock(const FrequencyProfile& profile, int N, std::span<const double> times,
                                                 const FockOptions& options = {});

/// ⟨c| H(t) |c⟩ for the pair Hamiltonian in the basis of frequency Ω.
[[nodiscard]] double fock_energy(const FrequencyProfile& profile, double big_omega, const FockState& state);

/// Projection of a basis state onto the number states of frequency ω(t): returns |⟨M_ω|ψ⟩|² for M < D.
[[nodiscard]] std::vector<double> diagonal_projection(const FrequencyProfile& profile, double big_omega,
                                                      const FockState& state, int n_nodes = 0);

/// ψ(x) = A e^{iφ} φ_N(√a x) e^{ibx²}, with φ_N the orthonormal Hermite function.
struct WavefunctionSpec {
    enum class Kind { Static, Diagonal, Invariant };
    Kind kind = Kind::Static;
    int N = 0;
    double a = 1.0;
    double b = 0.0;
    double amplitude = 1.0;
    double phase = 0.0;

    [[nodiscard]] static WavefunctionSpec static_state(double omega, int N);
    [[nodiscard]] static WavefunctionSpec diagonal(const ErmakovSolution& sol, double t, int N);
    [[nodiscard]] static WavefunctionSpec invariant(const ErmakovSolution& sol, double t, int N);
    [[nodiscard]] std::complex<double> operator()(double x) const;
};

/// ∫ conj(bra) ket dx by Gauss–Hermite quadrature after scaling out the combined Gaussian.
[[nodiscard]] std::complex<double> wavefunction_overlap(const WavefunctionSpec& bra, const WavefunctionSpec& ket,
                                                        int n_nodes);

/// ⟨M_rep | N_inv⟩ at t by quadrature; the independent check on matrix_element.
[[nodiscard]] std::complex<double> overlap_quadrature(const ErmakovSolution& sol, Representation rep, int N, int M,
                                                      double t, int n_nodes);

struct WavefunctionReport {
    double norm_error = 0.0;
    double schrodinger_residual = 0.0;
    double max_overlap_offdiag = 0.0;
};

/// Uniform x grid covering the invariant state's support with room for its chirp.
[[nodiscard]] std::vector<double> wavefunction_grid(const ErmakovSolution& sol, int N, double t);

/// Norm, Schrödinger residual (fourth-order differences in t and x) and orthogonality against other modes.
[[nodiscard]] WavefunctionReport check_invariant_wavefunction(const ErmakovSolution& sol, int N, double t,
                                                              std::span<const double> grid);

struct OracleCheck {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct OracleReport {
    std::vector<OracleCheck> checks;

    void add(std::string name, double measured, double tolerance);
    [[nodiscard]] bool all_passed() const;
};

}  // namespace tdho

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tdho/representations.hpp"
#include "tdho/specfun.hpp"

namespace tdho {

/// ⟨M_rep | N_inv⟩ in log form; zero when M − N is odd.
[[nodiscard]] LogComplex matrix_element_log(const BogoliubovSet& bog, int N, int M);
[[nodiscard]] std::complex<double> matrix_element(const BogoliubovSet& bog, int N, int M);
/// log P_M(N); −∞ for parity-mismatched or vanishing entries.
[[nodiscard]] double log_transition_probability(const BogoliubovSet& bog, int N, int M);
[[nodiscard]] double transition_probability(const BogoliubovSet& bog, int N, int M);

/// P_M(N; t) over a common set of same-parity modes for every time.
struct TransitionTable {
    Representation representation = Representation::Initial;
    int N = 0;
    std::vector<double> times;
    std::vector<int> modes;
    std::vector<double> probs;  ///< row-major: probs[ti * modes.size() + mi]
    std::vector<double> tail_mass;
    std::vector<BogoliubovSet> coefficients;
    bool cap_reached = false;

    [[nodiscard]] std::size_t n_times() const noexcept { return times.size(); }
    [[nodiscard]] std::size_t n_modes() const noexcept { return modes.size(); }
    [[nodiscard]] double at(std::size_t ti, std::size_t mi) const { return probs[ti * modes.size() + mi]; }
    [[nodiscard]] std::span<const double> row(std::size_t ti) const {
        return {probs.data() + ti * modes.size(), modes.size()};
    }
    /// P_M at time index ti; zero for modes outside the table.
    [[nodiscard]] double probability(std::size_t ti, int M) const;
    [[nodiscard]] double row_sum(std::size_t ti) const;
    [[nodiscard]] double mean(std::size_t ti) const;
};

struct TableOptions {
    double tail_tol = 1e-10;
    int max_mode = 2000;
};

[[nodiscard]] TransitionTable probability_table(const ErmakovSolution& sol, Representation rep, int N,
                                                std::span<const double> times, const TableOptions& options = {});

/// Rank-one block P_{IJ} = C_I conj(C_J) over the listed modes.
struct DensityBlock {
    Representation representation = Representation::Initial;
    int N = 0;
    double t = 0.0;
    std::vector<int> modes;
    std::vector<std::complex<double>> entries;  ///< row-major

    [[nodiscard]] std::size_t size() const noexcept { return modes.size(); }
    [[nodiscard]] std::complex<double> at(std::size_t i, std::size_t j) const { return entries[i * modes.size() + j]; }
    std::complex<double>& at(std::size_t i, std::size_t j) { return entries[i * modes.size() + j]; }
};

[[nodiscard]] DensityBlock density_block(const ErmakovSolution& sol, Representation rep, int N, double t,
                                         std::span<const int> modes);
/// Modes of N's parity in [0, max_mode].
[[nodiscard]] DensityBlock density_block(const ErmakovSolution& sol, Representation rep, int N, double t,
                                         int max_mode);

/// Large-I form (I!/(N!(I/2)!²)) |α|^{-1} (|β|/2|α|)^I, in log form.
[[nodiscard]] double log_large_mode_probability(const BogoliubovSet& bog, int N, int I);
[[nodiscard]] double large_mode_probability(const BogoliubovSet& bog, int N, int I);

/// Modes of N's parity from the lowest up to max_mode.
[[nodiscard]] std::vector<int> parity_modes(int N, int max_mode);

}  // namespace tdho

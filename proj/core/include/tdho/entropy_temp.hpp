#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tdho/transitions.hpp"

namespace tdho {

/// Probabilities below this are left out of every logarithm.
inline constexpr double kProbabilityFloor = 1e-300;

struct EntropyRecord {
    double t = 0.0;
    Representation representation = Representation::Initial;
    double S_d = 0.0;
    double S_vN_trunc = 0.0;
    double Sdot_d = 0.0;
    std::optional<double> T_macr;
    std::optional<double> T_emergent;
};

struct ModeTemps {
    double t = 0.0;
    Representation representation = Representation::Initial;
    std::vector<int> K;
    std::vector<std::optional<double>> T_K;
    std::vector<std::optional<double>> T_K_half;
    std::vector<std::optional<double>> T_K_th;
};

struct RatioPair {
    double empirical = 0.0;
    double thermal = 0.0;
};

[[nodiscard]] double diagonal_entropy(std::span<const double> probs);
/// Zero for invariant-representation tables.
[[nodiscard]] double diagonal_entropy(const TransitionTable& table, std::size_t ti);

/// dP_K/dt by three-point differences in time (one-sided at the ends).
[[nodiscard]] std::vector<double> probability_rates(const TransitionTable& table, std::size_t ti);
[[nodiscard]] double entropy_rate(const TransitionTable& table, std::size_t ti);

/// ε(1 + |log ε|), the entropy a truncation remainder ε can account for.
[[nodiscard]] double tail_entropy_bound(double tail_mass);
/// Entropy of the clipped, renormalized spectrum; rejects blocks that are not Hermitian to 1e-10.
[[nodiscard]] double von_neumann_trunc(const DensityBlock& block);

[[nodiscard]] ModeTemps mode_temperatures(const TransitionTable& table, std::size_t ti, double omega_rep);
/// ω/log(|α|/|β|); absent when β = 0.
[[nodiscard]] std::optional<double> emergent_temperature(const BogoliubovSet& bog, double omega_rep);
/// Q̇/Ṡ; absent when |Ṡ| < floor · max(1, |Q̇|).
[[nodiscard]] std::optional<double> macroscopic_temperature(double Qdot, double Sdot_d, double floor = 1e-12);
/// Σ T_K Ṗ_K log P_K / Σ Ṗ_K log P_K over the table row.
[[nodiscard]] std::optional<double> mode_weighted_temperature(const TransitionTable& table, std::size_t ti,
                                                              double omega_rep, double floor = 1e-12);
/// (P_K/P_{K+2}, |α|²/|β|²); absent if either probability is missing or β = 0.
[[nodiscard]] std::optional<RatioPair> thermal_ratio_check(const TransitionTable& table, std::size_t ti, int K);

}  // namespace tdho

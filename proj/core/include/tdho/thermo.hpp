#pragma once

#include <span>
#include <vector>

#include "tdho/ermakov.hpp"

namespace tdho {

struct Occupations {
    double N0 = 0.0;
    double N_omega = 0.0;
};

struct EnergyForms {
    double diagonal = 0.0;   ///< ω(N_ω + ½)
    double invariant = 0.0;  ///< λ₀(N + ½)
    double initial = 0.0;    ///< Ω N₀ + ε₀
    double eps0 = 0.0;
    double max_rel_discrepancy = 0.0;
};

struct RateBundle {
    double Qdot_0 = 0.0, Wdot_0 = 0.0;
    double Qdot_omega = 0.0, Wdot_omega = 0.0;
    double Qdot_I = 0.0, Wdot_I = 0.0;
    double Edot = 0.0;
};

struct ThermoRecord {
    double t = 0.0;
    double N0 = 0.0, N_omega = 0.0, N_inv = 0.0;
    double E = 0.0, eps0 = 0.0;
    double Qdot_0 = 0.0, Wdot_0 = 0.0, Qdot_omega = 0.0, Wdot_omega = 0.0, Qdot_I = 0.0, Wdot_I = 0.0;
    double Q_0 = 0.0, W_0 = 0.0, Q_omega = 0.0, W_omega = 0.0, W_I = 0.0;
};

/// Running integrals of the rates, zero at times.front().
struct CumulativeSeries {
    std::vector<double> times;
    std::vector<double> Q_0, W_0, Q_omega, W_omega, Q_I, W_I;
    std::vector<double> E;
    /// Closed forms Ω(N₀ + ½) and σ²(ω² − Ω²)(N + ½)/(2Ω).
    std::vector<double> Q_0_closed, W_0_closed;
    int subdivisions = 0;
};

[[nodiscard]] Occupations occupations(const ErmakovSolution& sol, int N, double t);
/// Throws ConsistencyError when the three forms disagree by more than 1e-6.
[[nodiscard]] EnergyForms energy(const ErmakovSolution& sol, int N, double t);
[[nodiscard]] EnergyForms energy_unchecked(const ErmakovSolution& sol, int N, double t);
[[nodiscard]] RateBundle heat_work_rates(const ErmakovSolution& sol, int N, double t);
/// Closed-form time derivative of N_ω.
[[nodiscard]] double n_omega_dot(const ErmakovSolution& sol, int N, double t);
[[nodiscard]] double n0_dot(const ErmakovSolution& sol, int N, double t);

/// Composite Simpson on each output interval split into `subdivisions` (even) pieces of the dense solution.
/// subdivisions = 0 picks enough pieces to resolve the fastest local oscillation.
[[nodiscard]] CumulativeSeries cumulative(const ErmakovSolution& sol, int N, std::span<const double> times,
                                          int subdivisions = 0);

[[nodiscard]] std::vector<ThermoRecord> thermo_series(const ErmakovSolution& sol, int N,
                                                      std::span<const double> times);

/// Trapezoidal time average of values over the trailing fraction of the span.
[[nodiscard]] double trailing_mean(std::span<const double> times, std::span<const double> values,
                                   double fraction = 0.2);

}  // namespace tdho

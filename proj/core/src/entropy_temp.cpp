#include "tdho/entropy_temp.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "tdho/errors.hpp"

namespace tdho {

double diagonal_entropy(std::span<const double> probs) {
    long double s = 0.0L;
    for (double p : probs)
        if (p >= kProbabilityFloor) s -= static_cast<long double>(p) * std::log(static_cast<long double>(p));
    return std::max(0.0, static_cast<double>(s));
}

double diagonal_entropy(const TransitionTable& table, std::size_t ti) {
    if (table.representation == Representation::Invariant) return 0.0;
    return diagonal_entropy(table.row(ti));
}

std::vector<double> probability_rates(const TransitionTable& table, std::size_t ti) {
    const std::size_t n = table.n_times();
    if (n < 3) throw DomainError("probability_rates: need at least three times");
    if (ti >= n) throw RangeError("probability_rates: time index out of range");
    std::size_t i0 = 0, i1 = 0, i2 = 0;
    if (ti == 0) {
        i0 = 0, i1 = 1, i2 = 2;
    } else if (ti == n - 1) {
        i0 = n - 3, i1 = n - 2, i2 = n - 1;
    } else {
        i0 = ti - 1, i1 = ti, i2 = ti + 1;
    }
    // Weights of the derivative at times[ti] of the quadratic through three points.
    const double x0 = table.times[i0], x1 = table.times[i1], x2 = table.times[i2], x = table.times[ti];
    const double w0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
    const double w1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
    const double w2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
    std::vector<double> rates(table.n_modes());
    for (std::size_t m = 0; m < rates.size(); ++m)
        rates[m] = w0 * table.at(i0, m) + w1 * table.at(i1, m) + w2 * table.at(i2, m);
    return rates;
}

double entropy_rate(const TransitionTable& table, std::size_t ti) {
    if (table.representation == Representation::Invariant) return 0.0;
    const auto rates = probability_rates(table, ti);
    long double s = 0.0L;
    for (std::size_t m = 0; m < rates.size(); ++m) {
        const double p = table.at(ti, m);
        if (p >= kProbabilityFloor) s -= static_cast<long double>(rates[m]) * std::log(p);
    }
    return static_cast<double>(s);
}

double tail_entropy_bound(double tail_mass) {
    if (!(tail_mass > 0.0)) return 0.0;
    return tail_mass * (1.0 + std::abs(std::log(tail_mass)));
}

double von_neumann_trunc(const DensityBlock& block) {
    const auto n = static_cast<Eigen::Index>(block.size());
    if (n == 0) return 0.0;
    Eigen::MatrixXcd rho(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto a = block.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            const auto b = block.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
            if (std::abs(a - std::conj(b)) > 1e-10) throw ContractViolation("von_neumann_trunc: block is not Hermitian");
            rho(i, j) = a;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("von_neumann_trunc: eigen solver failed");
    std::vector<double> lambda(static_cast<std::size_t>(n));
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        lambda[static_cast<std::size_t>(i)] = std::clamp(es.eigenvalues()[i], 0.0, 1.0);
        total += lambda[static_cast<std::size_t>(i)];
    }
    if (!(total > 0.0)) return 0.0;
    long double s = 0.0L;
    for (double l : lambda) {
        const double p = l / total;
        if (p > 0.0) s -= static_cast<long double>(p) * std::log(static_cast<long double>(p));
    }
    return std::max(0.0, static_cast<double>(s));
}

ModeTemps mode_temperatures(const TransitionTable& table, std::size_t ti, double omega_rep) {
    ModeTemps mt;
    mt.t = table.times.at(ti);
    mt.representation = table.representation;
    const BogoliubovSet& bog = table.coefficients.at(ti);
    const double log_ratio = bog.beta_mod > 0.0 ? std::log(bog.alpha_mod / bog.beta_mod) : 0.0;
    for (std::size_t m = 0; m < table.n_modes(); ++m) {
        const int K = table.modes[m];
        const double p = table.at(ti, m);
        const bool usable = p >= kProbabilityFloor && p < 1.0;
        mt.K.push_back(K);
        mt.T_K.push_back(usable && K >= 1 ? std::optional(-omega_rep * K / std::log(p)) : std::nullopt);
        mt.T_K_half.push_back(usable ? std::optional(-omega_rep * (K + 0.5) / std::log(p)) : std::nullopt);
        if (K >= 1 && bog.beta_mod > 0.0)
            mt.T_K_th.push_back(omega_rep / (log_ratio + std::log(static_cast<double>(K)) / (2.0 * K)));
        else
            mt.T_K_th.push_back(std::nullopt);
    }
    return mt;
}

std::optional<double> emergent_temperature(const BogoliubovSet& bog, double omega_rep) {
    if (!(bog.beta_mod > 0.0)) return std::nullopt;
    return omega_rep / std::log(bog.alpha_mod / bog.beta_mod);
}

std::optional<double> macroscopic_temperature(double Qdot, double Sdot_d, double floor) {
    if (!(std::abs(Sdot_d) >= floor * std::max(1.0, std::abs(Qdot)))) return std::nullopt;
    return Qdot / Sdot_d;
}

std::optional<double> mode_weighted_temperature(const TransitionTable& table, std::size_t ti, double omega_rep,
                                                double floor) {
    const auto rates = probability_rates(table, ti);
    const ModeTemps mt = mode_temperatures(table, ti, omega_rep);
    long double num = 0.0L, den = 0.0L;
    for (std::size_t m = 0; m < rates.size(); ++m) {
        const double p = table.at(ti, m);
        if (p < kProbabilityFloor) continue;
        const long double term = static_cast<long double>(rates[m]) * std::log(p);
        den += term;
        if (mt.T_K[m]) num += static_cast<long double>(*mt.T_K[m]) * term;
    }
    if (!(std::abs(static_cast<double>(den)) >= floor * std::max(1.0, std::abs(static_cast<double>(num)))))
        return std::nullopt;
    return static_cast<double>(num / den);
}

std::optional<RatioPair> thermal_ratio_check(const TransitionTable& table, std::size_t ti, int K) {
    const BogoliubovSet& bog = table.coefficients.at(ti);
    if (!(bog.beta_mod > 0.0)) return std::nullopt;
    const double pk = table.probability(ti, K);
    const double pk2 = table.probability(ti, K + 2);
    if (!(pk > 0.0) || !(pk2 > 0.0)) return std::nullopt;
    const double q = bog.alpha_mod / bog.beta_mod;
    return RatioPair{pk / pk2, q * q};
}

}  // namespace tdho

#include "tdho/transitions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tdho/errors.hpp"

namespace tdho {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Upper estimate of Σ_{M > last} P_M from the last two retained entries.
double tail_estimate(double log_p_last, double log_p_prev, double q) {
    if (log_p_last == kNegInf) return 0.0;
    const double observed = log_p_prev == kNegInf ? 1.0 : std::exp(log_p_last - log_p_prev);
    const double ratio = std::max(observed, q);
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    return std::exp(log_p_last) * ratio / (1.0 - ratio);
}

}  // namespace

LogComplex matrix_element_log(const BogoliubovSet& bog, int N, int M) {
    if (N < 0 || M < 0) throw DomainError("matrix_element: negative mode index");
    if ((N - M) % 2 != 0) return LogComplex::zero();
    LogComplex leg = legendre_ratio_form(N, M, bog.alpha_mod, bog.beta_mod);
    if (leg.is_zero()) return leg;
    leg.log_modulus += 0.5 * (log_factorial(M) - log_factorial(N)) - 0.5 * std::log(bog.alpha_mod);
    const double phi = 0.5 * bog.theta_alpha * (N + M + 1) + 0.5 * bog.theta_beta * (M - N);
    leg.phase = wrap_phase(leg.phase + wrap_phase(phi));
    return leg;
}

std::complex<double> matrix_element(const BogoliubovSet& bog, int N, int M) {
    return matrix_element_log(bog, N, M).value();
}

double log_transition_probability(const BogoliubovSet& bog, int N, int M) {
    if (N < 0 || M < 0) throw DomainError("transition probability: negative mode index");
    if ((N - M) % 2 != 0) return kNegInf;
    const LogComplex leg = legendre_ratio_form(N, M, bog.alpha_mod, bog.beta_mod);
    if (leg.is_zero()) return kNegInf;
    return log_factorial(M) - log_factorial(N) - std::log(bog.alpha_mod) + 2.0 * leg.log_modulus;
}

double transition_probability(const BogoliubovSet& bog, int N, int M) {
    return std::exp(log_transition_probability(bog, N, M));
}

double TransitionTable::probability(std::size_t ti, int M) const {
    if (modes.empty() || (M - modes.front()) % 2 != 0 || M < modes.front() || M > modes.back()) return 0.0;
    return at(ti, static_cast<std::size_t>((M - modes.front()) / 2));
}

double TransitionTable::row_sum(std::size_t ti) const {
    long double s = 0.0L;
    for (double p : row(ti)) s += p;
    return static_cast<double>(s);
}

double TransitionTable::mean(std::size_t ti) const {
    long double s = 0.0L;
    const auto r = row(ti);
    for (std::size_t i = 0; i < r.size(); ++i) s += static_cast<long double>(modes[i]) * r[i];
    return static_cast<double>(s);
}

std::vector<int> parity_modes(int N, int max_mode) {
    std::vector<int> m;
    for (int k = N % 2; k <= max_mode; k += 2) m.push_back(k);
    return m;
}

TransitionTable probability_table(const ErmakovSolution& sol, Representation rep, int N,
                                  std::span<const double> times, const TableOptions& options) {
    if (N < 0) throw DomainError("probability_table: N must be nonnegative");
    if (!(options.tail_tol >= 1e-12 && options.tail_tol <= 1e-3))
        throw DomainError("probability_table: tail_tol must lie in [1e-12, 1e-3]");
    if (options.max_mode < N) throw DomainError("probability_table: max_mode below N");

    TransitionTable table;
    table.representation = rep;
    table.N = N;
    table.times.assign(times.begin(), times.end());
    table.coefficients = bogoliubov_series(sol, rep, times);

    const int parity = N % 2;
    auto align = [&](int m) {
        m = std::min(m, options.max_mode);
        if ((m - parity) % 2 != 0) --m;
        return std::max(m, N);
    };

    int global_hi = N;
    for (const auto& bog : table.coefficients) {
        if (bog.beta_mod == 0.0) continue;
        const double q = (bog.beta_mod / bog.alpha_mod) * (bog.beta_mod / bog.alpha_mod);
        int hi = align(std::max(N + 20, 20));
        while (true) {
            const double lp = log_transition_probability(bog, N, hi);
            const double lq = hi - 2 >= parity ? log_transition_probability(bog, N, hi - 2) : kNegInf;
            if (tail_estimate(lp, lq, q) < options.tail_tol) break;
            if (hi >= align(options.max_mode)) {
                table.cap_reached = true;
                break;
            }
            hi = align(static_cast<int>(std::ceil(1.5 * hi)) + 2);
        }
        global_hi = std::max(global_hi, hi);
    }

    table.modes = parity_modes(N, global_hi);
    const std::size_t nm = table.modes.size();
    table.probs.assign(table.times.size() * nm, 0.0);
    table.tail_mass.assign(table.times.size(), 0.0);
    for (std::size_t ti = 0; ti < table.times.size(); ++ti) {
        const auto& bog = table.coefficients[ti];
        std::vector<double> logs(nm);
        for (std::size_t mi = 0; mi < nm; ++mi) {
            logs[mi] = log_transition_probability(bog, N, table.modes[mi]);
            table.probs[ti * nm + mi] = std::exp(logs[mi]);
        }
        if (bog.beta_mod > 0.0 && nm >= 2) {
            const double q = (bog.beta_mod / bog.alpha_mod) * (bog.beta_mod / bog.alpha_mod);
            table.tail_mass[ti] = tail_estimate(logs[nm - 1], logs[nm - 2], q);
        }
    }
    return table;
}

DensityBlock density_block(const ErmakovSolution& sol, Representation rep, int N, double t,
                           std::span<const int> modes) {
    DensityBlock block;
    block.representation = rep;
    block.N = N;
    block.t = t;
    block.modes.assign(modes.begin(), modes.end());
    const BogoliubovSet bog = bogoliubov(sol, rep, t);
    std::vector<std::complex<double>> c(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) c[i] = matrix_element(bog, N, modes[i]);
    const std::size_t n = modes.size();
    block.entries.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) block.entries[i * n + j] = c[i] * std::conj(c[j]);
    return block;
}

DensityBlock density_block(const ErmakovSolution& sol, Representation rep, int N, double t, int max_mode) {
    const auto modes = parity_modes(N, max_mode);
    return density_block(sol, rep, N, t, modes);
}

double log_large_mode_probability(const BogoliubovSet& bog, int N, int I) {
    if (N < 0 || I < std::max(2 * N, 20)) throw DomainError("large_mode_probability: need I >= max(2N, 20)");
    if ((I - N) % 2 != 0) throw ParityError("large_mode_probability: I and N differ in parity");
    if (bog.beta_mod == 0.0) return kNegInf;
    return log_factorial(I) - log_factorial(N) - 2.0 * log_gamma(0.5 * I + 1.0) - std::log(bog.alpha_mod) +
           I * (std::log(bog.beta_mod) - std::numbers::ln2 - std::log(bog.alpha_mod));
}

double large_mode_probability(const BogoliubovSet& bog, int N, int I) {
    return std::exp(log_large_mode_probability(bog, N, I));
}

}  // namespace tdho

#pragma once

#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace tdho {

/// Nonzero complex number stored as (log|z|, arg z). Zero is log_modulus = −∞.
struct LogComplex {
    double log_modulus = -std::numeric_limits<double>::infinity();
    double phase = 0.0;  ///< in (−π, π]

    [[nodiscard]] static LogComplex from_real(double x);
    [[nodiscard]] static LogComplex from_complex(std::complex<double> z);
    [[nodiscard]] static LogComplex zero() { return {}; }

    [[nodiscard]] bool is_zero() const noexcept { return log_modulus == -std::numeric_limits<double>::infinity(); }
    /// +1, −1 or 0 for values on the real axis; meaningless otherwise.
    [[nodiscard]] int sign() const noexcept;
    [[nodiscard]] double real_value() const;
    [[nodiscard]] std::complex<double> value() const;

    LogComplex& operator*=(const LogComplex& o);
    LogComplex& operator/=(const LogComplex& o);
    [[nodiscard]] friend LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
    [[nodiscard]] friend LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }
};

/// Wraps an angle into (−π, π].
[[nodiscard]] double wrap_phase(double phi) noexcept;

[[nodiscard]] double log_gamma(double x);
[[nodiscard]] double log_factorial(int n);

/// Gauss series 2F1(a, b; c; z) that terminates because a or b is a nonpositive integer.
[[nodiscard]] LogComplex hyp2f1_terminating(double a, double b, double c, double z);
[[nodiscard]] LogComplex hyp2f1_terminating(std::complex<double> a, std::complex<double> b,
                                            std::complex<double> c, double z);

/// Ferrers function P^{(N−M)/2}_{(N+M)/2}(1/|α|), with |β|² = |α|² − 1 supplied directly.
[[nodiscard]] LogComplex legendre_ratio_form(int N, int M, double alpha_mod, double beta_mod);
[[nodiscard]] LogComplex legendre_ratio_form(int N, int M, double inv_alpha_mod);

/// Ferrers function P_n^m(x) for integers |m| ≤ n and 0 < |x| ≤ 1.
[[nodiscard]] LogComplex ferrers_p(int degree, int order, double x);

/// Physicists' Hermite polynomial by the three-term recurrence.
[[nodiscard]] double hermite_poly(int n, double x);
/// Same recurrence with running rescaling; safe far beyond the double range.
[[nodiscard]] LogComplex hermite_poly_scaled(int n, double x);
/// Orthonormal Hermite functions H_k(x) e^{−x²/2} / √(2^k k! √π) for k = 0..out.size()−1.
void hermite_functions(double x, std::span<double> out);
[[nodiscard]] double hermite_function(int n, double x);

struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;         ///< for ∫ e^{−x²} f(x) dx
    std::vector<double> scaled_weights;  ///< weights · e^{x²}, for integrands that carry their own Gaussian
};

/// Rule of order n (exact for polynomials up to degree 2n−1). Cached; the reference stays valid.
[[nodiscard]] const GaussHermiteRule& gauss_hermite(int n);

}  // namespace tdho

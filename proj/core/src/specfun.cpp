#include "tdho/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "tdho/errors.hpp"

namespace tdho {

namespace {

constexpr double kPi = std::numbers::pi;

// Neumaier summation in extended precision.
class CompensatedSum {
public:
    void add(long double x) {
        const long double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] long double value() const { return sum_ + comp_; }

private:
    long double sum_ = 0.0L;
    long double comp_ = 0.0L;
};

// Returns n ≥ 0 if p is the nonpositive integer −n (within 1e-9), else −1.
int nonpositive_integer_index(std::complex<double> p) {
    if (std::abs(p.imag()) > 1e-9) return -1;
    const double r = std::round(p.real());
    if (r > 0.0 || std::abs(p.real() - r) > 1e-9) return -1;
    return static_cast<int>(-r);
}

}  // namespace

double wrap_phase(double phi) noexcept {
    if (phi > -kPi && phi <= kPi) return phi;
    double w = std::remainder(phi, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

LogComplex LogComplex::from_real(double x) {
    if (x == 0.0) return zero();
    return {std::log(std::abs(x)), x < 0.0 ? kPi : 0.0};
}

LogComplex LogComplex::from_complex(std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0)) return zero();
    return {std::log(std::abs(z)), std::arg(z) == -kPi ? kPi : std::arg(z)};
}

int LogComplex::sign() const noexcept {
    if (is_zero()) return 0;
    return std::cos(phase) < 0.0 ? -1 : 1;
}

double LogComplex::real_value() const {
    if (is_zero()) return 0.0;
    return sign() * std::exp(log_modulus);
}

std::complex<double> LogComplex::value() const {
    if (is_zero()) return {0.0, 0.0};
    return std::polar(std::exp(log_modulus), phase);
}

LogComplex& LogComplex::operator*=(const LogComplex& o) {
    if (is_zero() || o.is_zero()) return *this = zero();
    log_modulus += o.log_modulus;
    phase = wrap_phase(phase + o.phase);
    return *this;
}

LogComplex& LogComplex::operator/=(const LogComplex& o) {
    if (o.is_zero()) throw DomainError("LogComplex division by zero");
    if (is_zero()) return *this;
    log_modulus -= o.log_modulus;
    phase = wrap_phase(phase - o.phase);
    return *this;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
    return std::lgamma(x);
}

double log_factorial(int n) {
    if (n < 0) throw DomainError("log_factorial requires n >= 0");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

LogComplex hyp2f1_terminating(std::complex<double> a, std::complex<double> b, std::complex<double> c,
                              double z) {
    const int na = nonpositive_integer_index(a);
    const int nb = nonpositive_integer_index(b);
    if (na < 0 && nb < 0) throw UnsupportedParameter("hyp2f1_terminating: series does not terminate");
    const int n = (na < 0) ? nb : (nb < 0 ? na : std::min(na, nb));
    const int nc = nonpositive_integer_index(c);
    if (nc >= 0 && nc < n) throw PoleError("hyp2f1_terminating: c hits a pole inside the sum");

    using cld = std::complex<long double>;
    const cld al(a), bl(b), cl(c);
    CompensatedSum re, im;
    cld term(1.0L, 0.0L);
    re.add(1.0L);
    for (int k = 0; k < n; ++k) {
        const long double kk = k;
        term *= (al + kk) * (bl + kk) / ((cl + kk) * (kk + 1.0L)) * static_cast<long double>(z);
        re.add(term.real());
        im.add(term.imag());
    }
    return LogComplex::from_complex({static_cast<double>(re.value()), static_cast<double>(im.value())});
}

LogComplex hyp2f1_terminating(double a, double b, double c, double z) {
    LogComplex r = hyp2f1_terminating(std::complex<double>(a), std::complex<double>(b),
                                      std::complex<double>(c), z);
    if (!r.is_zero()) r.phase = r.phase > kPi / 2 || r.phase < -kPi / 2 ? kPi : 0.0;
    return r;
}

namespace {

// M ≥ N branch of the Ferrers value in log form.
LogComplex legendre_upper(int N, int M, double alpha_mod, double beta_mod) {
    const int k = (M - N) / 2;
    if (beta_mod == 0.0) {
        if (k != 0) return LogComplex::zero();
        return {-N * std::log(alpha_mod), 0.0};
    }
    LogComplex f = hyp2f1_terminating(-0.5 * N, 0.5 * (1 - N), 1.0 + k, -beta_mod * beta_mod);
    if (f.is_zero()) return f;
    const double la = std::log(alpha_mod);
    const double lb = std::log(beta_mod);
    f.log_modulus += -k * std::numbers::ln2 + k * (lb - la) - N * la - log_factorial(k);
    return f;
}

}  // namespace

LogComplex legendre_ratio_form(int N, int M, double alpha_mod, double beta_mod) {
    if (N < 0 || M < 0) throw DomainError("legendre_ratio_form: negative mode index");
    if ((N - M) % 2 != 0) throw ParityError("legendre_ratio_form: N and M differ in parity");
    if (!(alpha_mod >= 1.0) || !(beta_mod >= 0.0)) throw DomainError("legendre_ratio_form: need |alpha| >= 1");
    if (M >= N) return legendre_upper(N, M, alpha_mod, beta_mod);
    // Order reflection: P_n^{m} = (−1)^m (n+m)!/(n−m)! P_n^{−m}, with n+m = N, n−m = M.
    LogComplex r = legendre_upper(M, N, alpha_mod, beta_mod);
    if (r.is_zero()) return r;
    r.log_modulus += log_factorial(N) - log_factorial(M);
    if (((N - M) / 2) % 2 != 0) r.phase = wrap_phase(r.phase + kPi);
    return r;
}

LogComplex legendre_ratio_form(int N, int M, double inv_alpha_mod) {
    if (!(inv_alpha_mod > 0.0) || inv_alpha_mod > 1.0)
        throw DomainError("legendre_ratio_form: inverse |alpha| must lie in (0, 1]");
    const double alpha = 1.0 / inv_alpha_mod;
    const double beta = std::sqrt((1.0 - inv_alpha_mod) * (1.0 + inv_alpha_mod)) * alpha;
    return legendre_ratio_form(N, M, alpha, beta);
}

LogComplex ferrers_p(int degree, int order, double x) {
    if (degree < 0 || std::abs(order) > degree) throw DomainError("ferrers_p: need |order| <= degree");
    if (x == 0.0 || !(std::abs(x) <= 1.0)) throw DomainError("ferrers_p: need 0 < |x| <= 1");
    const double ax = std::abs(x);
    LogComplex r = legendre_ratio_form(degree + order, degree - order, ax);
    if (x < 0.0 && (degree + order) % 2 != 0) r.phase = wrap_phase(r.phase + kPi);
    return r;
}

double hermite_poly(int n, double x) {
    if (n < 0) throw DomainError("hermite_poly: negative order");
    double hm1 = 1.0;
    if (n == 0) return hm1;
    double h = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * h - 2.0 * k * hm1;
        hm1 = h;
        h = next;
    }
    return h;
}

LogComplex hermite_poly_scaled(int n, double x) {
    if (n < 0) throw DomainError("hermite_poly_scaled: negative order");
    constexpr double kBig = 0x1p+300;
    const double kLogBig = 300.0 * std::numbers::ln2;
    double hm1 = 1.0;
    double h = 2.0 * x;
    double log_scale = 0.0;
    if (n == 0) return LogComplex::from_real(1.0);
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * h - 2.0 * k * hm1;
        hm1 = h;
        h = next;
        if (std::abs(h) > kBig) {
            h /= kBig;
            hm1 /= kBig;
            log_scale += kLogBig;
        }
    }
    LogComplex r = LogComplex::from_real(h);
    if (!r.is_zero()) r.log_modulus += log_scale;
    return r;
}

void hermite_functions(double x, std::span<double> out) {
    if (out.empty()) return;
    out[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (out.size() == 1) return;
    out[1] = std::numbers::sqrt2 * x * out[0];
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        const double kk = static_cast<double>(k);
        out[k + 1] = std::sqrt(2.0 / (kk + 1.0)) * x * out[k] - std::sqrt(kk / (kk + 1.0)) * out[k - 1];
    }
}

double hermite_function(int n, double x) {
    if (n < 0) throw DomainError("hermite_function: negative order");
    std::vector<double> buf(static_cast<std::size_t>(n) + 1);
    hermite_functions(x, buf);
    return buf.back();
}

namespace {

std::unique_ptr<GaussHermiteRule> build_gauss_hermite(int n) {
    auto rule = std::make_unique<GaussHermiteRule>();
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("gauss_hermite: eigenvalue solver failed");

    std::vector<double> phi(static_cast<std::size_t>(n) + 1);
    rule->nodes.resize(n);
    rule->weights.resize(n);
    rule->scaled_weights.resize(n);
    const int half = n / 2;
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()[i];
        if (n % 2 == 1 && i == half) x = 0.0;
        for (int it = 0; it < 3 && x != 0.0; ++it) {
            hermite_functions(x, phi);
            const double d = std::sqrt(2.0 * n) * phi[n - 1] - x * phi[n];
            if (d == 0.0) break;
            x -= phi[n] / d;
        }
        rule->nodes[i] = x;
    }
    for (int i = 0; i < half; ++i) {
        const double x = 0.5 * (rule->nodes[n - 1 - i] - rule->nodes[i]);
        rule->nodes[i] = -x;
        rule->nodes[n - 1 - i] = x;
    }
    for (int i = 0; i < n; ++i) {
        const double x = rule->nodes[i];
        hermite_functions(x, std::span<double>(phi.data(), n));
        long double s = 0.0L;
        for (int k = 0; k < n; ++k) s += static_cast<long double>(phi[k]) * phi[k];
        rule->scaled_weights[i] = static_cast<double>(1.0L / s);
        rule->weights[i] = rule->scaled_weights[i] * std::exp(-x * x);
    }
    return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int n) {
    if (n < 1 || n > 600) throw DomainError("gauss_hermite: order must lie in [1, 600]");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = build_gauss_hermite(n);
    return *slot;
}

}  // namespace tdho

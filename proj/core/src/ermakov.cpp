#include "tdho/ermakov.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "tdho/errors.hpp"
#include "tdho/specfun.hpp"

namespace tdho {

namespace {

using Vec3 = std::array<double, 3>;

constexpr double kCollapse = 1e-6;
constexpr std::size_t kMaxSteps = 50'000'000;

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Rhs {
    const FrequencyProfile& profile;
    double omega_ref_sq;

    Vec3 operator()(double t, const Vec3& y) const {
        const double s = y[0];
        if (!(s > 0.0)) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            return {nan, nan, nan};
        }
        const double w = profile.omega(t);
        const double s2 = s * s;
        return {y[1], -w * w * s + omega_ref_sq / (s2 * s), 1.0 / s2};
    }
};

Vec3 axpy(const Vec3& y, double h, std::initializer_list<std::pair<double, const Vec3*>> terms) {
    Vec3 out = y;
    for (const auto& [a, k] : terms)
        for (int i = 0; i < 3; ++i) out[i] += h * a * (*k)[i];
    return out;
}

struct Record {
    double t;
    Vec3 y;
    Vec3 f;
};

void integrate_leg(const Rhs& rhs, double t0, const Vec3& y0, std::vector<double> stops, double rtol,
                   double atol, double max_step, std::vector<Record>& out, std::size_t& rejected) {
    if (stops.empty()) return;
    const double dir = stops.back() > t0 ? 1.0 : -1.0;
    double t = t0;
    Vec3 y = y0;
    Vec3 f = rhs(t, y);
    out.push_back({t, y, f});

    const double span = std::abs(stops.back() - t0);
    const double w0 = rhs.profile.omega(t0);
    double h = dir * std::min(span, 1e-3 / std::max({w0, std::sqrt(rhs.omega_ref_sq), 1.0}));
    std::size_t next = 0;
    std::size_t steps = 0;

    while (next < stops.size()) {
        if (++steps > kMaxSteps) throw StiffnessError("Ermakov integration exceeded the step budget", t);
        if (max_step > 0.0 && std::abs(h) > max_step) h = dir * max_step;
        const double target = stops[next];
        double hh = h;
        bool clipped = false;
        if (dir * (t + hh - target) >= 0.0) {
            hh = target - t;
            clipped = true;
        }
        if (std::abs(hh) < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            throw StiffnessError("Ermakov step size underflow", t);

        const Vec3& k1 = f;
        const Vec3 k2 = rhs(t + c2 * hh, axpy(y, hh, {{a21, &k1}}));
        const Vec3 k3 = rhs(t + c3 * hh, axpy(y, hh, {{a31, &k1}, {a32, &k2}}));
        const Vec3 k4 = rhs(t + c4 * hh, axpy(y, hh, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const Vec3 k5 = rhs(t + c5 * hh, axpy(y, hh, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const Vec3 k6 = rhs(t + hh, axpy(y, hh, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const Vec3 y5 = axpy(y, hh, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        const double t_new = clipped ? target : t + hh;
        const Vec3 k7 = rhs(t_new, y5);

        double err = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double e = hh * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / 3.0);
        if (!std::isfinite(err)) err = 1e10;

        if (err <= 1.0) {
            if (y5[0] < kCollapse)
                throw IntegrationError("sigma collapsed below " + std::to_string(kCollapse), t_new);
            t = t_new;
            y = y5;
            f = k7;
            out.push_back({t, y, f});
            const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (!clipped || fac * std::abs(hh) > std::abs(h)) h = hh * fac;
            if (clipped) ++next;
        } else {
            ++rejected;
            h = hh * std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
}

}  // namespace

std::vector<double> uniform_grid(double t_min, double t_max, std::size_t n) {
    if (n < 2) throw DomainError("uniform_grid: need at least two points");
    if (!(t_max > t_min)) throw DomainError("uniform_grid: need t_min < t_max");
    std::vector<double> g(n);
    const double h = (t_max - t_min) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = t_min + static_cast<double>(i) * h;
    g.back() = t_max;
    return g;
}

ErmakovSolution solve(const FrequencyProfile& profile, double t_min, double t_max, const ErmakovOptions& options) {
    if (!(t_min < t_max) || !std::isfinite(t_min) || !std::isfinite(t_max))
        throw DomainError("solve: need finite t_min < t_max");
    const double t_ref = options.reference_time;
    if (!(t_ref >= t_min && t_ref <= t_max)) throw DomainError("solve: reference time outside the span");
    if (!(options.rel_tol >= 1e-13 && options.rel_tol <= 1e-4))
        throw DomainError("solve: relative tolerance must lie in [1e-13, 1e-4]");
    if (!(options.abs_tol > 0.0)) throw DomainError("solve: absolute tolerance must be positive");
    const double big_omega = options.reference_frequency.value_or(profile.omega0());
    if (!(big_omega > 0.0) || !std::isfinite(big_omega))
        throw DomainError("solve: reference frequency must be positive");

    ErmakovSolution sol;
    sol.profile_ = profile;
    sol.t_ref_ = t_ref;
    sol.big_omega_ = big_omega;
    sol.rel_tol_ = options.rel_tol;
    sol.abs_tol_ = options.abs_tol;

    std::vector<double> grid;
    for (double t : options.output_times)
        if (t >= t_min && t <= t_max) grid.push_back(t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> fwd, bwd;
    for (double t : grid) {
        if (t > t_ref && t < t_max) fwd.push_back(t);
        if (t < t_ref && t > t_min) bwd.push_back(t);
    }
    if (t_max > t_ref) fwd.push_back(t_max);
    std::reverse(bwd.begin(), bwd.end());
    if (t_min < t_ref) bwd.push_back(t_min);

    const Rhs rhs{profile, big_omega * big_omega};
    const Vec3 y0{1.0, 0.0, 0.0};
    std::vector<Record> back, front;
    integrate_leg(rhs, t_ref, y0, bwd, options.rel_tol, options.abs_tol, options.max_step, back, sol.rejected_);
    integrate_leg(rhs, t_ref, y0, fwd, options.rel_tol, options.abs_tol, options.max_step, front, sol.rejected_);

    std::vector<Record> all;
    all.reserve(back.size() + front.size() + 1);
    for (auto it = back.rbegin(); it != back.rend(); ++it) all.push_back(*it);
    if (front.empty()) {
        if (all.empty()) all.push_back({t_ref, y0, rhs(t_ref, y0)});
    } else {
        if (!all.empty()) all.pop_back();
        all.insert(all.end(), front.begin(), front.end());
    }
    for (const auto& r : all) {
        sol.knots_.push_back(r.t);
        sol.y_.push_back(r.y);
        sol.f_.push_back(r.f);
    }
    sol.grid_ = std::move(grid);
    return sol;
}

bool ErmakovSolution::contains(double t) const noexcept {
    const double slack = 1e-12 * std::max(1.0, t_max() - t_min());
    return t >= t_min() - slack && t <= t_max() + slack;
}

ErmakovState ErmakovSolution::state(double t) const {
    if (!contains(t)) throw RangeError("time " + std::to_string(t) + " outside the Ermakov solution span");
    if (knots_.size() == 1) return {y_[0][0], y_[0][1], y_[0][2]};
    t = std::clamp(t, t_min(), t_max());
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    std::size_t i = (it == knots_.begin()) ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    if (i + 1 >= knots_.size()) i = knots_.size() - 2;
    if (t == knots_[i]) return {y_[i][0], y_[i][1], y_[i][2]};
    if (t == knots_[i + 1]) return {y_[i + 1][0], y_[i + 1][1], y_[i + 1][2]};

    const double h = knots_[i + 1] - knots_[i];
    const double s = (t - knots_[i]) / h;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    Vec3 v{};
    for (int k = 0; k < 3; ++k)
        v[k] = h00 * y_[i][k] + h10 * h * f_[i][k] + h01 * y_[i + 1][k] + h11 * h * f_[i + 1][k];
    return {v[0], v[1], v[2]};
}

double ErmakovSolution::sigma_ddot(double t) const {
    const auto st = state(t);
    const double w = profile_.omega(t);
    return -w * w * st.sigma + big_omega_ * big_omega_ / (st.sigma * st.sigma * st.sigma);
}

double tau_at(const ErmakovSolution& sol, double t) { return sol.state(t).tau; }

std::array<std::array<double, 2>, 2> classical_propagator(const ErmakovSolution& sol, double t) {
    const auto st = sol.state(t);
    const double W = sol.reference_frequency();
    const double c = std::cos(W * st.tau);
    const double s = std::sin(W * st.tau);
    return {{{st.sigma * c, st.sigma * s / W},
             {st.sigma_dot * c - W * s / st.sigma, st.sigma_dot * s / W + c / st.sigma}}};
}

double ermakov_residual(const ErmakovSolution& sol, double t, double h) {
    const double sdd = (sol.sigma_dot(t + h) - sol.sigma_dot(t - h)) / (2.0 * h);
    const double s = sol.sigma(t);
    const double w = sol.profile().omega(t);
    const double W = sol.reference_frequency();
    return sdd + w * w * s - W * W / (s * s * s);
}

double sech_legendre_degree(double omega0, double omega_c, double kappa) {
    if (!(omega0 > 0.0) || !(omega_c > 0.0) || !(kappa > 0.0))
        throw DomainError("sech_legendre_degree: parameters must be positive");
    const double q = (omega_c * omega_c - omega0 * omega0) / (kappa * kappa);
    return 0.5 * (std::sqrt(1.0 + 4.0 * q) - 1.0);
}

namespace {

// |F(−ν, ν+1; 1−μ; z)| with μ = iω₀/κ and z = (1 − tanh κt)/2.
double sech_hyp_modulus(double omega0, double omega_c, double kappa, double t) {
    const double nu = sech_legendre_degree(omega0, omega_c, kappa);
    const double n = std::round(nu);
    if (!(std::abs(nu - n) <= 1e-9) || n < 0.0)
        throw UnsupportedParameter("analytic sigma needs an integer Legendre degree, got " + std::to_string(nu));
    const std::complex<double> mu(0.0, omega0 / kappa);
    const double z = 1.0 / (1.0 + std::exp(2.0 * kappa * t));
    const LogComplex f = hyp2f1_terminating(std::complex<double>(-n), std::complex<double>(n + 1.0),
                                            1.0 - mu, z);
    return std::exp(f.log_modulus);
}

}  // namespace

double analytic_sigma_sech(double omega0, double omega_c, double kappa, double t, double t_norm) {
    // ((1+x)/(1−x))^{μ/2} has unit modulus for imaginary μ, so only the series survives the ratio.
    return sech_hyp_modulus(omega0, omega_c, kappa, t) / sech_hyp_modulus(omega0, omega_c, kappa, t_norm);
}

double sech_reference_frequency(double omega0, double omega_c, double kappa, double t_norm) {
    const double m = sech_hyp_modulus(omega0, omega_c, kappa, t_norm);
    return omega0 / (m * m);
}

}  // namespace tdho

#include "tdho/representations.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tdho/errors.hpp"
#include "tdho/specfun.hpp"

namespace tdho {

namespace {

struct Unrotated {
    std::complex<double> gamma;
    std::complex<double> delta;
    double tau;
    double big_omega;
};

// α = γ e^{−iΩτ}, β = δ e^{+iΩτ}.
Unrotated unrotated(const ErmakovSolution& sol, Representation rep, double t) {
    const auto st = sol.state(t);
    const double W = sol.reference_frequency();
    const double s = st.sigma;
    switch (rep) {
        case Representation::Initial:
            return {{0.5 * (s + 1.0 / s), 0.5 * st.sigma_dot / W},
                    {0.5 * (s - 1.0 / s), 0.5 * st.sigma_dot / W}, st.tau, W};
        case Representation::Diagonal: {
            const double w = sol.profile().omega(t);
            const double pre = 0.5 * std::sqrt(w / W);
            return {{pre * (s + W / (s * w)), pre * st.sigma_dot / w},
                    {pre * (s - W / (s * w)), pre * st.sigma_dot / w}, st.tau, W};
        }
        case Representation::Invariant:
            return {{1.0, 0.0}, {0.0, 0.0}, st.tau, W};
    }
    return {{1.0, 0.0}, {0.0, 0.0}, st.tau, W};
}

double unwrap_near(double phi, double previous) {
    return previous + wrap_phase(phi - previous);
}

}  // namespace

const char* to_string(Representation rep) noexcept {
    switch (rep) {
        case Representation::Initial: return "initial";
        case Representation::Diagonal: return "diagonal";
        case Representation::Invariant: return "invariant";
    }
    return "unknown";
}

Representation representation_from_string(std::string_view name) {
    if (name == "initial") return Representation::Initial;
    if (name == "diagonal") return Representation::Diagonal;
    if (name == "invariant") return Representation::Invariant;
    throw DomainError("unknown representation '" + std::string(name) + "'");
}

BogoliubovSet bogoliubov(const ErmakovSolution& sol, Representation rep, double t) {
    const Unrotated u = unrotated(sol, rep, t);
    const double rot = u.big_omega * u.tau;
    BogoliubovSet b;
    b.representation = rep;
    b.t = t;
    b.alpha = u.gamma * std::polar(1.0, -rot);
    b.beta = u.delta * std::polar(1.0, rot);
    b.beta_mod = std::abs(u.delta);
    b.alpha_mod = std::hypot(1.0, b.beta_mod);
    b.theta_alpha = std::arg(u.gamma) - rot;
    b.theta_beta = b.beta_mod == 0.0 ? 0.0 : wrap_phase(std::arg(u.delta) + rot);
    b.r = std::asinh(b.beta_mod);
    return b;
}

std::vector<BogoliubovSet> bogoliubov_series(const ErmakovSolution& sol, Representation rep,
                                             std::span<const double> times) {
    std::vector<BogoliubovSet> out;
    out.reserve(times.size());
    for (double t : times) {
        BogoliubovSet b = bogoliubov(sol, rep, t);
        if (!out.empty()) b.theta_beta = unwrap_near(b.theta_beta, out.back().theta_beta);
        out.push_back(b);
    }
    return out;
}

HamiltonianCoeffs hamiltonian_coeffs(const ErmakovSolution& sol, Representation rep, double t) {
    const double W = sol.reference_frequency();
    const double w = sol.profile().omega(t);
    HamiltonianCoeffs h;
    h.representation = rep;
    h.t = t;
    switch (rep) {
        case Representation::Initial: {
            const double lp = -0.25 * W * (1.0 - (w / W) * (w / W));
            h.lambda_plus = lp;
            h.lambda_minus = lp;
            h.lambda0 = 0.5 * W * (1.0 + (w / W) * (w / W));
            break;
        }
        case Representation::Diagonal:
            h.lambda0 = w;
            break;
        case Representation::Invariant: {
            const auto st = sol.state(t);
            const double s = st.sigma;
            const std::complex<double> q(st.sigma_dot, -W / s);
            h.lambda_minus = (q * q + w * w * s * s) / (4.0 * W);
            h.lambda_plus = std::conj(h.lambda_minus);
            h.lambda0 = (st.sigma_dot * st.sigma_dot + W * W / (s * s) + w * w * s * s) / (2.0 * W);
            break;
        }
    }
    return h;
}

double phase_sum(const ErmakovSolution& sol, Representation rep, double t) {
    if (rep == Representation::Invariant) return 0.0;
    const Unrotated u = unrotated(sol, rep, t);
    const std::complex<double> p = u.gamma * u.delta;
    if (p == std::complex<double>(0.0, 0.0)) return 0.0;
    return wrap_phase(std::atan2(p.imag(), p.real()));
}

std::vector<double> phase_sum_series(const ErmakovSolution& sol, Representation rep, std::span<const double> times) {
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        const double p = phase_sum(sol, rep, t);
        out.push_back(out.empty() ? p : unwrap_near(p, out.back()));
    }
    return out;
}

double modulus_sum(const ErmakovSolution& sol, Representation rep, double t) {
    const auto st = sol.state(t);
    const double W = sol.reference_frequency();
    const double s = st.sigma;
    switch (rep) {
        case Representation::Initial:
            return 0.5 * (s * s + 1.0 / (s * s) + st.sigma_dot * st.sigma_dot / (W * W));
        case Representation::Diagonal: {
            const double w = sol.profile().omega(t);
            return (st.sigma_dot * st.sigma_dot + W * W / (s * s) + w * w * s * s) / (2.0 * W * w);
        }
        case Representation::Invariant:
            return 1.0;
    }
    return 1.0;
}

double beta_mod_sq(const ErmakovSolution& sol, Representation rep, double t) {
    const auto st = sol.state(t);
    const double W = sol.reference_frequency();
    const double s = st.sigma;
    switch (rep) {
        case Representation::Initial: {
            const double d = s - 1.0 / s;
            return 0.25 * (d * d + st.sigma_dot * st.sigma_dot / (W * W));
        }
        case Representation::Diagonal: {
            const double w = sol.profile().omega(t);
            const double d = s - W / (s * w);
            return 0.25 * (w / W) * (d * d + st.sigma_dot * st.sigma_dot / (w * w));
        }
        case Representation::Invariant:
            return 0.0;
    }
    return 0.0;
}

double representation_frequency(const ErmakovSolution& sol, Representation rep, double t) {
    switch (rep) {
        case Representation::Initial: return sol.reference_frequency();
        case Representation::Diagonal: return sol.profile().omega(t);
        case Representation::Invariant: return hamiltonian_coeffs(sol, rep, t).lambda0;
    }
    return sol.reference_frequency();
}

}  // namespace tdho

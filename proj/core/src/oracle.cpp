#include "tdho/oracle.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "tdho/errors.hpp"
#include "tdho/specfun.hpp"

namespace tdho {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<std::complex<double>>;

struct PairHamiltonian {
    const FrequencyProfile* profile;
    double big_omega;
    std::vector<double> pair;  // √(M(M−1))

    PairHamiltonian(const FrequencyProfile& p, double W, int D) : profile(&p), big_omega(W), pair(D) {
        for (int M = 0; M < D; ++M) pair[M] = std::sqrt(static_cast<double>(M) * (M - 1.0));
    }

    void coefficients(double t, double& lp, double& l0) const {
        const double ratio = profile->omega(t) / big_omega;
        lp = -0.25 * big_omega * (1.0 - ratio * ratio);
        l0 = 0.5 * big_omega * (1.0 + ratio * ratio);
    }

    void apply(const State& c, State& out, double t) const {
        double lp = 0.0, l0 = 0.0;
        coefficients(t, lp, l0);
        const std::size_t D = c.size();
        for (std::size_t M = 0; M < D; ++M) {
            std::complex<double> h = l0 * (M + 0.5) * c[M];
            if (M >= 2) h += lp * pair[M] * c[M - 2];
            if (M + 2 < D) h += lp * pair[M + 2] * c[M + 2];
            out[M] = h;
        }
    }

    void operator()(const State& c, State& dcdt, double t) const {
        apply(c, dcdt, t);
        for (auto& v : dcdt) v = std::complex<double>(v.imag(), -v.real());
    }
};

}  // namespace

double FockState::norm_sq() const {
    long double s = 0.0L;
    for (const auto& c : amplitudes) s += std::norm(c);
    return static_cast<double>(s);
}

double FockState::top_band_mass() const {
    const std::size_t D = amplitudes.size();
    const std::size_t start = D - std::max<std::size_t>(1, D / 10);
    long double s = 0.0L;
    for (std::size_t M = start; M < D; ++M) s += std::norm(amplitudes[M]);
    return static_cast<double>(s);
}

double FockState::mean_occupation() const {
    long double s = 0.0L;
    for (std::size_t M = 0; M < amplitudes.size(); ++M) s += static_cast<long double>(M) * std::norm(amplitudes[M]);
    return static_cast<double>(s);
}

std::vector<FockState> evolve_fock(const FrequencyProfile& profile, int N, std::span<const double> times,
                                   const FockOptions& options) {
    if (N < 0) throw DomainError("evolve_fock: N must be nonnegative");
    const int D = options.dimension > 0 ? options.dimension : std::max(200, 8 * N + 100);
    if (N >= D) throw DomainError("evolve_fock: N must be below the basis dimension");
    const double W = options.reference_frequency.value_or(profile.omega0());
    const double t_ref = options.reference_time;

    const PairHamiltonian system(profile, W, D);
    State c0(static_cast<std::size_t>(D), {0.0, 0.0});
    c0[static_cast<std::size_t>(N)] = 1.0;

    std::vector<FockState> out(times.size());
    std::vector<std::size_t> fwd, bwd;
    for (std::size_t i = 0; i < times.size(); ++i) (times[i] >= t_ref ? fwd : bwd).push_back(i);
    std::sort(fwd.begin(), fwd.end(), [&](auto a, auto b) { return times[a] < times[b]; });
    std::sort(bwd.begin(), bwd.end(), [&](auto a, auto b) { return times[a] > times[b]; });

    using Stepper = odeint::runge_kutta_fehlberg78<State>;
    // The state can spread further between requested times than at them, so the top band is watched at
    // every accepted step.
    FockState probe;
    double worst_leak = 0.0, worst_t = t_ref;
    auto watch = [&](const State& x, double t) {
        probe.amplitudes = x;
        if (const double m = probe.top_band_mass(); m > worst_leak) worst_leak = m, worst_t = t;
    };
    for (const auto* leg : {&fwd, &bwd}) {
        if (leg->empty()) continue;
        const double dir = leg == &fwd ? 1.0 : -1.0;
        const double dt0 = dir * 1e-3 / std::max({W, profile.omega(t_ref), 1.0}) / D;
        auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol, Stepper());
        State c = c0;
        double t = t_ref;
        for (auto i : *leg) {
            if (times[i] != t) odeint::integrate_adaptive(stepper, system, c, t, times[i], dt0, watch);
            t = times[i];
            out[i].t = t;
            out[i].amplitudes = c;
        }
    }
    if (worst_leak > options.leak_tol) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "Fock basis of dimension %d leaks %.3g into its top band at t=%.6g", D,
                      worst_leak, worst_t);
        throw DimensionError(std::string(msg) + "; increase the dimension");
    }
    return out;
}

double fock_energy(const FrequencyProfile& profile, double big_omega, const FockState& state) {
    const PairHamiltonian h(profile, big_omega, state.dimension());
    State hc(state.amplitudes.size());
    h.apply(state.amplitudes, hc, state.t);
    std::complex<double> e{0.0, 0.0};
    for (std::size_t M = 0; M < hc.size(); ++M) e += std::conj(state.amplitudes[M]) * hc[M];
    return e.real();
}

WavefunctionSpec WavefunctionSpec::static_state(double omega, int N) {
    if (!(omega > 0.0) || N < 0) throw DomainError("static wavefunction: need omega > 0 and N >= 0");
    WavefunctionSpec w;
    w.kind = Kind::Static;
    w.N = N;
    w.a = omega;
    w.amplitude = std::pow(omega, 0.25);
    return w;
}

WavefunctionSpec WavefunctionSpec::diagonal(const ErmakovSolution& sol, double t, int N) {
    WavefunctionSpec w = static_state(sol.profile().omega(t), N);
    w.kind = Kind::Diagonal;
    return w;
}

WavefunctionSpec WavefunctionSpec::invariant(const ErmakovSolution& sol, double t, int N) {
    if (N < 0) throw DomainError("invariant wavefunction: N must be nonnegative");
    const auto st = sol.state(t);
    const double W = sol.reference_frequency();
    WavefunctionSpec w;
    w.kind = Kind::Invariant;
    w.N = N;
    w.a = W / (st.sigma * st.sigma);
    w.b = st.sigma_dot / (2.0 * st.sigma);
    w.amplitude = std::pow(W, 0.25) / std::sqrt(st.sigma);
    w.phase = -(N + 0.5) * W * st.tau;
    return w;
}

std::complex<double> WavefunctionSpec::operator()(double x) const {
    return amplitude * hermite_function(N, std::sqrt(a) * x) * std::polar(1.0, phase + b * x * x);
}

std::complex<double> wavefunction_overlap(const WavefunctionSpec& bra, const WavefunctionSpec& ket, int n_nodes) {
    const double R = 0.5 * (bra.a + ket.a);
    if (!(R > 0.0)) throw DomainError("wavefunction_overlap: combined Gaussian is not decaying");
    const GaussHermiteRule& rule = gauss_hermite(n_nodes);
    const double sb = std::sqrt(bra.a / R), sk = std::sqrt(ket.a / R);
    const double chirp = (ket.b - bra.b) / R;
    std::vector<double> hb(static_cast<std::size_t>(bra.N) + 1), hk(static_cast<std::size_t>(ket.N) + 1);
    long double re = 0.0L, im = 0.0L;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = rule.nodes[i];
        hermite_functions(sb * u, hb);
        hermite_functions(sk * u, hk);
        const double mag = rule.scaled_weights[i] * hb.back() * hk.back();
        const double ph = chirp * u * u;
        re += static_cast<long double>(mag * std::cos(ph));
        im += static_cast<long double>(mag * std::sin(ph));
    }
    const std::complex<double> pre = bra.amplitude * ket.amplitude / std::sqrt(R) * std::polar(1.0, ket.phase - bra.phase);
    return pre * std::complex<double>(static_cast<double>(re), static_cast<double>(im));
}

std::complex<double> overlap_quadrature(const ErmakovSolution& sol, Representation rep, int N, int M, double t,
                                        int n_nodes) {
    if (N < 0 || M < 0) throw DomainError("overlap_quadrature: negative mode index");
    if (n_nodes < 2 * (M + N)) throw DomainError("overlap_quadrature: need at least 2(M+N) nodes");
    WavefunctionSpec bra;
    switch (rep) {
        case Representation::Initial: bra = WavefunctionSpec::static_state(sol.reference_frequency(), M); break;
        case Representation::Diagonal: bra = WavefunctionSpec::diagonal(sol, t, M); break;
        case Representation::Invariant: bra = WavefunctionSpec::invariant(sol, t, M); break;
    }
    return wavefunction_overlap(bra, WavefunctionSpec::invariant(sol, t, N), std::max(n_nodes, 1));
}

std::vector<double> diagonal_projection(const FrequencyProfile& profile, double big_omega, const FockState& state,
                                        int n_nodes) {
    const int D = state.dimension();
    const int n = n_nodes > 0 ? n_nodes : std::min(600, D + 60);
    const double w = profile.omega(state.t);
    const double R = 0.5 * (big_omega + w);
    const GaussHermiteRule& rule = gauss_hermite(n);
    const double s_basis = std::sqrt(big_omega / R), s_diag = std::sqrt(w / R);
    const double pre = std::pow(big_omega * w, 0.25) / std::sqrt(R);
    std::vector<double> hb(static_cast<std::size_t>(D)), hd(static_cast<std::size_t>(D));
    std::vector<std::complex<double>> proj(static_cast<std::size_t>(D), {0.0, 0.0});
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = rule.nodes[i];
        hermite_functions(s_basis * u, hb);
        hermite_functions(s_diag * u, hd);
        std::complex<double> psi{0.0, 0.0};
        for (int M = 0; M < D; ++M) psi += state.amplitudes[static_cast<std::size_t>(M)] * hb[static_cast<std::size_t>(M)];
        const std::complex<double> wpsi = rule.scaled_weights[i] * pre * psi;
        for (int K = 0; K < D; ++K) proj[static_cast<std::size_t>(K)] += hd[static_cast<std::size_t>(K)] * wpsi;
    }
    std::vector<double> probs(static_cast<std::size_t>(D));
    for (int K = 0; K < D; ++K) probs[static_cast<std::size_t>(K)] = std::norm(proj[static_cast<std::size_t>(K)]);
    return probs;
}

std::vector<double> wavefunction_grid(const ErmakovSolution& sol, int N, double t) {
    const auto st = sol.state(t);
    const double ell = st.sigma / std::sqrt(sol.reference_frequency());
    const double half_width = ell * (std::sqrt(2.0 * N + 1.0) + 7.0);
    const double chirp_k = std::abs(st.sigma_dot / st.sigma) * half_width;
    const double k_max = std::sqrt(2.0 * N + 1.0) / ell + chirp_k + 1.0 / ell;
    const double dx = std::min(ell / 20.0, 2.0 * std::numbers::pi / (80.0 * k_max));
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * half_width / dx)) + 1;
    return uniform_grid(-half_width, half_width, std::max<std::size_t>(n, 9));
}

WavefunctionReport check_invariant_wavefunction(const ErmakovSolution& sol, int N, double t,
                                                std::span<const double> grid) {
    if (grid.size() < 9) throw DomainError("check_invariant_wavefunction: grid too small");
    const std::size_t n = grid.size();
    const double dx = (grid.back() - grid.front()) / static_cast<double>(n - 1);
    const double energy_scale = hamiltonian_coeffs(sol, Representation::Invariant, t).lambda0 * (N + 0.5);
    double ht = 0.02 / std::max(1.0, energy_scale);
    ht = std::min(ht, 0.25 * std::min(t - sol.t_min(), sol.t_max() - t));
    if (!(ht > 0.0)) throw DomainError("check_invariant_wavefunction: t too close to the solution boundary");

    const WavefunctionSpec w0 = WavefunctionSpec::invariant(sol, t, N);
    std::array<WavefunctionSpec, 4> shifted{WavefunctionSpec::invariant(sol, t - 2 * ht, N),
                                            WavefunctionSpec::invariant(sol, t - ht, N),
                                            WavefunctionSpec::invariant(sol, t + ht, N),
                                            WavefunctionSpec::invariant(sol, t + 2 * ht, N)};
    std::vector<std::complex<double>> psi(n);
    for (std::size_t i = 0; i < n; ++i) psi[i] = w0(grid[i]);

    const double w = sol.profile().omega(t);
    long double res = 0.0L, ref = 0.0L, norm = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const double wt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        norm += wt * std::norm(psi[i]) * dx;
        if (i < 2 || i + 2 >= n) continue;
        const double x = grid[i];
        const std::complex<double> dt =
            (shifted[0](x) - 8.0 * shifted[1](x) + 8.0 * shifted[2](x) - shifted[3](x)) / (12.0 * ht);
        const std::complex<double> dxx =
            (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] + 16.0 * psi[i + 1] - psi[i + 2]) / (12.0 * dx * dx);
        const std::complex<double> hpsi = -0.5 * dxx + 0.5 * w * w * x * x * psi[i];
        res += std::norm(std::complex<double>(0.0, 1.0) * dt - hpsi);
        ref += std::norm(hpsi);
    }
    WavefunctionReport r;
    r.norm_error = std::abs(static_cast<double>(norm) - 1.0);
    r.schrodinger_residual = std::sqrt(static_cast<double>(res / ref));
    for (int M = 0; M <= N + 4; ++M) {
        if (M == N) continue;
        const auto ov = wavefunction_overlap(WavefunctionSpec::invariant(sol, t, M), w0, 2 * (M + N) + 60);
        r.max_overlap_offdiag = std::max(r.max_overlap_offdiag, std::abs(ov));
    }
    return r;
}

void OracleReport::add(std::string name, double measured, double tolerance) {
    checks.push_back({std::move(name), measured, tolerance, measured <= tolerance});
}

bool OracleReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.passed; });
}

}  // namespace tdho

#include "tdho/thermo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "tdho/errors.hpp"
#include "tdho/representations.hpp"

namespace tdho {

namespace {

struct Local {
    double s, sd, w, wd, W, half;
};

Local local(const ErmakovSolution& sol, int N, double t) {
    if (N < 0) throw DomainError("thermo: N must be nonnegative");
    const auto st = sol.state(t);
    return {st.sigma, st.sigma_dot, sol.profile().omega(t), sol.profile().omega_dot(t), sol.reference_frequency(),
            N + 0.5};
}

}  // namespace

Occupations occupations(const ErmakovSolution& sol, int N, double t) {
    Occupations o;
    o.N0 = modulus_sum(sol, Representation::Initial, t) * N + beta_mod_sq(sol, Representation::Initial, t);
    o.N_omega = modulus_sum(sol, Representation::Diagonal, t) * N + beta_mod_sq(sol, Representation::Diagonal, t);
    return o;
}

EnergyForms energy_unchecked(const ErmakovSolution& sol, int N, double t) {
    const Local l = local(sol, N, t);
    const Occupations o = occupations(sol, N, t);
    EnergyForms e;
    e.diagonal = l.w * (o.N_omega + 0.5);
    e.invariant = hamiltonian_coeffs(sol, Representation::Invariant, t).lambda0 * l.half;
    e.eps0 = 0.5 * l.W + l.s * l.s * (l.w * l.w - l.W * l.W) * l.half / (2.0 * l.W);
    e.initial = l.W * o.N0 + e.eps0;
    const double scale = std::max({std::abs(e.diagonal), std::abs(e.invariant), std::abs(e.initial)});
    e.max_rel_discrepancy = std::max({std::abs(e.diagonal - e.invariant), std::abs(e.diagonal - e.initial),
                                      std::abs(e.invariant - e.initial)}) /
                            scale;
    return e;
}

EnergyForms energy(const ErmakovSolution& sol, int N, double t) {
    EnergyForms e = energy_unchecked(sol, N, t);
    if (e.max_rel_discrepancy > 1e-6)
        throw ConsistencyError("energy forms disagree by " + std::to_string(e.max_rel_discrepancy) + " at t=" +
                               std::to_string(t));
    return e;
}

RateBundle heat_work_rates(const ErmakovSolution& sol, int N, double t) {
    const Local l = local(sol, N, t);
    const double s2 = l.s * l.s;
    RateBundle r;
    r.Edot = l.w * l.wd * s2 * l.half / l.W;
    const double a = s2 * l.w;
    const double b = l.W * l.W / (s2 * l.w);
    const double c = l.sd * l.sd / l.w;
    r.Qdot_omega = l.wd / (2.0 * l.W) * (a - b - c) * l.half;
    r.Wdot_omega = l.wd / (2.0 * l.W) * (a + b + c) * l.half;
    const double spring = l.s * l.sd * (l.w * l.w - l.W * l.W) / l.W;
    r.Qdot_0 = -spring * l.half;
    r.Wdot_0 = (spring + s2 * l.w * l.wd / l.W) * l.half;
    r.Qdot_I = 0.0;
    r.Wdot_I = r.Edot;
    return r;
}

double n_omega_dot(const ErmakovSolution& sol, int N, double t) {
    const Local l = local(sol, N, t);
    const double lambda0 = hamiltonian_coeffs(sol, Representation::Invariant, t).lambda0;
    return l.half * l.wd * (l.s * l.s / l.W - lambda0 / (l.w * l.w));
}

double n0_dot(const ErmakovSolution& sol, int N, double t) {
    const Local l = local(sol, N, t);
    return -l.half * l.s * l.sd * (l.w * l.w - l.W * l.W) / (l.W * l.W);
}

namespace {

int auto_subdivisions(const ErmakovSolution& sol, std::span<const double> times) {
    double fastest = 0.0;
    double widest = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double s = sol.sigma(times[i]);
        fastest = std::max({fastest, sol.profile().omega(times[i]), sol.reference_frequency() / (s * s)});
        if (i > 0) widest = std::max(widest, times[i] - times[i - 1]);
    }
    // About 80 samples per period of the doubled frequency.
    const double h_target = std::numbers::pi / (40.0 * std::max(fastest, 1e-300)) / 2.0;
    int n = static_cast<int>(std::ceil(widest / h_target));
    n = std::clamp(n, 2, 4096);
    return n + (n % 2);
}

}  // namespace

CumulativeSeries cumulative(const ErmakovSolution& sol, int N, std::span<const double> times, int subdivisions) {
    if (times.size() < 2) throw DomainError("cumulative: need at least two times");
    if (subdivisions < 0 || subdivisions % 2 != 0) throw DomainError("cumulative: subdivisions must be even");
    const int sub = subdivisions == 0 ? auto_subdivisions(sol, times) : subdivisions;

    CumulativeSeries c;
    c.times.assign(times.begin(), times.end());
    c.subdivisions = sub;
    const std::size_t n = times.size();
    for (auto* v : {&c.Q_0, &c.W_0, &c.Q_omega, &c.W_omega, &c.Q_I, &c.W_I}) v->assign(n, 0.0);
    c.E.resize(n);
    c.Q_0_closed.resize(n);
    c.W_0_closed.resize(n);

    const double W = sol.reference_frequency();
    for (std::size_t i = 0; i < n; ++i) {
        const double t = times[i];
        c.E[i] = energy_unchecked(sol, N, t).invariant;
        const auto st = sol.state(t);
        const double w = sol.profile().omega(t);
        c.Q_0_closed[i] = W * (occupations(sol, N, t).N0 + 0.5);
        c.W_0_closed[i] = st.sigma * st.sigma * (w * w - W * W) * (N + 0.5) / (2.0 * W);
    }

    std::array<long double, 5> acc{};
    RateBundle left = heat_work_rates(sol, N, times[0]);
    for (std::size_t i = 1; i < n; ++i) {
        const double a = times[i - 1];
        const double h = (times[i] - a) / sub;
        std::array<long double, 5> part{};
        auto add = [&](const RateBundle& r, long double wgt) {
            part[0] += wgt * r.Qdot_0;
            part[1] += wgt * r.Wdot_0;
            part[2] += wgt * r.Qdot_omega;
            part[3] += wgt * r.Wdot_omega;
            part[4] += wgt * r.Wdot_I;
        };
        add(left, 1.0L);
        for (int k = 1; k < sub; ++k) add(heat_work_rates(sol, N, a + k * h), (k % 2 == 1) ? 4.0L : 2.0L);
        const RateBundle right = heat_work_rates(sol, N, times[i]);
        add(right, 1.0L);
        for (int k = 0; k < 5; ++k) acc[k] += part[k] * static_cast<long double>(h) / 3.0L;
        c.Q_0[i] = static_cast<double>(acc[0]);
        c.W_0[i] = static_cast<double>(acc[1]);
        c.Q_omega[i] = static_cast<double>(acc[2]);
        c.W_omega[i] = static_cast<double>(acc[3]);
        c.W_I[i] = static_cast<double>(acc[4]);
        left = right;
    }
    return c;
}

std::vector<ThermoRecord> thermo_series(const ErmakovSolution& sol, int N, std::span<const double> times) {
    std::vector<ThermoRecord> out;
    out.reserve(times.size());
    const CumulativeSeries cum = times.size() >= 2 ? cumulative(sol, N, times) : CumulativeSeries{};
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        const Occupations o = occupations(sol, N, t);
        const EnergyForms e = energy(sol, N, t);
        const RateBundle r = heat_work_rates(sol, N, t);
        ThermoRecord rec;
        rec.t = t;
        rec.N0 = o.N0;
        rec.N_omega = o.N_omega;
        rec.N_inv = N;
        rec.E = e.invariant;
        rec.eps0 = e.eps0;
        rec.Qdot_0 = r.Qdot_0;
        rec.Wdot_0 = r.Wdot_0;
        rec.Qdot_omega = r.Qdot_omega;
        rec.Wdot_omega = r.Wdot_omega;
        rec.Qdot_I = r.Qdot_I;
        rec.Wdot_I = r.Wdot_I;
        if (times.size() >= 2) {
            rec.Q_0 = cum.Q_0[i];
            rec.W_0 = cum.W_0[i];
            rec.Q_omega = cum.Q_omega[i];
            rec.W_omega = cum.W_omega[i];
            rec.W_I = cum.W_I[i];
        }
        out.push_back(rec);
    }
    return out;
}

double trailing_mean(std::span<const double> times, std::span<const double> values, double fraction) {
    if (times.size() != values.size() || times.size() < 2) throw DomainError("trailing_mean: bad input sizes");
    if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("trailing_mean: fraction must lie in (0, 1]");
    const double start = times.back() - fraction * (times.back() - times.front());
    long double area = 0.0L;
    double span = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i] <= start) continue;
        const double a = std::max(times[i - 1], start);
        double va = values[i - 1];
        if (a > times[i - 1])
            va += (values[i] - values[i - 1]) * (a - times[i - 1]) / (times[i] - times[i - 1]);
        area += 0.5L * (va + values[i]) * (times[i] - a);
        span += times[i] - a;
    }
    return static_cast<double>(area / span);
}

}  // namespace tdho

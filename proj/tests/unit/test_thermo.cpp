#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "tdho/errors.hpp"
#include "tdho/representations.hpp"
#include "tdho/thermo.hpp"
#include "tdho/transitions.hpp"

using namespace tdho;

TEST(Occupations, StartAtN) {
    for (const auto* sol : {&fixtures::example1(), &fixtures::example2()})
        for (int N : {0, 1, 8}) {
            const auto o = occupations(*sol, N, sol->reference_time());
            EXPECT_NEAR(o.N0, N, 1e-14);
            EXPECT_NEAR(o.N_omega, N, 1e-14);
        }
}

TEST(Occupations, ConstantFrequencyKeepsN) {
    const auto sol = solve(FrequencyProfile::constant(3.0), -2.0, 2.0);
    for (double t : {-2.0, 0.3, 1.1}) {
        const auto o = occupations(sol, 4, t);
        EXPECT_NEAR(o.N0, 4.0, 1e-12);
        EXPECT_NEAR(o.N_omega, 4.0, 1e-12);
    }
}

TEST(Occupations, VacuumMatchesTableMean) {
    const auto& sol = fixtures::example1();
    const auto tab = probability_table(sol, Representation::Initial, 0, std::vector<double>{1.5, 1.8, 2.0});
    for (std::size_t i = 0; i < tab.n_times(); ++i)
        EXPECT_NEAR(occupations(sol, 0, tab.times[i]).N0, tab.mean(i), 1e-6);
}

TEST(Energy, FormsAgreeEverywhere) {
    for (const auto* sol : {&fixtures::example1(), &fixtures::example2()})
        for (int N : {0, 1, 8})
            for (double t : sol->grid()) EXPECT_LT(energy(*sol, N, t).max_rel_discrepancy, 1e-8);
}

TEST(Energy, AtReferenceIsGroundLadder) {
    const auto& sol = fixtures::example1();
    const auto e = energy(sol, 3, sol.reference_time());
    const double expect = sol.reference_frequency() * 3.5;
    EXPECT_NEAR(e.diagonal, expect, 1e-12 * expect);
    EXPECT_NEAR(e.invariant, expect, 1e-12 * expect);
    EXPECT_NEAR(e.initial, expect, 1e-12 * expect);
}

TEST(Energy, BumpPeakValue) {
    const auto sol = solve(fixtures::example2_profile(), -3.0, 3.0);
    EXPECT_NEAR(energy(sol, 1, 0.0).invariant, 39.75, 1e-12);
    EXPECT_NEAR(energy(sol, 1, 0.0).diagonal, 39.75, 1e-12);
}

TEST(Energy, QuasiStaticFollowsFrequency) {
    const auto p = FrequencyProfile::tanh_step(10.0, 100.0, 0.2);
    const auto sol = fixtures::solve_in_region(p, -60.0, 0.0);
    const double e = energy(sol, 2, 0.0).invariant;
    EXPECT_NEAR(e / (p.omega(0.0) * 2.5), 1.0, 2e-5);
}

TEST(Rates, AllRepresentationsShareEdot) {
    std::mt19937 rng(4);
    for (const auto* sol : {&fixtures::example1(), &fixtures::example2()}) {
        std::uniform_real_distribution<double> u(sol->t_min(), sol->t_max());
        for (int i = 0; i < 300; ++i) {
            const auto r = heat_work_rates(*sol, 1, u(rng));
            const double scale = std::max({1.0, std::abs(r.Edot), std::abs(r.Qdot_0), std::abs(r.Wdot_0)});
            EXPECT_NEAR(r.Qdot_0 + r.Wdot_0, r.Edot, 1e-9 * scale);
            EXPECT_NEAR(r.Qdot_omega + r.Wdot_omega, r.Edot, 1e-9 * scale);
            EXPECT_NEAR(r.Qdot_I + r.Wdot_I, r.Edot, 1e-9 * scale);
            EXPECT_EQ(r.Qdot_I, 0.0);
        }
    }
}

TEST(Rates, EdotMatchesEnergyDifference) {
    const auto& sol = fixtures::example2();
    const double h = 1e-5;
    for (double t : {-1.0, -0.1, 0.25, 0.8}) {
        const double fd = (energy(sol, 2, t + h).invariant - energy(sol, 2, t - h).invariant) / (2 * h);
        const double an = heat_work_rates(sol, 2, t).Edot;
        EXPECT_NEAR(fd, an, 1e-5 * std::max(1.0, std::abs(an)));
    }
}

TEST(Rates, FlatFrequencyKillsDiagonalRates) {
    const auto sol = solve(FrequencyProfile::constant(3.0), -1.0, 1.0, {.reference_frequency = 2.0});
    const auto r = heat_work_rates(sol, 1, 0.5);
    EXPECT_EQ(r.Qdot_omega, 0.0);
    EXPECT_EQ(r.Wdot_omega, 0.0);
    // σ oscillates because Ω ≠ ω, so the initial representation still exchanges heat.
    const double s = sol.sigma(0.5), sd = sol.sigma_dot(0.5);
    EXPECT_NEAR(r.Qdot_0, -(s * sd / 2.0) * (9.0 - 4.0) * 1.5, 1e-10);
    EXPECT_NE(r.Qdot_0, 0.0);
}

TEST(Rates, BumpHeatVanishesFarAway) {
    const auto& sol = fixtures::example2();
    double peak = 0.0;
    for (double t : sol.grid()) peak = std::max(peak, std::abs(heat_work_rates(sol, 1, t).Qdot_0));
    for (double t : {-3.0, 3.0}) {
        const auto r = heat_work_rates(sol, 1, t);
        EXPECT_LT(std::abs(r.Qdot_0), 1e-6 * peak);
        EXPECT_LT(std::abs(r.Qdot_omega), 1e-6 * peak);
    }
}

TEST(Rates, DiagonalHeatIsFrequencyTimesParticleRate) {
    std::mt19937 rng(8);
    const auto& sol = fixtures::example1();
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 100; ++i) {
        const double t = u(rng);
        const double w = sol.profile().omega(t);
        const auto r = heat_work_rates(sol, 2, t);
        const double nd = n_omega_dot(sol, 2, t);
        EXPECT_NEAR(r.Qdot_omega, w * nd, 1e-8 * std::max(1.0, std::abs(r.Qdot_omega)));
        const auto b = bogoliubov(sol, Representation::Diagonal, t);
        const double appendix = 2.0 * sol.profile().omega_dot(t) * (b.alpha * b.beta).real() * 2.5;
        EXPECT_NEAR(appendix, r.Qdot_omega, 1e-9 * std::max(1.0, std::abs(r.Qdot_omega)));
        const double h = 1e-6;
        const double fd = (occupations(sol, 2, t + h).N_omega - occupations(sol, 2, t - h).N_omega) / (2 * h);
        EXPECT_NEAR(fd, nd, 1e-5 * std::max(1.0, std::abs(nd)));
        const double fd0 = (occupations(sol, 2, t + h).N0 - occupations(sol, 2, t - h).N0) / (2 * h);
        EXPECT_NEAR(fd0, n0_dot(sol, 2, t), 1e-5 * std::max(1.0, std::abs(fd0)));
    }
}

TEST(Cumulative, FirstLawPerRepresentation) {
    for (const auto* sol : {&fixtures::example1(), &fixtures::example2()}) {
        const auto c = cumulative(*sol, 1, sol->grid());
        double worst0 = 0.0, worstw = 0.0, worsti = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < c.times.size(); ++i) {
            const double dE = c.E[i] - c.E[0];
            scale = std::max(scale, std::abs(dE));
            worst0 = std::max(worst0, std::abs(dE - c.Q_0[i] - c.W_0[i]));
            worstw = std::max(worstw, std::abs(dE - c.Q_omega[i] - c.W_omega[i]));
            worsti = std::max(worsti, std::abs(dE - c.Q_I[i] - c.W_I[i]));
        }
        EXPECT_LT(worst0 / scale, 1e-6);
        EXPECT_LT(worstw / scale, 1e-6);
        EXPECT_LT(worsti / scale, 1e-6);
    }
}

TEST(Cumulative, InitialMatchesClosedForms) {
    const auto& sol = fixtures::example1();
    const auto c = cumulative(sol, 0, sol.grid());
    double scale = 0.0;
    for (double q : c.Q_0_closed) scale = std::max(scale, std::abs(q));
    for (std::size_t i = 0; i < c.times.size(); ++i) {
        EXPECT_NEAR(c.Q_0[i], c.Q_0_closed[i] - c.Q_0_closed[0], 1e-6 * scale);
        EXPECT_NEAR(c.W_0[i], c.W_0_closed[i] - c.W_0_closed[0], 1e-6 * scale);
        EXPECT_EQ(c.Q_I[i], 0.0);
    }
}

TEST(Cumulative, ConstantFrequencyIsZero) {
    const auto sol = solve(FrequencyProfile::constant(3.0), -1.0, 1.0, {.output_times = uniform_grid(-1, 1, 41)});
    const auto c = cumulative(sol, 2, sol.grid());
    for (std::size_t i = 0; i < c.times.size(); ++i) {
        EXPECT_EQ(c.Q_0[i], 0.0);
        EXPECT_EQ(c.W_0[i], 0.0);
        EXPECT_EQ(c.Q_omega[i], 0.0);
        EXPECT_EQ(c.W_omega[i], 0.0);
    }
    EXPECT_THROW((void)cumulative(sol, 2, sol.grid(), 3), DomainError);
}

TEST(Cumulative, LateSplitIsHalfAndHalf) {
    const auto& sol = fixtures::example1();
    const auto c = cumulative(sol, 0, sol.grid());
    std::vector<double> diff(c.times.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = c.Q_0_closed[i] - c.W_0_closed[i];
    EXPECT_LT(std::abs(trailing_mean(c.times, diff)) / trailing_mean(c.times, c.E), 0.05);
}

TEST(Thermo, SeriesRecordsAreConsistent) {
    const auto& sol = fixtures::example2();
    const auto rec = thermo_series(sol, 1, sol.grid());
    ASSERT_EQ(rec.size(), sol.grid().size());
    EXPECT_EQ(rec.front().Q_0, 0.0);
    for (const auto& r : rec) {
        EXPECT_EQ(r.N_inv, 1.0);
        EXPECT_EQ(r.Qdot_I, 0.0);
    }
}

TEST(Thermo, TrailingMeanOfKnownSignal) {
    const auto t = uniform_grid(0.0, 10.0, 2001);
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = 3.0 + std::sin(2 * std::numbers::pi * t[i]);
    EXPECT_NEAR(trailing_mean(t, v), 3.0, 1e-5);
    EXPECT_NEAR(trailing_mean(t, std::vector<double>(t.size(), 2.0), 0.5), 2.0, 1e-15);
    EXPECT_THROW((void)trailing_mean(t, v, 0.0), DomainError);
}

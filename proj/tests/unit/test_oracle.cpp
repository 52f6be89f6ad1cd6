#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "tdho/errors.hpp"
#include "tdho/oracle.hpp"
#include "tdho/thermo.hpp"
#include "tdho/transitions.hpp"

using namespace tdho;

namespace {

FockOptions options_for(const ErmakovSolution& sol, int D = 200) {
    FockOptions o;
    o.dimension = D;
    o.reference_time = sol.reference_time();
    o.reference_frequency = sol.reference_frequency();
    return o;
}

}  // namespace

TEST(Fock, ConstantFrequencyIsStationary) {
    const auto p = FrequencyProfile::constant(3.0);
    const std::vector<double> times{0.0, 0.5, 1.7};
    FockOptions o;
    o.dimension = 40;
    const auto states = evolve_fock(p, 2, times, o);
    for (const auto& s : states) {
        for (int M = 0; M < s.dimension(); ++M) EXPECT_NEAR(std::abs(s.amplitudes[M]), M == 2 ? 1.0 : 0.0, 1e-10);
        EXPECT_NEAR(std::abs(s.amplitudes[2] - std::polar(1.0, -2.5 * 3.0 * s.t)), 0.0, 1e-9);
    }
}

TEST(Fock, BumpMatchesClosedForm) {
    const auto& sol = fixtures::example2();
    const auto times = uniform_grid(-3.0, 3.0, 21);
    const auto states = evolve_fock(sol.profile(), 1, times, options_for(sol));
    const auto tab = probability_table(sol, Representation::Initial, 1, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto& s = states[i];
        EXPECT_NEAR(s.norm_sq(), 1.0, 1e-8);
        EXPECT_LT(s.top_band_mass(), 1e-10);
        for (int M = 0; M < 60; ++M) {
            if ((M - 1) % 2 != 0) {
                EXPECT_LT(s.probability(M), 1e-10);
                continue;
            }
            EXPECT_NEAR(s.probability(M), tab.probability(i, M), 1e-6);
            EXPECT_NEAR(std::abs(s.amplitudes[M] - matrix_element(tab.coefficients[i], 1, M)), 0.0, 1e-6);
        }
        EXPECT_NEAR(s.mean_occupation(), occupations(sol, 1, s.t).N0, 1e-6);
        const double e = energy(sol, 1, s.t).invariant;
        EXPECT_NEAR(fock_energy(sol.profile(), sol.reference_frequency(), s), e, 1e-6 * e);
    }
}

TEST(Fock, BumpReturnsDiagonalPopulation) {
    const auto& sol = fixtures::example2();
    const std::vector<double> times{3.0};
    const auto states = evolve_fock(sol.profile(), 2, times, options_for(sol, 400));
    const auto proj = diagonal_projection(sol.profile(), sol.reference_frequency(), states[0]);
    for (std::size_t M = 0; M < 40; ++M) EXPECT_NEAR(proj[M], M == 2 ? 1.0 : 0.0, 1e-5);
}

TEST(Fock, LeakRaisesDimensionError) {
    const auto& sol = fixtures::example1();
    const std::vector<double> times{2.0};
    EXPECT_THROW((void)evolve_fock(sol.profile(), 0, times, options_for(sol, 20)), DimensionError);
}

TEST(Quadrature, OverlapAtReferenceIsKronecker) {
    const auto& sol = fixtures::example1();
    for (auto rep : {Representation::Initial, Representation::Diagonal})
        for (int N = 0; N < 5; ++N)
            for (int M = 0; M < 8; ++M)
                EXPECT_NEAR(std::abs(overlap_quadrature(sol, rep, N, M, sol.reference_time(), 40)), M == N ? 1.0 : 0.0,
                            1e-12);
}

TEST(Quadrature, AmplitudesMatchClosedForm) {
    const auto& sol = fixtures::example1();
    for (auto rep : {Representation::Initial, Representation::Diagonal})
        for (double t : {-0.3, 0.2, 1.4}) {
            const auto b = bogoliubov(sol, rep, t);
            for (int N = 0; N <= 8; ++N)
                for (int M = 0; M <= 40; ++M) {
                    const auto q = overlap_quadrature(sol, rep, N, M, t, 120);
                    if ((M - N) % 2 != 0) {
                        EXPECT_LT(std::abs(q), 1e-12);
                        continue;
                    }
                    EXPECT_NEAR(std::abs(q - matrix_element(b, N, M)), 0.0, 1e-8) << "N=" << N << " M=" << M;
                }
        }
    const auto b = bogoliubov(sol, Representation::Initial, 0.7);
    const auto c = matrix_element(b, 3, 1);
    EXPECT_NEAR(std::abs(overlap_quadrature(sol, Representation::Initial, 3, 1, 0.7, 40) - c), 0.0, 1e-8 * std::abs(c));
    EXPECT_THROW((void)overlap_quadrature(sol, Representation::Initial, 3, 9, 0.7, 10), DomainError);
}

TEST(Wavefunction, NormalizedAndOrthogonal) {
    const auto& sol = fixtures::example2();
    for (int N : {0, 2, 5}) {
        const auto psi = WavefunctionSpec::invariant(sol, 0.3, N);
        EXPECT_NEAR(std::abs(wavefunction_overlap(psi, psi, 80)), 1.0, 1e-8);
    }
    const auto a = WavefunctionSpec::invariant(sol, 0.3, 0);
    const auto b = WavefunctionSpec::invariant(sol, 0.3, 2);
    EXPECT_LT(std::abs(wavefunction_overlap(a, b, 80)), 1e-8);
}

TEST(Wavefunction, ConstantFrequencySolvesSchrodinger) {
    const auto sol = solve(FrequencyProfile::constant(3.0), -1.0, 1.0);
    for (int N : {0, 1, 3}) {
        const auto r = check_invariant_wavefunction(sol, N, 0.2, wavefunction_grid(sol, N, 0.2));
        EXPECT_LT(r.schrodinger_residual, 1e-6);
        EXPECT_LT(r.norm_error, 1e-8);
    }
}

TEST(Wavefunction, BumpSolvesSchrodinger) {
    const auto sol = solve(fixtures::example2_profile(), -3.0, 3.0);
    for (int N : {0, 1, 2})
        for (double t : {-1.0, 0.0, 1.0}) {
            const auto r = check_invariant_wavefunction(sol, N, t, wavefunction_grid(sol, N, t));
            EXPECT_LT(r.schrodinger_residual, 1e-4) << "N=" << N << " t=" << t;
            EXPECT_LT(r.norm_error, 1e-8);
            EXPECT_LT(r.max_overlap_offdiag, 1e-8);
        }
}

TEST(OracleReport, Bookkeeping) {
    OracleReport r;
    r.add("a", 1e-9, 1e-8);
    EXPECT_TRUE(r.all_passed());
    r.add("b", 1e-7, 1e-8);
    EXPECT_FALSE(r.all_passed());
    EXPECT_FALSE(r.checks.back().passed);
}

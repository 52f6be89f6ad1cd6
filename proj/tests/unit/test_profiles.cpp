#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "tdho/errors.hpp"
#include "tdho/profiles.hpp"

using namespace tdho;

TEST(Profiles, TanhStepStartsAtOmega0) {
    const auto p = FrequencyProfile::tanh_step(10.0, 100.0, 5.0);
    EXPECT_NEAR(p.omega(-20.0), 10.0, 1e-12);
    EXPECT_NEAR(p.omega(20.0), 100.0, 1e-12);
    EXPECT_TRUE(p.in_asymptotic_region(-20.0));
    EXPECT_FALSE(p.in_asymptotic_region(0.5));
}

TEST(Profiles, SechBumpPeak) {
    const auto p = FrequencyProfile::sech_bump(2.0, std::sqrt(102.0), 7.0);
    EXPECT_DOUBLE_EQ(p.omega(0.0), std::sqrt(102.0));
    EXPECT_DOUBLE_EQ(p.omega_dot(0.0), 0.0);
    EXPECT_NEAR(p.omega(-10.0), 2.0, 1e-12);
}

TEST(Profiles, ConstantIsFlat) {
    const auto p = FrequencyProfile::constant(3.0);
    for (double t : {-100.0, -1.0, 0.0, 2.5, 1e6}) {
        EXPECT_EQ(p.omega(t), 3.0);
        EXPECT_EQ(p.omega_dot(t), 0.0);
    }
}

TEST(Profiles, TanhDerivativeVanishesAtBothEnds) {
    const auto p = FrequencyProfile::tanh_step(10.0, 100.0, 5.0);
    EXPECT_NEAR(p.omega_dot(-30.0), 0.0, 1e-12);
    EXPECT_NEAR(p.omega_dot(30.0), 0.0, 1e-12);
}

TEST(Profiles, DerivativeMatchesCenteredDifference) {
    const FrequencyProfile profiles[] = {FrequencyProfile::tanh_step(10.0, 100.0, 5.0),
                                         FrequencyProfile::sech_bump(2.0, std::sqrt(102.0), 7.0)};
    for (const auto& p : profiles) {
        for (double t = -1.0; t <= 1.0; t += 0.01) {
            const double h = 1e-5;
            const double fd = (p.omega(t + h) - p.omega(t - h)) / (2 * h);
            const double an = p.omega_dot(t);
            EXPECT_LE(std::abs(fd - an), 1e-6 * std::max(1.0, std::abs(an))) << to_string(p.kind()) << " t=" << t;
        }
    }
}

TEST(Profiles, TanhMonotoneSechEven) {
    const auto tanh = FrequencyProfile::tanh_step(10.0, 100.0, 5.0);
    const auto sech = FrequencyProfile::sech_bump(2.0, std::sqrt(102.0), 7.0);
    double prev = tanh.omega(-3.0);
    for (double t = -3.0 + 1e-3; t <= 3.0; t += 1e-3) {
        const double w = tanh.omega(t);
        EXPECT_GE(w, prev);
        prev = w;
        EXPECT_DOUBLE_EQ(sech.omega(t), sech.omega(-t));
    }
}

TEST(Profiles, InvalidParametersAreDomainErrors) {
    EXPECT_THROW(FrequencyProfile::constant(-1.0), DomainError);
    EXPECT_THROW(FrequencyProfile::tanh_step(0.0, 1.0, 1.0), DomainError);
    EXPECT_THROW(FrequencyProfile::sech_bump(1.0, 2.0, -1.0), DomainError);
}

TEST(Profiles, TabulatedReproducesSamplesAndStaysMonotone) {
    std::vector<double> t, w;
    for (int i = 0; i <= 40; ++i) {
        t.push_back(-2.0 + 0.1 * i);
        w.push_back(std::sqrt(55.0 + 45.0 * std::tanh(5.0 * t.back())) * std::sqrt(100.0) / 10.0);
    }
    const auto p = FrequencyProfile::tabulated(t, w);
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(p.omega(t[i]), w[i], 1e-12);
    double prev = p.omega(-2.0);
    for (double x = -2.0; x <= 2.0; x += 1e-3) {
        EXPECT_GE(p.omega(x), prev - 1e-12);
        prev = p.omega(x);
    }
    const double h = 1e-4;
    EXPECT_NEAR(p.omega_dot(0.33), (p.omega(0.33 + h) - p.omega(0.33 - h)) / (2 * h), 1e-3);
}

TEST(Profiles, TabulatedRejectsBadSamples) {
    EXPECT_THROW(FrequencyProfile::tabulated({0, 1, 2}, {1, 1, 1}), DomainError);
    EXPECT_THROW(FrequencyProfile::tabulated({0, 1, 1, 2}, {1, 1, 1, 1}), DomainError);
    EXPECT_THROW(FrequencyProfile::tabulated({0, 1, 2, 3}, {1, -1, 1, 1}), DomainError);
    const auto p = FrequencyProfile::tabulated({0, 1, 2, 3}, {1, 2, 3, 4});
    EXPECT_THROW((void)p.omega(3.5), RangeError);
    EXPECT_THROW((void)p.omega(std::nan("")), DomainError);
}

TEST(Profiles, CsvWithAndWithoutHeader) {
    const auto dir = std::filesystem::temp_directory_path() / "tdho_profile_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream a(dir / "with_header.csv");
        a << "t,omega\n0,1\n1,2\n2,3\n3,4\n";
        std::ofstream b(dir / "plain.csv");
        b << "# comment\n0,1\n1,2\n2,3\n3,4\n";
    }
    const auto p = FrequencyProfile::from_csv(dir / "with_header.csv");
    const auto q = FrequencyProfile::from_csv(dir / "plain.csv");
    EXPECT_EQ(p.sample_times().size(), 4u);
    EXPECT_EQ(q.sample_times().size(), 4u);
    EXPECT_NEAR(p.omega(1.5), 2.5, 1e-12);
    EXPECT_NEAR(q.omega(1.5), 2.5, 1e-12);
    std::filesystem::remove_all(dir);
}

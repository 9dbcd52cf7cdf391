#include "delaylab/hashing.hpp"
#include "delaylab/scaling.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace delaylab;

TEST(Scaling, SmallIndices)
{
    auto s0 = make_scale(0);
    EXPECT_DOUBLE_EQ(s0.omega_k, pi / 2);
    EXPECT_DOUBLE_EQ(s0.p_k, 4.0);
    auto s1 = make_scale(1);
    EXPECT_DOUBLE_EQ(s1.p_k, 4.0 / 3.0);
    EXPECT_DOUBLE_EQ(s1.lambda_k, 1.5 * pi);
    auto s10 = make_scale(10);
    EXPECT_DOUBLE_EQ(s10.eps, 1.0 / (10.5 * pi));
    EXPECT_DOUBLE_EQ(s10.lambda_k, -10.5 * pi);
    EXPECT_THROW(make_scale(-1), domain_error);
}

TEST(Scaling, ExactProductsUpToLargeK)
{
    for (int k : {0, 1, 2, 7, 100, 12345, 999999, 1000000}) {
        auto s = make_scale(k);
        EXPECT_NEAR(s.eps * s.omega_k, 1.0, 4 * std::numeric_limits<double>::epsilon()) << k;
        EXPECT_NEAR(s.p_k * (2.0 * k + 1.0), 4.0, 16 * std::numeric_limits<double>::epsilon()) << k;
        EXPECT_EQ(s.lambda_k > 0, k % 2 == 1) << k;
    }
}

TEST(Scaling, ControlAmplitudeRoundTrip)
{
    auto s = make_scale(5);
    auto a = ControlAmplitude::from_b(-0.01, s);
    EXPECT_DOUBLE_EQ(a.B(), -0.01 / (2 * s.eps));
    auto c = ControlAmplitude::from_B(a.B(), s);
    EXPECT_NEAR(c.b(), -0.01, 1e-17);
    EXPECT_THROW(ControlAmplitude::from_b(0.0, s), domain_error);
    EXPECT_THROW(ControlAmplitude::from_B(std::numeric_limits<double>::infinity(), s), domain_error);
}

TEST(Scaling, ResonanceCoefficients)
{
    for (int m = 1; m <= 8; ++m) {
        int jm = (m + 1) / 2;
        ResonanceIndex r(m, jm);
        EXPECT_DOUBLE_EQ(r.delta() * r.Omega_m(), 1.0);
        EXPECT_EQ(r.j_m(), jm);
        EXPECT_DOUBLE_EQ(r.a(), 0.5 / r.delta() - 1.0);
        EXPECT_DOUBLE_EQ(r.alpha_minus(), 2.0 * m);
        EXPECT_DOUBLE_EQ(ResonanceIndex(m, jm + 1).alpha_plus(), 2.0 * (m + 1));
    }
    EXPECT_THROW(ResonanceIndex(-1, 1), domain_error);
    EXPECT_THROW(ResonanceIndex(0, 0), domain_error);
}

TEST(Scaling, EntourageExamples)
{
    auto s = make_scale(7);
    auto e = entourage_of(s.omega_k, s);
    EXPECT_NEAR(e.Omega_tilde, 1.0, 1e-15);
    EXPECT_EQ(e.m, 0);
    EXPECT_NEAR(e.Omega, 0.0, 1e-15);

    e = entourage_of(3.0 / s.eps, s);
    EXPECT_EQ(e.m, 1);
    EXPECT_NEAR(e.Omega, 0.0, 1e-14);

    e = entourage_of(2.6 / s.eps, s);
    EXPECT_EQ(e.m, 1);
    EXPECT_NEAR(e.Omega, -0.4, 1e-14);
    EXPECT_THROW(entourage_of(-1.0, s), domain_error);
}

TEST(Scaling, EntourageInvertsUnwrap)
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> w(-half_pi, 3 * half_pi);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int k = 1 + static_cast<int>(rng() % 60);
        int m = static_cast<int>(rng() % 5);
        int j = 1 + static_cast<int>(rng() % 4);
        double omega = w(rng);
        double wt;
        try {
            wt = unwrap(omega, k, m, j);
        } catch (const domain_error&) {
            continue;
        }
        auto s = make_scale(k);
        auto e = entourage_of(wt, s);
        double diff = (e.omega_tilde - omega) / (2 * pi);
        EXPECT_NEAR(diff, std::round(diff), 1e-9);
        EXPECT_NEAR(std::remainder(e.omega - omega, 2 * pi), 0.0, 1e-9);
        ++checked;
    }
    EXPECT_GT(checked, 900);
}

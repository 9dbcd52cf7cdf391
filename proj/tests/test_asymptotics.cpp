#include "delaylab/validation.hpp"

#include <gtest/gtest.h>

using namespace delaylab;

TEST(Asymptotics, OrderFit)
{
    std::vector<std::pair<double, double>> sq, cube;
    for (double h : {0.1, 0.05, 0.025, 0.0125}) {
        sq.push_back({h, h * h});
        cube.push_back({h, 3 * h * h * h});
    }
    EXPECT_NEAR(order_fit(sq), 2.0, 1e-12);
    EXPECT_NEAR(order_fit(cube), 3.0, 1e-12);
    EXPECT_TRUE(std::isinf(order_fit({{0.1, 1e-3}, {0.05, 0.0}, {0.02, 1e-5}})));
    EXPECT_THROW(order_fit({{0.1, 1.0}, {0.05, 0.5}}), domain_error);
    EXPECT_THROW(order_fit({{0.1, 1.0}, {0.1, 0.5}, {0.1, 0.2}}), domain_error);
}

TEST(Asymptotics, EpsSeriesBasics)
{
    for (int m = 1; m <= 4; ++m) {
        auto z = eps_expand(m, 1, Branch::minus, 0.0);
        EXPECT_EQ(z.Omega, 0.0);
        EXPECT_EQ(z.B, 0.0);
        EXPECT_DOUBLE_EQ(z.omega, -half_pi);
        auto zp = eps_expand(m, 1, Branch::plus, 0.0, true);
        EXPECT_DOUBLE_EQ(zp.omega, half_pi + pi);
    }
    EXPECT_THROW(eps_expand(0, 1, Branch::minus, 0.01), domain_error);
    EXPECT_THROW(eps_expand(1, 0, Branch::plus, 0.01), domain_error);
    EXPECT_THROW(eps_expand(1, 1, Branch::plus, -0.01), domain_error);

    // odd m, j = 1: the plus coefficient vanishes
    EXPECT_EQ(eps_expand(1, 1, Branch::plus, 0.01).B, 0.0);

    double eps = 1e-3;
    double q2 = half_pi * half_pi, q3 = q2 * half_pi;
    EXPECT_NEAR(eps_expand(0, 1, Branch::plus, eps).B, -q2 * eps - 3 * q3 * eps * eps, 1e-18);
    EXPECT_NEAR(eps_expand(1, 1, Branch::minus, eps).B, -q2 * eps + q3 * eps * eps, 1e-18);
}

TEST(Asymptotics, BoundarySeriesConsistent)
{
    for (int k : {1, 10, 49, 1000}) {
        auto s = make_scale(k);
        auto be = boundary_expansion(s);
        EXPECT_NEAR(2 * s.eps * be.B01_plus, be.b_lower, 1e-15 * std::abs(be.b_lower));
        EXPECT_NEAR(2 * s.eps * be.B11_minus, be.b_upper, 1e-15 * std::abs(be.b_upper));
        EXPECT_LT(be.b_lower, be.b_upper);
        EXPECT_NEAR(eps_expand(0, 1, Branch::plus, s.eps).B, be.B01_plus, 1e-15);
        EXPECT_NEAR(eps_expand(1, 1, Branch::minus, s.eps).B, be.B11_minus, 1e-15);
    }
    EXPECT_THROW(boundary_expansion(make_scale(0)), domain_error);
}

TEST(Asymptotics, TruncationOrdering)
{
    BoundaryExpansion be;
    be.eps = 1e-3;
    double q2 = half_pi * half_pi, q3 = q2 * half_pi, e = be.eps;
    be.B01_plus = -q2 * e - 3 * q3 * e * e;
    be.B11_minus = -q2 * e + q3 * e * e;
    for (int m = 1; m <= 10; ++m) {
        EXPECT_LT(be.B_m_jm1_plus(m), be.B01_plus) << m;
        EXPECT_LT(be.B01_plus, be.B11_minus);
        EXPECT_LE(be.B11_minus, be.B_m_jm_minus(m) + 1e-18) << m;
    }
    EXPECT_NEAR(be.B_m_jm_minus(1), be.B11_minus, 1e-18);
    EXPECT_THROW(be.B_m_jm_minus(0), domain_error);
}

TEST(Asymptotics, DeltaSeries)
{
    auto d = delta_expand(0.01, 0.0);
    EXPECT_NEAR(d.Omega, -0.01 / half_pi, 1e-17);
    EXPECT_NEAR(d.B, -1e-4, 1e-18);
    for (double w : {-1.2, -0.3, 0.0, 0.7, 1.4}) {
        auto x = delta_expand(0.02, w);
        EXPECT_LT(x.eps_plus, x.eps_minus) << w;
        EXPECT_NEAR(x.B01_plus, -half_pi * half_pi * x.eps_plus, 1e-16);
        EXPECT_NEAR(x.B11_minus, -half_pi * half_pi * x.eps_minus, 1e-16);
        EXPECT_LT(x.B, 0.0);
    }
    EXPECT_NEAR(delta_expand(0.1, half_pi).B, 0.0, 1e-16);
    EXPECT_THROW(delta_expand(0.0, 0.0), domain_error);
    EXPECT_THROW(delta_expand(0.1, 2.0), domain_error);
    EXPECT_DOUBLE_EQ(b_min_expansion(0.1), -0.01);
}

TEST(Asymptotics, DeltaSeriesOrders)
{
    auto r = delta_orders({10, 20, 40});
    EXPECT_GE(r.Omega.order, 2.7);
    EXPECT_GE(r.B_min.order, 3.7);
}

TEST(Asymptotics, HopfSeriesOrdersFirstResonance)
{
    auto reps = hopf_series_orders({1}, {99, 199, 399});
    ASSERT_FALSE(reps.empty());
    for (auto& r : reps) {
        ASSERT_TRUE(r.B.complete()) << r.j << " " << to_string(r.branch);
        EXPECT_GE(r.B.order, 2.7) << r.j << " " << to_string(r.branch);
    }
}

TEST(Asymptotics, CoefficientEntersLinearly)
{
    // the second-order coefficient carries alpha, not alpha squared
    int m = 2, j = 2;
    ResonanceIndex ri(m, j);
    double a = ri.alpha_minus();
    ASSERT_NE(a, 1.0);
    std::vector<std::pair<double, double>> lin, sq;
    for (int k : {99, 199, 399}) {
        auto s = make_scale(k);
        auto pts = hopf_points(s, m);
        auto* p = find_point(pts, m, j, Branch::minus);
        ASSERT_NE(p, nullptr);
        double e = half_pi * s.eps, mm = m;
        double b_lin = eps_expand(m, j, Branch::minus, s.eps).B;
        double b_sq = pi / (4 * mm) * a * (-e + (4 * mm * mm - a * a) / (2 * mm) * e * e);
        lin.push_back({s.eps, std::abs(p->B - b_lin)});
        sq.push_back({s.eps, std::abs(p->B - b_sq)});
    }
    EXPECT_GE(order_fit(lin), 2.7);
    EXPECT_LT(order_fit(sq), 2.3);
}

#include "delaylab/dde.hpp"
#include "delaylab/spectrum.hpp"

#include <gtest/gtest.h>

using namespace delaylab;

namespace {

const Nonlinearity& sine()
{
    static const Nonlinearity nl = Nonlinearity::sine();
    return nl;
}

HistorySegment smooth_history(const ProblemScale& s, int N, double amp)
{
    DelayGrid g(s, N);
    return HistorySegment::sample(
        g, [amp](double t) { return amp * (std::sin(3 * t) + 0.5); }, [amp](double t) { return 3 * amp * std::cos(3 * t); });
}

double b_inside(const ProblemScale& s)
{
    PyragasOptions o;
    o.verify = false;
    auto p = pyragas_interval(s, o);
    return 0.5 * (p.b_lower + p.b_upper);
}

}  // namespace

TEST(Dde, NonlinearityChecks)
{
    EXPECT_NO_THROW(Nonlinearity::sine());
    auto tanh_nl = Nonlinearity([](double x) { return std::tanh(x); },
                                [](double x) { return 1 / std::pow(std::cosh(x), 2); },
                                [](double x) { return -2 * std::tanh(x) / std::pow(std::cosh(x), 2); });
    EXPECT_NEAR(tanh_nl.f(0.5), std::tanh(0.5), 0);
    auto id = [](double x) { return x; };
    auto one = [](double) { return 1.0; };
    auto zero = [](double) { return 0.0; };
    EXPECT_THROW(Nonlinearity(id, one, zero), domain_error);
    EXPECT_THROW(Nonlinearity([](double x) { return std::cos(x); }, one, zero), domain_error);
    EXPECT_THROW(Nonlinearity([](double x) { return 2 * std::sin(x); }, one, zero), domain_error);
}

TEST(Dde, GridAndHistoryValidation)
{
    auto s = make_scale(3);
    DelayGrid g(s, 8);
    EXPECT_EQ(g.M, 56);
    EXPECT_EQ(g.half, 16);
    EXPECT_EQ(g.L, 56);
    EXPECT_EQ(g.period(), 32);
    EXPECT_NEAR(g.period() * g.h, s.p_k, 1e-15);
    EXPECT_EQ(DelayGrid(make_scale(0), 8).L, 16);
    EXPECT_THROW(DelayGrid(s, 0), domain_error);

    HistorySegment bad;
    bad.h = 1.0 / 57;
    bad.x.assign(58, 0.0);
    bad.dx.assign(58, 0.0);
    EXPECT_THROW(integrate(s, s.lambda_k, -0.1, sine(), bad, 1.0), domain_error);
    auto ok = smooth_history(s, 8, 0.0);
    ok.x.pop_back();
    ok.dx.pop_back();
    EXPECT_THROW(integrate(s, s.lambda_k, -0.1, sine(), ok, 1.0), domain_error);
    EXPECT_THROW(integrate(s, s.lambda_k, 0.0, sine(), smooth_history(s, 8, 0.0), 1.0), domain_error);
    EXPECT_DOUBLE_EQ(control_gain(std::numeric_limits<double>::infinity()), 0.0);
}

TEST(Dde, ZeroHistoryStaysZero)
{
    auto s = make_scale(2);
    auto tr = integrate(s, s.lambda_k, -0.05, sine(), smooth_history(s, 4, 0.0), 5.0);
    for (double v : tr.x) EXPECT_EQ(v, 0.0);
    EXPECT_NEAR(tr.t(tr.x.size() - 1), 5.0, 1e-12);
}

TEST(Dde, FourthOrderSelfConvergence)
{
    auto s = make_scale(1);
    double lam = 1.02 * s.lambda_k, b = -0.3, T = 3.0;
    auto end_value = [&](int N) { return integrate(s, lam, b, sine(), smooth_history(s, N, 0.4), T).x.back(); };
    double ref = end_value(256);
    std::vector<std::pair<double, double>> errs;
    for (int N : {8, 16, 32}) errs.push_back({1.0 / N, std::abs(end_value(N) - ref)});
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [h, e] : errs) {
        double x = std::log(h), y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double order = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
    EXPECT_GE(order, 3.8);
}

TEST(Dde, LinearGrowthMatchesDominantRoot)
{
    // k = 1 uncontrolled: the dominant root is real, W(3 pi / 2)
    auto s = make_scale(1);
    auto tr = integrate(s, s.lambda_k, std::numeric_limits<double>::infinity(), sine(), smooth_history(s, 32, 1e-12), 12.0);
    std::size_t n = tr.x.size() - 1, back = static_cast<std::size_t>(std::lround(2.0 / tr.h));
    double rate = std::log(std::abs(tr.x[n] / tr.x[n - back])) / 2.0;
    EXPECT_NEAR(rate / 1.2931296378793808, 1.0, 0.01);
}

TEST(Dde, OrbitResidualsK3)
{
    auto s = make_scale(3);
    double b = b_inside(s);
    auto o = find_orbit(s, 1.05 * s.lambda_k, b, sine());
    EXPECT_LT(o.bvp_residual, 1e-10);
    EXPECT_LT(o.symmetry_residual, 1e-6);
    EXPECT_LT(o.noninvasive_residual, 1e-6);
    EXPECT_LT(o.half_closure, 1e-6);
    EXPECT_LT(o.full_closure, 1e-6);
    EXPECT_GT(o.amplitude, 0.1);
    EXPECT_NEAR(o.period, s.p_k, 1e-15);
    EXPECT_EQ(o.samples.size(), 4u * o.N);
    // antisymmetry over half a period
    for (long long n = 0; n < 2 * o.N; ++n) EXPECT_NEAR(o.at(n + 2 * o.N), -o.at(n), 1e-9);
    EXPECT_THROW(find_orbit(s, 0.95 * s.lambda_k, b, sine()), domain_error);
}

TEST(Dde, AmplitudeSquareRootScaling)
{
    auto s = make_scale(3);
    std::vector<double> ratio;
    for (double off : {0.005, 0.01, 0.02}) {
        auto o = find_orbit(s, s.lambda_k * (1 + off), std::numeric_limits<double>::infinity(), sine());
        ratio.push_back(o.amplitude / std::sqrt(off));
    }
    for (double r : ratio) EXPECT_NEAR(r / ratio[0], 1.0, 0.1);
}

TEST(Dde, K0OrbitMatchesLongIntegration)
{
    auto s = make_scale(0);
    double lam = -1.1 * half_pi, inf = std::numeric_limits<double>::infinity();
    auto o = find_orbit(s, lam, inf, sine());
    auto tr = integrate(s, lam, inf, sine(), smooth_history(s, 64, 0.1), 400.0);
    double peak = 0;
    std::size_t per = static_cast<std::size_t>(std::lround(s.p_k / tr.h));
    for (std::size_t i = tr.x.size() - per; i < tr.x.size(); ++i) peak = std::max(peak, std::abs(tr.x[i]));
    EXPECT_NEAR(peak, o.amplitude, 1e-3 * o.amplitude);
}

TEST(Dde, FloquetCounts)
{
    double inf = std::numeric_limits<double>::infinity();
    auto s0 = make_scale(0);
    auto o0 = find_orbit(s0, -1.1 * half_pi, inf, sine());
    auto f0 = floquet(o0, s0, inf, sine());
    EXPECT_LT(f0.trivial_error, 1e-3);
    EXPECT_EQ(f0.unstable_count, 0);

    auto s = make_scale(3);
    double lam = 1.05 * s.lambda_k;
    auto o = find_orbit(s, lam, b_inside(s), sine());
    auto fu = floquet(o, s, inf, sine());
    EXPECT_EQ(fu.unstable_count, 3);
    auto fc = floquet(o, s, b_inside(s), sine());
    EXPECT_LT(fc.trivial_error, 1e-3);
    EXPECT_EQ(fc.unstable_count, 0);
    EXPECT_EQ(fc.dimension, 2 * (DelayGrid(s, o.N).L + 1));
}

TEST(Dde, EquilibriumMultipliersMatchSpectrum)
{
    auto s = make_scale(3);
    double b = b_inside(s);
    auto eq = equilibrium_orbit(s, s.lambda_k, b);
    auto f = floquet(eq, s, b, sine());
    // controlled equilibrium at lambda_k: all roots stable except the trivial pair
    EXPECT_NEAR(std::abs(f.multipliers[0]), 1.0, 1e-3);
    EXPECT_EQ(f.unstable_count, 0);

    double inf = std::numeric_limits<double>::infinity();
    auto fu = floquet(equilibrium_orbit(s, s.lambda_k, inf), s, inf, sine());
    double top = 0;
    for (auto& e : uncontrolled_spectrum(s)) top = std::max(top, e.mu.real());
    EXPECT_NEAR(std::abs(fu.multipliers[0]) / std::exp(top * s.p_k), 1.0, 0.02);
}

#ifndef DELAYLAB_TWOSCALE_HPP
#define DELAYLAB_TWOSCALE_HPP

// Epsilon-free two-scale characteristic equation at mu = i omega_tilde.
// Functions take the resonance index m (delta = 1/(2m+1)) and sgn = (-1)^k.
// Trigonometric terms of the slow frequency are evaluated through the local
// offset Omega, which keeps them accurate when Omega_tilde is large.

#include "delaylab/detail.hpp"

#include <algorithm>
#include <vector>

namespace delaylab {

inline double resonance_delta(int m) { return 1.0 / (2.0 * m + 1.0); }
inline double slow_tilde(int m, double Omega) { return Omega + 2.0 * m + 1.0; }

// cos(pi Omega_tilde / 2) = -(-1)^m sin(pi Omega / 2)
inline double cos_half_tilde(int m, double Omega) { return -sign_pow(m) * std::sin(half_pi * Omega); }

inline double eval_H(int m, double Omega, double omega, int sgn)
{
    return slow_tilde(m, Omega) * std::sin(half_pi * Omega) - sgn * std::cos(omega - half_pi * Omega);
}

// Second form, written with Omega_tilde directly.
inline double eval_H_resonant(int m, double Omega, double omega, int sgn)
{
    double Wt = slow_tilde(m, Omega);
    double a = half_pi * Wt;
    return -sign_pow(m) * (Wt * std::cos(a) - sgn * std::sin(omega - a));
}

// chi_0 = Omega_tilde + (-1)^k i e^{i omega} - B^{-1} sin(pi Omega/2) e^{i pi Omega/2}
inline cplx chi0(int m, double Omega, double omega, double B, int sgn)
{
    const cplx I(0, 1);
    return slow_tilde(m, Omega) + double(sgn) * I * std::exp(I * omega) -
           std::sin(half_pi * Omega) / B * std::exp(I * (half_pi * Omega));
}

// Introductory form -i e^{i omega} + Omega_tilde + (-1)^m B^{-1} cos(pi x/2) e^{i pi Omega/2},
// odd k, with x = Omega_tilde (tilde_argument) or x = Omega.
inline cplx chi0_intro(int m, double Omega, double omega, double B, bool tilde_argument)
{
    const cplx I(0, 1);
    double c = tilde_argument ? cos_half_tilde(m, Omega) : std::cos(half_pi * Omega);
    return -I * std::exp(I * omega) + slow_tilde(m, Omega) + sign_pow(m) * c / B * std::exp(I * (half_pi * Omega));
}

struct OmegaBranches {
    double plus;
    double minus;
};

inline OmegaBranches omega_branches(int m, double Omega, int sgn)
{
    double x = -slow_tilde(m, Omega) * std::sin(half_pi * Omega);
    if (std::abs(x) > 1.0 + 1e-13) throw domain_error("omega_branches: outside the discriminant domain");
    x = std::clamp(x, -1.0, 1.0);
    double shift = sgn > 0 ? pi : 0.0;
    double ac = std::acos(x);
    auto reduce = [](double w) {
        // keep the lower window edge when rounding pushes just below it
        if (w < -half_pi && w > -half_pi - 1e-12) return -half_pi;
        return detail::wrap_2pi(w, -half_pi);
    };
    return {reduce(half_pi * Omega + ac + shift), reduce(half_pi * Omega - ac + shift)};
}

inline double discriminant(int m, double Omega)
{
    double c = cos_half_tilde(m, Omega);
    double Wt = slow_tilde(m, Omega);
    return c * c * (1.0 - (Wt * c) * (Wt * c));
}

// Q = (Wt^2 - 1) B^2 + Wt sin(pi Wt) B + cos^2(pi Wt / 2)
inline double eval_Q(int m, double Omega, double B)
{
    double Wt = slow_tilde(m, Omega);
    double c = cos_half_tilde(m, Omega);
    double s = -std::sin(pi * Omega);
    return (Wt * Wt - 1.0) * B * B + Wt * s * B + c * c;
}

inline double B_from_omega(int m, double Omega, double omega, int sgn)
{
    (void)m;
    double c = std::cos(omega);
    if (std::abs(c) < 1e-12) throw domain_error("B_from_omega: cos(omega) vanishes");
    double s = std::sin(half_pi * Omega);
    return sgn * s * s / c;
}

struct BBranches {
    double plus;
    double minus;
};

inline BBranches B_branches(int m, double Omega)
{
    double Wt = slow_tilde(m, Omega);
    double a = Wt * Wt - 1.0;
    double D = discriminant(m, Omega);
    if (D < -1e-14) throw domain_error("B_branches: negative discriminant");
    D = std::max(D, 0.0);
    if (std::abs(a) < 1e-6) {
        // removable singularity at Omega_tilde = 1 (m = 0): use the omega form
        auto w = omega_branches(m, Omega, -1);
        double cp = std::cos(w.plus), cm = std::cos(w.minus);
        double s = std::sin(half_pi * Omega);
        double bp = std::abs(cp) < 1e-12 ? 0.0 : -s * s / cp;
        double bm = std::abs(cm) < 1e-12 ? half_pi : -s * s / cm;
        return {bp, bm};
    }
    double bq = Wt * (-std::sin(pi * Omega));
    double c = cos_half_tilde(m, Omega);
    c *= c;
    double sq = std::sqrt(D);
    double q = -(0.5 * bq + (bq >= 0 ? sq : -sq));
    double r1, r2;
    if (q == 0.0) {
        r1 = r2 = 0.0;
    } else {
        r1 = q / a;
        r2 = c / q;
    }
    double hi = std::max(r1, r2), lo = std::min(r1, r2);
    return a > 0 ? BBranches{hi, lo} : BBranches{lo, hi};
}

// Lower and upper roots of the discriminant for m >= 1.
struct DomainBounds {
    int m = 1;
    double Omega_lower_tilde = 0;
    double Omega_max_tilde = 0;
    double Omega_lower = 0;
    double omega_at_min = 0;  // odd k
    double residual_lower = 0;
    double residual_max = 0;
};

inline DomainBounds domain_bounds(int m)
{
    if (m < 1) throw domain_error("domain_bounds: m must be >= 1");
    DomainBounds d;
    d.m = m;
    // -Wt sin(pi Omega/2) = 1 on (-1, 0); Wt sin(pi Omega/2) = 1 on (0, 1)
    auto lower = [m](double W) { return -slow_tilde(m, W) * std::sin(half_pi * W) - 1.0; };
    auto upper = [m](double W) { return slow_tilde(m, W) * std::sin(half_pi * W) - 1.0; };
    double wl = detail::bracket_root(lower, -1.0 + 1e-9, -1e-9);
    double wu = detail::bracket_root(upper, 1e-9, 1.0 - 1e-9);
    d.Omega_lower = wl;
    d.Omega_lower_tilde = slow_tilde(m, wl);
    d.Omega_max_tilde = slow_tilde(m, wu);
    d.omega_at_min = half_pi * wl;
    d.residual_lower = std::abs(lower(wl));
    d.residual_max = std::abs(upper(wu));
    return d;
}

// Omega on the m >= 1 curve (odd k) as a function of omega in [-pi/2, pi/2].
inline double Omega_of_omega(int m, double omega, const DomainBounds& db)
{
    auto H = [&](double W) { return eval_H(m, W, omega, -1); };
    double hl = H(db.Omega_lower), h0 = H(0.0);
    if (hl > 0) hl = 0;
    if (h0 < 0) h0 = 0;
    return detail::bracket_root(H, db.Omega_lower, 0.0, hl, h0);
}

struct TwoScalePoint {
    double delta = 0;
    double Omega = 0;
    double omega = 0;
    Branch branch = Branch::minus;
    double B = 0;
    int sgn = -1;
};

// B along the m >= 1 curve, odd k, parametrized by omega.
inline TwoScalePoint curve_point(int m, double omega, const DomainBounds& db)
{
    TwoScalePoint p;
    p.delta = resonance_delta(m);
    p.omega = omega;
    p.Omega = Omega_of_omega(m, omega, db);
    p.branch = omega < db.omega_at_min ? Branch::minus : Branch::plus;
    p.B = B_from_omega(m, p.Omega, omega, -1);
    return p;
}

// d(Omega, omega) = sin^2(pi Omega/2) sin omega + (pi/2) cos omega sin(omega - pi Omega)
inline double criticality_d(double Omega, double omega)
{
    double s = std::sin(half_pi * Omega);
    return s * s * std::sin(omega) + half_pi * std::cos(omega) * std::sin(omega - pi * Omega);
}

struct CriticalPoint {
    double Omega;
    double omega;
    double B;
};

inline std::vector<CriticalPoint> critical_points_Bminus(int m, int grid = 2048)
{
    auto db = domain_bounds(m);
    auto d_of = [&](double w) { return criticality_d(Omega_of_omega(m, w, db), w); };
    std::vector<CriticalPoint> out;
    double a = -half_pi + 1e-9, b = db.omega_at_min - 1e-12;
    double prev_w = a, prev_d = d_of(a);
    for (int i = 1; i <= grid; ++i) {
        double w = a + (b - a) * i / grid;
        double dv = d_of(w);
        if ((prev_d < 0) != (dv < 0) || dv == 0.0) {
            double r = detail::bracket_root(d_of, prev_w, w, prev_d, dv);
            double W = Omega_of_omega(m, r, db);
            out.push_back({W, r, B_from_omega(m, W, r, -1)});
        }
        prev_w = w;
        prev_d = dv;
    }
    return out;
}

// Global minimum of B on the m >= 1 curve.
inline CriticalPoint B_min_point(int m)
{
    auto cps = critical_points_Bminus(m);
    auto db = domain_bounds(m);
    CriticalPoint best{db.Omega_lower, db.omega_at_min, B_from_omega(m, db.Omega_lower, db.omega_at_min, -1)};
    for (auto& c : cps)
        if (c.B < best.B) best = c;
    return best;
}

struct StarPoint {
    double Omega;
    double omega;
};

// Intersection of the line omega = pi Omega with the m >= 1 curve (odd k).
inline StarPoint star_intersection(int m)
{
    if (m < 1) throw domain_error("star_intersection: m must be >= 1");
    auto db = domain_bounds(m);
    auto g = [m](double W) { return eval_H(m, W, pi * W, -1); };
    double W = detail::bracket_root(g, db.Omega_lower, 0.0);
    if (!(pi * W < db.omega_at_min)) throw numerical_error("star_intersection: not on the minus branch");
    return {W, pi * W};
}

struct CurveSample {
    double delta, Omega, omega_plus, omega_minus, B_plus, B_minus, D;
};

// Uniform samples of the curve over the admissible Omega range (odd k convention when sgn < 0).
inline std::vector<CurveSample> sample_curve(int m, int n, int sgn)
{
    double lo = m == 0 ? -1.0 : domain_bounds(m).Omega_lower;
    std::vector<CurveSample> out;
    for (int i = 0; i < n; ++i) {
        double W = lo + (0.0 - lo) * (i + 0.5) / n;
        auto w = omega_branches(m, W, sgn);
        auto b = B_branches(m, W);
        out.push_back({resonance_delta(m), W, w.plus, w.minus, b.plus, b.minus, discriminant(m, W)});
    }
    return out;
}

}  // namespace delaylab

#endif

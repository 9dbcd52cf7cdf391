#ifndef DELAYLAB_HASHING_HPP
#define DELAYLAB_HASHING_HPP

// Hashing lines tie the slow frequency to the fast one at fixed eps. Their
// intersections with the two-scale curve are the control-induced Hopf points.
//
// Intersections are computed in the odd-k representation, where the hashing
// line reads Omega = eps (omega - a pi) with a = 2j - 1 + (-1)^m / 2. Even k
// only shifts omega by pi, which leaves Omega, B and the label j unchanged.

#include "delaylab/charpoly.hpp"
#include "delaylab/scaling.hpp"
#include "delaylab/twoscale.hpp"

#include <algorithm>
#include <vector>

namespace delaylab {

inline double hash_residual(double eps, int k, int m, int j, double omega, double Omega)
{
    double phase = half_pi * (1.0 - sign_pow(k) - sign_pow(m));
    return Omega - eps * (omega + phase - 2.0 * pi * j);
}

inline double unwrap(double omega, int k, int m, int j)
{
    long long turns = 1LL * k * m + (k + 1) / 2 + (m + 1) / 2 - j;
    double wt = omega + 2.0 * pi * static_cast<double>(turns);
    if (!(wt > 0)) throw domain_error("unwrap: nonpositive frequency");
    return wt;
}

struct HopfPoint {
    int k = 0;
    int m = 0;
    int j = 1;
    Branch branch = Branch::minus;
    double omega = 0;        // representative in [-pi/2, 3pi/2)
    double Omega = 0;
    double omega_tilde = 0;
    double B = 0;
    double eps = 0;
    int crossing_sign = 0;
    bool multiple = false;   // member of a multi-point plus intersection set
    bool tangent = false;    // non-transverse intersection
};

namespace detail {

// Roots of f on [a, b] found by sign changes on an n-cell grid.
template <class F>
std::vector<double> grid_roots(F&& f, double a, double b, int n)
{
    std::vector<double> roots;
    double pw = a, pf = f(a);
    for (int i = 1; i <= n; ++i) {
        double w = a + (b - a) * i / n;
        double fv = f(w);
        if (pf == 0.0) {
            roots.push_back(pw);
        } else if ((pf < 0) != (fv < 0) && fv != 0.0) {
            roots.push_back(bracket_root(f, pw, w, pf, fv));
        }
        pw = w;
        pf = fv;
    }
    if (pf == 0.0) roots.push_back(pw);
    return roots;
}

// dOmega/domega along the curve H = 0 (odd k).
inline double curve_slope(int m, double Omega, double omega)
{
    double S = std::sin(half_pi * Omega), C = std::cos(half_pi * Omega);
    double t = std::sin(omega - half_pi * Omega);
    double H_W = S + slow_tilde(m, Omega) * half_pi * C + half_pi * t;
    double H_w = -t;
    return -H_w / H_W;
}

}  // namespace detail

struct HopfOptions {
    int grid = 2048;
    double tangency_rel = 1e-8;
};

inline std::vector<HopfPoint> hopf_points(const ProblemScale& s, int m, const HopfOptions& opt = {})
{
    if (m < 0) throw domain_error("hopf_points: m must be nonnegative");
    const double eps = s.eps;
    std::vector<HopfPoint> out;

    DomainBounds db;
    if (m >= 1) db = domain_bounds(m);

    auto emit = [&](int j, double w_odd, double W, Branch br) {
        HopfPoint p;
        p.k = s.k;
        p.m = m;
        p.j = j;
        p.branch = br;
        p.Omega = W;
        p.eps = eps;
        p.B = B_from_omega(m, W, w_odd, -1);
        double w_par = w_odd + (s.parity() == 0 ? pi : 0.0);
        p.omega_tilde = unwrap(w_par, s.k, m, j);
        p.omega = detail::wrap_2pi(w_par, -half_pi);
        // the label follows the representative: a wrap by 2 pi moves j by one
        p.j = j - static_cast<int>(std::lround((w_par - p.omega) / (2.0 * pi)));
        double slope = detail::curve_slope(m, W, w_odd);
        p.tangent = std::abs(slope - eps) < opt.tangency_rel * eps;
        p.crossing_sign = p.tangent ? 0 : crossing_direction(cplx(0, p.omega_tilde), s, p.B);
        return p;
    };

    for (int j = 1;; ++j) {
        double a = ResonanceIndex(m, j).a();
        auto line = [&](double w) { return eps * (w - a * pi); };
        auto f = [&](double w) { return eval_H(m, line(w), w, -1); };
        std::vector<HopfPoint> pts;
        if (m >= 1) {
            if (line(half_pi) < db.Omega_lower) break;
            for (double w : detail::grid_roots(f, -half_pi, db.omega_at_min, opt.grid)) {
                double W = line(w);
                if (W < -1e-12) pts.push_back(emit(j, w, W, Branch::minus));
            }
            std::vector<HopfPoint> plus;
            for (double w : detail::grid_roots(f, db.omega_at_min, half_pi, opt.grid)) {
                double W = line(w);
                // drop the curve endpoint Omega = 0 (B = 0, odd m and j = 1)
                if (W < -1e-12 && w < half_pi - 1e-9) plus.push_back(emit(j, w, W, Branch::plus));
            }
            if (plus.size() > 1)
                for (auto& p : plus) p.multiple = true;
            pts.insert(pts.end(), plus.begin(), plus.end());
        } else {
            if (line(1.5 * pi) <= -1.0) break;
            auto keep = [](double W) { return W < -1e-12 && W > -1.0 + 1e-12; };
            for (double w : detail::grid_roots(f, 0.0, half_pi, opt.grid))
                if (keep(line(w))) pts.push_back(emit(j, w, line(w), Branch::plus));
            for (double w : detail::grid_roots(f, pi, 1.5 * pi, opt.grid))
                if (keep(line(w))) pts.push_back(emit(j, w, line(w), Branch::minus));
        }
        out.insert(out.end(), pts.begin(), pts.end());
    }
    return out;
}

// Selection helpers over an enumerated list.
inline const HopfPoint* find_point(const std::vector<HopfPoint>& pts, int m, int j, Branch br)
{
    const HopfPoint* best = nullptr;
    for (auto& p : pts)
        if (p.m == m && p.j == j && p.branch == br && (!best || p.B > best->B)) best = &p;
    return best;
}

inline int max_j(const std::vector<HopfPoint>& pts)
{
    int jm = 0;
    for (auto& p : pts) jm = std::max(jm, p.j);
    return jm;
}

}  // namespace delaylab

#endif

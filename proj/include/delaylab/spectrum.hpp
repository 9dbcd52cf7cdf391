#ifndef DELAYLAB_SPECTRUM_HPP
#define DELAYLAB_SPECTRUM_HPP

#include "delaylab/charpoly.hpp"
#include "delaylab/hashing.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace delaylab {

struct Contour {
    double eta = 0;
    double r_real = 0;
    double r_imag = 0;
};

struct SpectrumReport {
    ProblemScale scale;
    double B = 0;
    int E = 0;
    double winding = 0;
    double winding_residual = 0;
    std::vector<Eigenvalue> roots;
    Contour contour;
};

struct SpectrumOptions {
    double eta = 1e-6;
    double winding_tol = 1e-3;
    int max_nudges = 4;
    bool locate_roots = true;
};

namespace detail {

// Rectangle [x0, x1] x [y0, y1] in the mu-plane.
struct Rect {
    double x0, x1, y0, y1;
};

// Logarithmic derivative of psi with the trivial pair +-i omega_k divided out.
// The trivial pair sits at Re mu = 0 for every B; removing it keeps the
// integrand smooth along the left edge.
inline cplx log_deriv(cplx mu, const ProblemScale& s, double B)
{
    cplx f = eval_psi(mu, s.eps, s.sgn(), B);
    cplx d = psi_derivatives(mu, s.eps, s.sgn(), B).psi_mu;
    return d / f - 2.0 * mu / (mu * mu + s.omega_k * s.omega_k);
}

// Integral of log_deriv along the straight segment z0 -> z1, split into unit pieces.
inline cplx segment_integral(cplx z0, cplx z1, const ProblemScale& s, double B)
{
    using boost::math::quadrature::gauss_kronrod;
    double len = std::abs(z1 - z0);
    int pieces = std::max(1, static_cast<int>(std::ceil(len / 1.0)));
    cplx dir = (z1 - z0) / len;
    cplx total = 0;
    double h = len / pieces;
    for (int p = 0; p < pieces; ++p) {
        double t0 = p * h;
        auto g = [&](double t) { return log_deriv(z0 + dir * t, s, B) * dir; };
        double err = 0;
        total += gauss_kronrod<double, 31>::integrate(g, t0, t0 + h, 18, 1e-11, &err);
    }
    return total;
}

// Winding number of psi (trivial pair removed) around a rectangle.
inline cplx winding(const Rect& r, const ProblemScale& s, double B)
{
    cplx a(r.x0, r.y0), b(r.x1, r.y0), c(r.x1, r.y1), d(r.x0, r.y1);
    cplx I = segment_integral(a, b, s, B) + segment_integral(b, c, s, B) + segment_integral(c, d, s, B) +
             segment_integral(d, a, s, B);
    return I / cplx(0, 2 * pi);
}

inline bool integral_ok(cplx w, double tol)
{
    return std::abs(w.real() - std::round(w.real())) < tol && std::abs(w.imag()) < tol;
}

inline void isolate(const Rect& r, int n, const ProblemScale& s, double B, std::vector<Eigenvalue>& out, int depth)
{
    if (n <= 0) return;
    if (depth > 60) throw numerical_error("root isolation did not converge");
    if (n == 1) {
        cplx c(0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1));
        auto inside = [&](cplx z) { return z.real() >= r.x0 && z.real() <= r.x1 && z.imag() >= r.y0 && z.imag() <= r.y1; };
        try {
            auto e = newton_root(c, s, B);
            // newton_root normalizes to Im >= 0, so test the conjugate as well
            if (inside(e.mu) || inside(std::conj(e.mu))) {
                out.push_back(e);
                return;
            }
        } catch (const numerical_error&) {
        }
    }
    // split the longer side slightly off-centre so the cut avoids the real axis
    constexpr double frac = 0.5 + 0.0173;
    double wx = r.x1 - r.x0, wy = r.y1 - r.y0;
    Rect a = r, b = r;
    if (wx >= wy) {
        a.x1 = b.x0 = r.x0 + frac * wx;
    } else {
        a.y1 = b.y0 = r.y0 + frac * wy;
    }
    cplx wa = winding(a, s, B);
    if (!integral_ok(wa, 0.1)) throw numerical_error("root isolation: non-integral winding");
    int na = static_cast<int>(std::lround(wa.real()));
    isolate(a, na, s, B, out, depth + 1);
    isolate(b, n - na, s, B, out, depth + 1);
}

}  // namespace detail

// Unstable dimension E(B) by the argument principle. All roots with
// Re mu >= 0 satisfy |mu| <= (1 + 1/|B|)/eps, which fixes the rectangle.
inline SpectrumReport count_unstable(const ProblemScale& s, double B, const SpectrumOptions& opt = {})
{
    if (B == 0.0 || !std::isfinite(B)) throw domain_error("count_unstable: B must be finite and nonzero");
    double R = 1.05 * (1.0 + 1.0 / std::abs(B)) / s.eps + 1.0;
    SpectrumReport rep;
    rep.scale = s;
    rep.B = B;
    double eta = opt.eta;
    for (int attempt = 0; attempt <= opt.max_nudges; ++attempt, eta *= 10) {
        detail::Rect r{eta, R, -R, R};
        cplx w = detail::winding(r, s, B);
        rep.contour = {eta, R, R};
        rep.winding = w.real();
        rep.E = static_cast<int>(std::lround(w.real()));
        rep.winding_residual = std::abs(w.real() - rep.E) + std::abs(w.imag());
        if (rep.winding_residual < opt.winding_tol && rep.E >= 0) {
            if (opt.locate_roots && rep.E > 0) {
                std::vector<Eigenvalue> all;
                detail::isolate(r, rep.E, s, B, all, 0);
                for (auto& e : all)
                    if (e.mu.imag() >= 0) {
                        bool dup = false;
                        for (auto& q : rep.roots) dup = dup || std::abs(q.mu - e.mu) < 1e-8 * (1 + std::abs(e.mu));
                        if (!dup) rep.roots.push_back(e);
                    }
                std::sort(rep.roots.begin(), rep.roots.end(),
                          [](const Eigenvalue& a, const Eigenvalue& b) { return a.mu.real() > b.mu.real(); });
            }
            return rep;
        }
    }
    throw numerical_error("count_unstable: winding number not integral (contour near a root)");
}

// Parity of E(B) predicted from the real eigenvalue branch.
inline int expected_parity(const ProblemScale& s, double B)
{
    if (s.parity() == 1) return (B < -1.0 || B >= 0.0) ? 1 : 0;
    return (B > 0.0 && B < 1.0) ? 1 : 0;
}

struct TrappingReport {
    double min_abs_psi = std::numeric_limits<double>::infinity();
    cplx argmin;
    int lines = 0;
};

// Minimum of |psi| on the lines Im mu = (l + 1/2) pi, 0 <= Re mu <= mu_R_max, Im mu <= im_max,
// excluding a disc around the trivial eigenvalue i omega_k.
inline TrappingReport trapping_check(const ProblemScale& s, double B, double mu_R_max = 20.0, double im_max = 0.0,
                                     double step = 0.01, double exclusion = 0.05)
{
    if (!(B < 0)) throw domain_error("trapping_check: requires B < 0");
    if (im_max <= 0) im_max = 5.0 * s.omega_k;
    TrappingReport rep;
    cplx trivial(0, s.omega_k);
    int n = static_cast<int>(std::ceil(mu_R_max / step));
    for (int l = 0; (l + 0.5) * pi <= im_max; ++l) {
        double y = (l + 0.5) * pi;
        ++rep.lines;
        auto val = [&](double x) { return std::abs(eval_psi(cplx(x, y), s, B)); };
        int best = -1;
        double bv = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= n; ++i) {
            double x = mu_R_max * i / n;
            if (std::abs(cplx(x, y) - trivial) < exclusion) continue;
            double v = val(x);
            if (v < bv) { bv = v; best = i; }
        }
        if (best < 0) continue;
        cplx at(mu_R_max * best / n, y);
        // local refinement between neighbouring samples, kept outside the exclusion disc
        double x0 = std::max(0.0, mu_R_max * (best - 1) / n), x1 = std::min(mu_R_max, mu_R_max * (best + 1) / n);
        double dy = y - s.omega_k;
        if (exclusion * exclusion > dy * dy) x0 = std::max(x0, std::sqrt(exclusion * exclusion - dy * dy));
        if (x1 > x0) {
            auto r = boost::math::tools::brent_find_minima(val, x0, x1, 40);
            if (r.second < bv) { bv = r.second; at = cplx(r.first, y); }
        }
        if (bv < rep.min_abs_psi) {
            rep.min_abs_psi = bv;
            rep.argmin = at;
        }
    }
    if (rep.min_abs_psi < 1e-8) throw numerical_error("trapping_check: near-zero of psi on a trapping line");
    return rep;
}

struct InstabilityInterval {
    int m = 0;
    int j = 1;
    double B_minus = std::numeric_limits<double>::quiet_NaN();
    double B_plus = std::numeric_limits<double>::quiet_NaN();
    // relation to I_{m,j+1}: +1 gap (B+_{m,j+1} < B-_{m,j}), -1 overlap, 0 unknown
    int gap_to_next = 0;
};

inline std::vector<InstabilityInterval> instability_intervals(const std::vector<HopfPoint>& pts, int m)
{
    std::vector<InstabilityInterval> out;
    int jmax = 0;
    for (auto& p : pts)
        if (p.m == m) jmax = std::max(jmax, p.j);
    auto plus_of = [&](int j) -> std::optional<double> {
        if (m % 2 == 1 && j == 1) return 0.0;
        if (auto* p = find_point(pts, m, j, Branch::plus)) return p->B;
        return std::nullopt;
    };
    for (int j = 1; j <= jmax; ++j) {
        InstabilityInterval iv;
        iv.m = m;
        iv.j = j;
        if (auto* p = find_point(pts, m, j, Branch::minus)) iv.B_minus = p->B;
        if (auto bp = plus_of(j)) iv.B_plus = *bp;
        auto next = plus_of(j + 1);
        if (next && !std::isnan(iv.B_minus)) iv.gap_to_next = (*next < iv.B_minus) ? 1 : -1;
        out.push_back(iv);
    }
    return out;
}

struct InequalityCheck {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct PyragasInterval {
    ProblemScale scale;
    double B_lower = 0, B_upper = 0;
    double b_lower = 0, b_upper = 0;
    bool lower_from_hopf = true;
    bool upper_from_hopf = true;
    bool verified = false;
    int E_mid = -1, E_below = -1, E_above = -1;
    std::vector<InequalityCheck> inequalities;

    bool inequalities_ok() const
    {
        return std::all_of(inequalities.begin(), inequalities.end(), [](auto& c) { return c.ok; });
    }
};

// All Hopf points for m = 0, 1, 2, ... until the enumeration runs dry.
inline std::vector<HopfPoint> all_hopf_points(const ProblemScale& s, int max_m = -1)
{
    std::vector<HopfPoint> all;
    int empty_run = 0;
    for (int m = 0; max_m < 0 || m <= max_m; ++m) {
        auto pts = hopf_points(s, m);
        if (m >= 1) empty_run = pts.empty() ? empty_run + 1 : 0;
        all.insert(all.end(), pts.begin(), pts.end());
        if (max_m < 0 && empty_run >= 4) break;
    }
    return all;
}

inline std::vector<InequalityCheck> pyragas_inequalities(const std::vector<HopfPoint>& pts, double B01, double B11)
{
    std::vector<InequalityCheck> out;
    int mmax = 0;
    for (auto& p : pts) mmax = std::max(mmax, p.m);
    InequalityCheck c67{"max_m B+(m,j_m+1) < B+(0,1)", true, ""};
    InequalityCheck c68{"B+(0,1) < B-(1,1)", B01 < B11, ""};
    InequalityCheck c69{"B-(1,1) <= B-(m,j) for j <= j_m", true, ""};
    for (int m = 1; m <= mmax; ++m) {
        int jm = (m + 1) / 2;
        if (auto* p = find_point(pts, m, jm + 1, Branch::plus); p && !(p->B < B01)) {
            c67.ok = false;
            c67.detail += "m=" + std::to_string(m) + " ";
        }
        for (int j = 1; j <= jm; ++j)
            if (auto* p = find_point(pts, m, j, Branch::minus); p && !(B11 <= p->B)) {
                c69.ok = false;
                c69.detail += "m=" + std::to_string(m) + ",j=" + std::to_string(j) + " ";
            }
    }
    out.push_back(c67);
    out.push_back(c68);
    out.push_back(c69);
    return out;
}

struct PyragasOptions {
    bool verify = true;
    double outside = 1e-2;  // relative offset beyond each end
};

inline PyragasInterval pyragas_interval(const ProblemScale& s, const PyragasOptions& opt = {})
{
    if (s.k < 1) throw domain_error("pyragas_interval: requires k >= 1");
    auto pts = all_hopf_points(s);
    PyragasInterval pi_;
    pi_.scale = s;
    if (auto* p = find_point(pts, 0, 1, Branch::plus)) {
        pi_.B_lower = p->B;
    } else {
        // no complex boundary (k = 1): the zero eigenvalue line bounds the interval
        pi_.B_lower = -1.0;
        pi_.lower_from_hopf = false;
    }
    if (auto* p = find_point(pts, 1, 1, Branch::minus)) {
        pi_.B_upper = p->B;
    } else {
        double up = 0.0;
        for (auto& p : pts)
            if (p.m >= 1 && p.branch == Branch::minus && p.B > pi_.B_lower && (up == 0.0 || p.B < up)) up = p.B;
        pi_.B_upper = up;
        pi_.upper_from_hopf = false;
    }
    pi_.b_lower = 2 * s.eps * pi_.B_lower;
    pi_.b_upper = 2 * s.eps * pi_.B_upper;
    pi_.inequalities = pyragas_inequalities(pts, pi_.B_lower, pi_.B_upper);
    if (opt.verify) {
        SpectrumOptions so;
        so.locate_roots = false;
        double mid = 0.5 * (pi_.B_lower + pi_.B_upper);
        pi_.E_mid = count_unstable(s, mid, so).E;
        pi_.E_below = count_unstable(s, pi_.B_lower - opt.outside * std::abs(pi_.B_lower), so).E;
        if (pi_.B_upper < 0) pi_.E_above = count_unstable(s, pi_.B_upper + opt.outside * std::abs(pi_.B_upper), so).E;
        pi_.verified = pi_.B_lower < pi_.B_upper && pi_.E_mid == 0 && pi_.E_below > 0 &&
                       (pi_.B_upper == 0.0 || pi_.E_above > 0);
    }
    return pi_;
}

// Smallest k in [1, k_max] for which all ordering checks on the Hopf points hold.
inline std::optional<int> smallest_certified_k(int k_max)
{
    for (int k = 1; k <= k_max; ++k) {
        auto s = make_scale(k);
        PyragasOptions o;
        o.verify = false;
        auto p = pyragas_interval(s, o);
        if (p.lower_from_hopf && p.upper_from_hopf && p.inequalities_ok()) return k;
    }
    return std::nullopt;
}

}  // namespace delaylab

#endif

#ifndef DELAYLAB_CHARPOLY_HPP
#define DELAYLAB_CHARPOLY_HPP

#include "delaylab/detail.hpp"
#include "delaylab/scaling.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <optional>
#include <vector>

namespace delaylab {

// psi(mu) = -eps B mu - sgn B e^{-mu} + (1 + e^{-pi eps mu})/2, sgn = (-1)^k.
inline cplx eval_psi(cplx mu, double eps, int sgn, double B)
{
    return -eps * B * mu - double(sgn) * B * std::exp(-mu) + 0.5 * (1.0 + std::exp(-pi * eps * mu));
}

inline cplx eval_psi(cplx mu, const ProblemScale& s, double B)
{
    if (B == 0.0) throw domain_error("eval_psi: B must be nonzero");
    return eval_psi(mu, s.eps, s.sgn(), B);
}

// Magnitude of the individual terms of psi; used to make root tolerances scale-aware.
inline double psi_term_scale(cplx mu, double eps, double B)
{
    return 1.0 + std::abs(B) * (eps * std::abs(mu) + std::abs(std::exp(-mu))) + std::abs(std::exp(-pi * eps * mu));
}

struct PsiDerivatives {
    cplx psi_mu;
    cplx psi_eps;
    cplx psi_B;
};

inline PsiDerivatives psi_derivatives(cplx mu, double eps, int sgn, double B)
{
    cplx em = std::exp(-mu);
    cplx ep = std::exp(-pi * eps * mu);
    PsiDerivatives d;
    d.psi_mu = -eps * B + double(sgn) * B * em - half_pi * eps * ep;
    d.psi_eps = -mu * (B + half_pi * ep);
    d.psi_B = -eps * mu - double(sgn) * em;
    return d;
}

inline PsiDerivatives psi_derivatives(cplx mu, const ProblemScale& s, double B)
{
    if (B == 0.0) throw domain_error("psi_derivatives: B must be nonzero");
    return psi_derivatives(mu, s.eps, s.sgn(), B);
}

// d mu / d B along a simple root.
inline cplx root_velocity_B(cplx mu, const ProblemScale& s, double B)
{
    auto d = psi_derivatives(mu, s, B);
    if (std::abs(d.psi_mu) < 1e-14) throw numerical_error("root_velocity_B: root is not simple");
    return -d.psi_B / d.psi_mu;
}

// Sign of d Re mu / dB at a simple root mu; 0 if the crossing is degenerate.
inline int crossing_direction(cplx mu, const ProblemScale& s, double B, double threshold = 1e-12)
{
    double v = root_velocity_B(mu, s, B).real();
    if (std::abs(v) <= threshold) return 0;
    return v > 0 ? 1 : -1;
}

// Control value B at which the real number mu_R is an eigenvalue.
inline double real_eig_B(double mu_R, const ProblemScale& s)
{
    double den = s.eps * mu_R + s.sgn() * std::exp(-mu_R);
    if (std::abs(den) < 1e-8 * (1.0 + std::abs(s.eps * mu_R)))
        throw domain_error("real_eig_B: denominator vanishes (uncontrolled positive real eigenvalue)");
    return 0.5 * (1.0 + std::exp(-pi * s.eps * mu_R)) / den;
}

struct BMax {
    double B_max;
    double argmax;
};

// Global maximum of the real branch B(mu_R) for even k, searched on [-50, 50].
inline BMax B_max(const ProblemScale& s)
{
    if (s.parity() != 0) throw domain_error("B_max: defined for even k only");
    constexpr double lo = -50, hi = 50;
    constexpr int n = 4001;
    double h = (hi - lo) / (n - 1);
    int best = 0;
    double bv = -1e300;
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) {
        vals[i] = real_eig_B(lo + i * h, s);
        if (vals[i] > bv) { bv = vals[i]; best = i; }
    }
    if (best == 0 || best == n - 1) throw numerical_error("B_max: maximum on bracket edge");
    // tails must decay monotonically away from the maximum
    for (int i = 1; i <= best; ++i)
        if (vals[i] < vals[i - 1]) throw numerical_error("B_max: real branch not unimodal");
    for (int i = best + 1; i < n; ++i)
        if (vals[i] > vals[i - 1]) throw numerical_error("B_max: real branch not unimodal");
    auto r = boost::math::tools::brent_find_minima([&](double x) { return -real_eig_B(x, s); },
                                                   lo + (best - 1) * h, lo + (best + 1) * h, 52);
    return {-r.second, r.first};
}

// A characteristic root, normalized to Im mu >= 0.
struct Eigenvalue {
    cplx mu;
    double residual = 0;
    std::optional<FrequencyEntourage> entourage;
};

struct NewtonOptions {
    double tol = 1e-12;
    int max_iter = 60;
    int max_halvings = 20;
};

inline Eigenvalue normalized(cplx mu, double residual, const ProblemScale& s)
{
    if (mu.imag() < 0) mu = std::conj(mu);
    Eigenvalue e{mu, residual, std::nullopt};
    if (mu.imag() > 0) {
        try {
            e.entourage = entourage_of(mu.imag(), s);
        } catch (const domain_error&) {
        }
    }
    return e;
}

// Damped Newton iteration on psi. The tolerance is relative to the size of the terms of psi,
// so that huge |B| does not make the absolute target unreachable.
inline Eigenvalue newton_root(cplx guess, const ProblemScale& s, double B, const NewtonOptions& opt = {})
{
    if (B == 0.0) throw domain_error("newton_root: B must be nonzero");
    cplx mu = guess;
    cplx f = eval_psi(mu, s, B);
    for (int it = 0; it <= opt.max_iter; ++it) {
        if (std::abs(f) <= opt.tol * psi_term_scale(mu, s.eps, B)) return normalized(mu, std::abs(f), s);
        if (it == opt.max_iter) break;
        cplx d = psi_derivatives(mu, s, B).psi_mu;
        if (std::abs(d) < 1e-14 * psi_term_scale(mu, s.eps, B)) throw numerical_error("newton_root: singular derivative");
        cplx step = f / d;
        double lam = 1.0;
        cplx trial = mu - step;
        cplx ft = eval_psi(trial, s, B);
        for (int hv = 0; hv < opt.max_halvings && !(std::abs(ft) < std::abs(f)); ++hv) {
            lam *= 0.5;
            trial = mu - lam * step;
            ft = eval_psi(trial, s, B);
        }
        if (!(std::abs(ft) < std::abs(f))) {
            // no decrease: accept only if already at rounding level
            if (std::abs(step) <= 1e-14 * (1.0 + std::abs(mu))) return normalized(mu, std::abs(f), s);
            throw numerical_error("newton_root: damping failed");
        }
        mu = trial;
        f = ft;
    }
    throw numerical_error("newton_root: iteration cap reached");
}

// Roots with Re mu >= 0 of eps mu + (-1)^k e^{-mu} = 0 (vanishing control).
inline std::vector<Eigenvalue> uncontrolled_spectrum(const ProblemScale& s)
{
    const double eps = s.eps;
    const double sg = s.sgn();
    auto g = [&](cplx mu) { return eps * mu + sg * std::exp(-mu); };
    auto dg = [&](cplx mu) { return eps - sg * std::exp(-mu); };

    std::vector<Eigenvalue> out;
    out.push_back(normalized(cplx(0, s.omega_k), std::abs(g(cplx(0, s.omega_k))), s));
    for (int j = 1; j <= s.k / 2; ++j) {
        double lo = s.omega_k - 2 * pi * j;
        double y = lo + pi / 4;
        cplx mu(-std::log(eps * y), y);
        for (int it = 0; it < 100; ++it) {
            cplx step = g(mu) / dg(mu);
            mu -= step;
            if (std::abs(step) < 1e-15 * std::abs(mu)) break;
        }
        if (!(mu.imag() > lo && mu.imag() < lo + half_pi && mu.real() > 0))
            throw numerical_error("uncontrolled_spectrum: root left its strip");
        out.push_back(normalized(mu, std::abs(g(mu)), s));
    }
    if (s.parity() == 1) {
        double x = detail::bracket_root([&](double t) { return eps * t - std::exp(-t); }, 0.0, 1.0 / eps);
        out.push_back(normalized(cplx(x, 0), std::abs(g(cplx(x, 0))), s));
    }
    return out;
}

}  // namespace delaylab

#endif

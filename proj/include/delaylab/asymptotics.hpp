#ifndef DELAYLAB_ASYMPTOTICS_HPP
#define DELAYLAB_ASYMPTOTICS_HPP

// Truncated small-eps and small-delta series for Hopf points and stability
// boundaries, plus the log-log slope fit used to validate them.
//
// Series are kept to the printed order. Nothing beyond the first omitted
// term is invented; validators only check the empirical order.

#include "delaylab/detail.hpp"
#include "delaylab/scaling.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace delaylab {

struct EpsExpansion {
    double Omega = 0;
    double omega = 0;
    double B = 0;
};

// Two-term eps series of (Omega, omega, B) at resonance m, strip j. The
// fast frequency is given for odd k; even k adds pi.
inline EpsExpansion eps_expand(int m, int j, Branch br, double eps, bool even_k = false)
{
    if (m < 0 || j < 1) throw domain_error("eps_expand: need m >= 0 and j >= 1");
    if (!(eps >= 0)) throw domain_error("eps_expand: eps must be nonnegative");
    ResonanceIndex r(m, j);
    double e = half_pi * eps;
    EpsExpansion out;
    if (br == Branch::minus) {
        if (m == 0) throw domain_error("eps_expand: minus branch needs m >= 1");
        double a = r.alpha_minus();
        double mm = static_cast<double>(m);
        out.Omega = a * (-e + 2.0 * mm * e * e);
        out.omega = half_pi * (-1.0 + 2.0 * mm * a * e);
        out.B = pi / (4.0 * mm) * a * (-e + (4.0 * mm * mm - a) / (2.0 * mm) * e * e);
    } else {
        double a = r.alpha_plus();
        double m1 = static_cast<double>(m + 1);
        out.Omega = a * (-e - 2.0 * m1 * e * e);
        out.omega = half_pi * (1.0 - 2.0 * m1 * a * e);
        out.B = pi / (4.0 * m1) * a * (-e - (4.0 * m1 * m1 + a) / (2.0 * m1) * e * e);
    }
    if (even_k) out.omega += pi;
    return out;
}

struct BoundaryExpansion {
    double eps = 0;
    double b_lower = 0;
    double b_upper = 0;
    double B01_plus = 0;
    double B11_minus = 0;

    // Truncations at the first gap of resonance m >= 1.
    double B_m_jm_minus(int m) const
    {
        if (m < 1) throw domain_error("B_m_jm_minus: m >= 1");
        double e = half_pi * eps;
        return -half_pi * half_pi * eps + (2.0 * m - 1.0) * half_pi * half_pi * e * eps;
    }
    double B_m_jm1_plus(int m) const
    {
        if (m < 1) throw domain_error("B_m_jm1_plus: m >= 1");
        double e = half_pi * eps;
        return -half_pi * half_pi * eps - (2.0 * m + 3.0) * half_pi * half_pi * e * eps;
    }
};

inline BoundaryExpansion boundary_expansion(const ProblemScale& s)
{
    if (s.k < 1) throw domain_error("boundary_expansion: k >= 1");
    BoundaryExpansion out;
    double eps = s.eps;
    double q2 = half_pi * half_pi, q3 = q2 * half_pi;
    out.eps = eps;
    out.b_lower = -0.5 * pi * pi * eps * eps - 0.75 * pi * pi * pi * eps * eps * eps;
    out.b_upper = -0.5 * pi * pi * eps * eps + 0.25 * pi * pi * pi * eps * eps * eps;
    out.B01_plus = -q2 * eps - 3.0 * q3 * eps * eps;
    out.B11_minus = -q2 * eps + q3 * eps * eps;
    return out;
}

struct DeltaExpansion {
    double Omega = 0;
    double B = 0;
    double eps_plus = 0;
    double eps_minus = 0;
    double B01_plus = 0;
    double B11_minus = 0;
};

// Small-delta series along the curve of resonance 1/delta, odd k.
inline DeltaExpansion delta_expand(double delta, double omega)
{
    if (!(delta > 0)) throw domain_error("delta_expand: delta must be positive");
    if (std::abs(omega) > half_pi * (1.0 + 1e-15))
        throw domain_error("delta_expand: |omega| must not exceed pi/2");
    double c = std::cos(omega), s = std::sin(omega);
    double d2 = delta * delta, d3 = d2 * delta;
    double w = omega / half_pi;
    DeltaExpansion out;
    out.Omega = -c / half_pi * (delta - s * d2);
    out.B = -c * (d2 - 2.0 * s * d3);
    double inv = 1.0 / (half_pi * half_pi);
    out.eps_plus = inv * c * (d2 + (w - 2.0 - s) * d3);
    out.eps_minus = inv * c * (d2 + (w + 2.0 - s) * d3);
    out.B01_plus = -c * (d2 + (w - 2.0 - s) * d3);
    out.B11_minus = -c * (d2 + (w + 2.0 - s) * d3);
    return out;
}

inline double b_min_expansion(double delta)
{
    if (!(delta >= 0)) throw domain_error("b_min_expansion: delta must be nonnegative");
    return -delta * delta;
}

// Least-squares slope of log|error| against log h. Any exact agreement
// yields +infinity.
inline double order_fit(const std::vector<std::pair<double, double>>& samples)
{
    if (samples.size() < 3) throw domain_error("order_fit: need at least 3 samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [h, err] : samples) {
        if (!(h > 0)) throw domain_error("order_fit: step must be positive");
        if (!(err > 0)) return std::numeric_limits<double>::infinity();
        double x = std::log(h), y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(samples.size());
    double den = n * sxx - sx * sx;
    if (!(std::abs(den) > 1e-12 * n * sxx)) throw domain_error("order_fit: steps must differ");
    return (n * sxy - sx * sy) / den;
}

}  // namespace delaylab

#endif

#ifndef DELAYLAB_SCALING_HPP
#define DELAYLAB_SCALING_HPP

#include "delaylab/detail.hpp"

#include <cmath>

namespace delaylab {

// Hopf index k and the quantities it fixes: omega_k = (k+1/2)pi, eps = 1/omega_k,
// lambda_k = (-1)^(k+1) omega_k and the minimal period p_k = 2pi/omega_k.
struct ProblemScale {
    int k = 0;
    double omega_k = half_pi;
    double eps = 1 / half_pi;
    double lambda_k = -half_pi;
    double p_k = 4.0;

    int parity() const { return k % 2; }
    int sgn() const { return sign_pow(k); }
};

inline ProblemScale make_scale(int k)
{
    if (k < 0) throw domain_error("make_scale: k must be nonnegative");
    ProblemScale s;
    s.k = k;
    double twice = 2.0 * k + 1.0;
    s.omega_k = twice * half_pi;
    s.eps = 1.0 / s.omega_k;
    s.lambda_k = -sign_pow(k) * s.omega_k;
    s.p_k = 4.0 / twice;
    return s;
}

// Physical control amplitude b and its scaled form B = b/(2 eps).
class ControlAmplitude {
public:
    static ControlAmplitude from_b(double b, const ProblemScale& s)
    {
        check(b);
        return ControlAmplitude(b, b * s.omega_k / 2);
    }
    static ControlAmplitude from_B(double B, const ProblemScale& s)
    {
        check(B);
        return ControlAmplitude(2 * B * s.eps, B);
    }
    double b() const { return b_; }
    double B() const { return B_; }

private:
    ControlAmplitude(double b, double B) : b_(b), B_(B) {}
    static void check(double v)
    {
        if (v == 0.0 || !std::isfinite(v)) throw domain_error("control amplitude must be finite and nonzero");
    }
    double b_;
    double B_;
};

// Resonance m and strip j labels with their derived coefficients.
struct ResonanceIndex {
    int m = 0;
    int j = 1;

    ResonanceIndex(int m_, int j_) : m(m_), j(j_)
    {
        if (m < 0) throw domain_error("ResonanceIndex: m must be nonnegative");
        if (j < 1) throw domain_error("ResonanceIndex: j must be positive");
    }
    double Omega_m() const { return 2.0 * m + 1.0; }
    double delta() const { return 1.0 / Omega_m(); }
    int j_m() const { return (m + 1) / 2; }
    // hashing offset for odd k: Omega = eps (omega - a pi)
    double a() const { return 2.0 * j - 1.0 + 0.5 * sign_pow(m); }
    double alpha_plus() const { return 4.0 * j + sign_pow(m) - 3.0; }
    double alpha_minus() const { return 4.0 * j + sign_pow(m) - 1.0; }
};

// Slow/fast frequency representation of an imaginary part omega_tilde > 0.
struct FrequencyEntourage {
    double omega_tilde = 0;
    double Omega_tilde = 0;
    int m = 0;
    double Omega = 0;
    double omega = 0;
};

inline FrequencyEntourage entourage_of(double mu_imag, const ProblemScale& s)
{
    if (!(mu_imag > 0)) throw domain_error("entourage_of: imaginary part must be positive");
    FrequencyEntourage e;
    e.omega_tilde = mu_imag;
    e.Omega_tilde = s.eps * mu_imag;
    // windows (0,1] for m=0 and (2m-1, 2m+1] for m>=1
    int m = e.Omega_tilde <= 1.0 ? 0 : static_cast<int>(std::ceil((e.Omega_tilde - 1.0) / 2.0));
    if (m >= 1) {
        double even = 2.0 * m;
        if (std::abs(e.Omega_tilde - even) <= 1e-12 * even)
            throw domain_error("entourage_of: slow frequency sits on an even-integer resonance");
    }
    e.m = m;
    e.Omega = e.Omega_tilde - (2.0 * m + 1.0);
    e.omega = detail::wrap_2pi(mu_imag, -half_pi);
    return e;
}

}  // namespace delaylab

#endif

#ifndef DELAYLAB_DDE_HPP
#define DELAYLAB_DDE_HPP

// Controlled delay equation
//
//     x'(t) = lambda f(x(t-1)) + (x(t) + x(t-p/2)) / b,
//
// on a grid h = 1/(N(2k+1)) that hits both delays exactly. The one-step
// scheme is the two-point Hermite-Obreschkoff rule of order four:
//
//     x1 = x0 + h/2 (F0 + F1) + h^2/12 (F0' - F1').
//
// F and F' only involve delayed values plus a term linear in x1, so the
// implicit equation is solved in closed form. Derivatives are stored one
// sided, which keeps the jump at t = 0 out of every step.

#include "delaylab/detail.hpp"
#include "delaylab/scaling.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace delaylab {

struct Nonlinearity {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;

    // Checks oddness, unit slope and a negative cubic coefficient.
    Nonlinearity(std::function<double(double)> f_, std::function<double(double)> df_,
                 std::function<double(double)> d2f_)
        : f(std::move(f_)), df(std::move(df_)), d2f(std::move(d2f_))
    {
        for (double x : {0.1, 0.37, 0.9, 1.7, 3.1})
            if (std::abs(f(x) + f(-x)) > 1e-12) throw domain_error("Nonlinearity: f is not odd");
        double h = 1e-4;
        double slope = (f(h) - f(-h)) / (2.0 * h);
        if (std::abs(slope - 1.0) > 1e-6) throw domain_error("Nonlinearity: f'(0) != 1");
        double H = 1e-2;
        double third = (f(2 * H) - 2 * f(H) + 2 * f(-H) - f(-2 * H)) / (2.0 * H * H * H);
        if (!(third < 0)) throw domain_error("Nonlinearity: f'''(0) must be negative");
    }

    static Nonlinearity sine()
    {
        return Nonlinearity([](double x) { return std::sin(x); }, [](double x) { return std::cos(x); },
                            [](double x) { return -std::sin(x); });
    }
};

// Step layout for resolution N: M steps per unit delay, 2N per half period,
// L steps of history (the longer of the two delays).
struct DelayGrid {
    int N = 64;
    int M = 0;
    int half = 0;
    int L = 0;
    double h = 0;

    DelayGrid(const ProblemScale& s, int N_) : N(N_)
    {
        if (N < 1) throw domain_error("DelayGrid: N must be positive");
        M = N * (2 * s.k + 1);
        half = 2 * N;
        L = std::max(M, half);
        h = 1.0 / M;
    }
    int period() const { return 2 * half; }
};

// Values and derivatives on [-L h, 0], nodes -L..0.
struct HistorySegment {
    double h = 0;
    std::vector<double> x;
    std::vector<double> dx;

    template <class G, class DG>
    static HistorySegment sample(const DelayGrid& g, G&& fn, DG&& dfn)
    {
        HistorySegment hs;
        hs.h = g.h;
        hs.x.resize(g.L + 1);
        hs.dx.resize(g.L + 1);
        for (int i = 0; i <= g.L; ++i) {
            double t = (i - g.L) * g.h;
            hs.x[i] = fn(t);
            hs.dx[i] = dfn(t);
        }
        return hs;
    }
};

// Samples at nodes -L..n_steps. Index i holds t = (i - L) h.
struct Trajectory {
    double h = 0;
    int L = 0;
    std::vector<double> x;
    std::vector<double> dL;
    std::vector<double> dR;

    double t(std::size_t i) const { return (static_cast<double>(i) - L) * h; }
    std::size_t steps() const { return x.size() - L - 1; }
};

inline double control_gain(double b)
{
    if (b == 0.0 || std::isnan(b)) throw domain_error("control amplitude b must be nonzero");
    return std::isinf(b) ? 0.0 : 1.0 / b;
}

namespace detail {

// Grid resolution implied by a history; rejects misaligned steps.
inline DelayGrid grid_of(const ProblemScale& s, const HistorySegment& hs)
{
    if (!(hs.h > 0) || hs.x.size() != hs.dx.size() || hs.x.size() < 2)
        throw domain_error("integrate: malformed history");
    double Mr = 1.0 / hs.h;
    int M = static_cast<int>(std::lround(Mr));
    int q = 2 * s.k + 1;
    if (std::abs(Mr - M) > 1e-9 * Mr || M % q != 0) throw domain_error("integrate: step does not divide both delays");
    DelayGrid g(s, M / q);
    if (static_cast<int>(hs.x.size()) != g.L + 1) throw domain_error("integrate: history length does not match the delays");
    return g;
}

}  // namespace detail

inline Trajectory integrate(const ProblemScale& s, double lambda, double b, const Nonlinearity& nl,
                            const HistorySegment& hist, double T, double overflow = 1e8)
{
    DelayGrid g = detail::grid_of(s, hist);
    double beta = control_gain(b);
    if (!(T >= 0)) throw domain_error("integrate: T must be nonnegative");
    long long n_steps = static_cast<long long>(std::ceil(T / g.h - 1e-9));

    const int M = g.M, H2 = g.half, L = g.L;
    const double h = g.h, c1 = h / 2.0, c2 = h * h / 12.0;
    const double lhs = 1.0 - c1 * beta + c2 * beta * beta;

    Trajectory tr;
    tr.h = h;
    tr.L = L;
    std::size_t total = L + 1 + static_cast<std::size_t>(n_steps);
    tr.x.assign(hist.x.begin(), hist.x.end());
    tr.dL.assign(hist.dx.begin(), hist.dx.end());
    tr.dR.assign(hist.dx.begin(), hist.dx.end());
    tr.x.reserve(total);
    tr.dL.reserve(total);
    tr.dR.reserve(total);

    // right derivative at t = 0 follows the equation, not the history
    tr.dR[L] = lambda * nl.f(tr.x[L - M]) + beta * (tr.x[L] + tr.x[L - H2]);

    for (long long n = 0; n < n_steps; ++n) {
        std::size_t i = L + static_cast<std::size_t>(n);
        double Fn = tr.dR[i];
        double Fpn = lambda * nl.df(tr.x[i - M]) * tr.dR[i - M] + beta * (Fn + tr.dR[i - H2]);
        std::size_t j = i + 1;
        double xd = tr.x[j - M];
        double A = lambda * nl.f(xd) + beta * tr.x[j - H2];
        double C = lambda * nl.df(xd) * tr.dL[j - M] + beta * tr.dL[j - H2];
        double x1 = (tr.x[i] + c1 * (Fn + A) + c2 * (Fpn - C - beta * A)) / lhs;
        if (!std::isfinite(x1) || std::abs(x1) > overflow)
            throw numerical_error("integrate: solution left the overflow guard");
        double F1 = A + beta * x1;
        tr.x.push_back(x1);
        tr.dL.push_back(F1);
        tr.dR.push_back(F1);
    }
    return tr;
}

struct OrbitOptions {
    int N = 64;
    double tol = 1e-12;
    int max_iter = 60;
};

struct PeriodicOrbit {
    ProblemScale scale;
    double lambda = 0;
    double b = 0;
    int N = 0;
    double h = 0;
    std::vector<double> samples;   // one period, 4N values from t = 0
    double period = 0;
    double amplitude = 0;
    double symmetry_residual = 0;   // sup |x(t + p/2) + x(t)| along a controlled run
    double noninvasive_residual = 0;  // sup |x(t) + x(t - p/2)| along the same run
    double half_closure = 0;        // antisymmetric half-period map residual
    double full_closure = 0;        // full-period map residual
    double bvp_residual = 0;
    int iterations = 0;

    // Value at node n of the antisymmetric periodic extension.
    double at(long long n) const
    {
        long long H2 = static_cast<long long>(samples.size()) / 2;
        long long q = n >= 0 ? n / H2 : -((-n + H2 - 1) / H2);
        long long r = n - q * H2;
        double v = samples[static_cast<std::size_t>(r)];
        return (q % 2 == 0) ? v : -v;
    }
};

// Describing function of f at amplitude A.
inline double describing_gain(const Nonlinearity& nl, double A)
{
    const int n = 256;
    double acc = 0;
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * pi * i / n;
        acc += nl.f(A * std::cos(th)) * std::cos(th);
    }
    return 2.0 * acc / (n * A);
}

// History taken from an orbit, with derivatives from the equation.
inline HistorySegment orbit_history(const PeriodicOrbit& o, const Nonlinearity& nl)
{
    DelayGrid g(o.scale, o.N);
    HistorySegment hs;
    hs.h = g.h;
    hs.x.resize(g.L + 1);
    hs.dx.resize(g.L + 1);
    for (int i = 0; i <= g.L; ++i) {
        long long n = i - g.L;
        hs.x[i] = o.at(n);
        hs.dx[i] = o.lambda * nl.f(o.at(n - g.M));
    }
    return hs;
}

// Odd-symmetric orbit of period p_k. The control vanishes on such orbits,
// so the discrete periodic problem is posed for the uncontrolled scheme on
// half a period and closed by Gauss-Newton with a phase condition.
inline PeriodicOrbit find_orbit(const ProblemScale& s, double lambda, double b, const Nonlinearity& nl,
                                const OrbitOptions& opt = {})
{
    control_gain(b);
    if (!(lambda * s.lambda_k > 0) || !(std::abs(lambda) > std::abs(s.lambda_k)))
        throw domain_error("find_orbit: lambda must lie beyond lambda_k on the same side");
    DelayGrid g(s, opt.N);
    const int H2 = g.half, M = g.M;
    const double h = g.h;

    // amplitude from harmonic balance
    double target = s.lambda_k / lambda;
    double A_hi = 1.0;
    while (describing_gain(nl, A_hi) > target && A_hi < 1e3) A_hi *= 2.0;
    if (!(describing_gain(nl, A_hi) <= target)) throw numerical_error("find_orbit: no harmonic balance amplitude");
    double A0 = detail::bracket_root([&](double A) { return describing_gain(nl, A) - target; }, 1e-8, A_hi);

    Eigen::VectorXd u(H2);
    for (int n = 0; n < H2; ++n) u[n] = A0 * std::cos(s.omega_k * n * h);

    // node n -> (index in u, sign)
    auto idx = [H2](long long n, int& sg) {
        long long q = n >= 0 ? n / H2 : -((-n + H2 - 1) / H2);
        sg = (q % 2 == 0) ? 1 : -1;
        return static_cast<int>(n - q * H2);
    };
    auto val = [&](const Eigen::VectorXd& v, long long n) {
        int sg;
        int r = idx(n, sg);
        return sg * v[r];
    };

    PeriodicOrbit o;
    o.scale = s;
    o.lambda = lambda;
    o.b = b;
    o.N = opt.N;
    o.h = h;
    o.period = s.p_k;

    const double c1 = h / 2.0, c2 = h * h / 12.0;
    Eigen::VectorXd R(H2 + 1);
    Eigen::MatrixXd J(H2 + 1, H2);
    double res = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        J.setZero();
        auto add = [&](int row, long long n, double coef) {
            int sg;
            int r = idx(n, sg);
            J(row, r) += sg * coef;
        };
        // F_n = lambda f(x_{n-M}),  F'_n = lambda f'(x_{n-M}) F_{n-M}
        for (int n = 0; n < H2; ++n) {
            double r_val = val(u, n + 1) - val(u, n);
            add(n, n + 1, 1.0);
            add(n, n, -1.0);
            for (int side = 0; side < 2; ++side) {
                long long m = n + side;
                double sgn_h = side == 0 ? 1.0 : -1.0;  // F'_n enters with +, F'_{n+1} with -
                double xa = val(u, m - M), xb = val(u, m - 2 * M);
                double F = lambda * nl.f(xa);
                double Fd = lambda * nl.f(xb);
                double Fp = lambda * nl.df(xa) * Fd;
                r_val -= c1 * F + sgn_h * c2 * Fp;
                add(n, m - M, -c1 * lambda * nl.df(xa) - sgn_h * c2 * lambda * nl.d2f(xa) * Fd);
                add(n, m - 2 * M, -sgn_h * c2 * lambda * nl.df(xa) * lambda * nl.df(xb));
            }
            R[n] = r_val;
        }
        // phase: no sin(omega_k t) component on the half period
        double ph = 0;
        for (int n = 0; n < H2; ++n) {
            double w = std::sin(s.omega_k * n * h);
            ph += u[n] * w;
            J(H2, n) = w;
        }
        R[H2] = ph * h;
        J.row(H2) *= h;

        res = R.head(H2).cwiseAbs().maxCoeff();
        double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
        if (res < opt.tol * scale && std::abs(R[H2]) < opt.tol * scale) break;
        Eigen::VectorXd du = J.colPivHouseholderQr().solve(-R);
        if (!du.allFinite()) throw numerical_error("find_orbit: singular Newton system");
        u += du;
    }
    if (it == opt.max_iter) throw numerical_error("find_orbit: Gauss-Newton did not converge");
    o.iterations = it;
    o.bvp_residual = res;
    o.samples.resize(2 * H2);
    for (int n = 0; n < 2 * H2; ++n) o.samples[n] = val(u, n);
    o.amplitude = u.cwiseAbs().maxCoeff();
    if (!(o.amplitude > 1e-10)) throw numerical_error("find_orbit: collapsed onto the equilibrium");

    // controlled run over one period from the orbit history
    auto tr = integrate(s, lambda, b, nl, orbit_history(o, nl), s.p_k);
    double sym = 0, half = 0, full = 0;
    const int L = g.L;
    for (std::size_t i = L; i < tr.x.size(); ++i) sym = std::max(sym, std::abs(tr.x[i] + tr.x[i - H2]));
    for (int i = 0; i <= L; ++i) {
        half = std::max(half, std::abs(tr.x[i + H2] + tr.x[i]));
        full = std::max(full, std::abs(tr.x[i + 2 * H2] - tr.x[i]));
    }
    o.symmetry_residual = sym;
    o.noninvasive_residual = sym;
    o.half_closure = half;
    o.full_closure = full;
    return o;
}

struct FloquetOptions {
    double unstable_tol = 1e-6;
    int dense_limit = 4096;
    int n_largest = 10;
    double trivial_tol = 1e-3;
    bool auto_refine = true;
};

struct FloquetReport {
    std::vector<cplx> multipliers;  // sorted by decreasing modulus
    double trivial_error = 0;
    int trivial_index = -1;
    int unstable_count = 0;
    int dimension = 0;
    int N = 0;
    bool dense = true;
};

namespace detail {

// Linearized period map on the (y, y') window of dimension 2(L+1).
class PeriodMap {
public:
    PeriodMap(const ProblemScale& s, double lambda, double b, const Nonlinearity& nl, const Trajectory& base,
              int N)
        : g_(s, N), lambda_(lambda), beta_(control_gain(b)), base_(base)
    {
        std::size_t n = base_.x.size();
        fp_.resize(n);
        fpp_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            fp_[i] = nl.df(base_.x[i]);
            fpp_[i] = nl.d2f(base_.x[i]);
        }
    }

    int dim() const { return 2 * (g_.L + 1); }

    Eigen::VectorXd apply(const Eigen::VectorXd& z) const
    {
        const int M = g_.M, H2 = g_.half, L = g_.L, P = g_.period();
        const double h = g_.h, c1 = h / 2.0, c2 = h * h / 12.0, be = beta_, la = lambda_;
        const double lhs = 1.0 - c1 * be + c2 * be * be;
        std::vector<double> y(L + 1 + P), eL(L + 1 + P), eR(L + 1 + P);
        for (int i = 0; i <= L; ++i) {
            y[i] = z[i];
            eL[i] = eR[i] = z[L + 1 + i];
        }
        eR[L] = la * fp_[L - M] * y[L - M] + be * (y[L] + y[L - H2]);
        for (int n = 0; n < P; ++n) {
            int i = L + n, j = i + 1;
            double G = eR[i];
            double Gp = la * (fpp_[i - M] * y[i - M] * base_.dR[i - M] + fp_[i - M] * eR[i - M]) +
                        be * (G + eR[i - H2]);
            double A = la * fp_[j - M] * y[j - M] + be * y[j - H2];
            double C = la * (fpp_[j - M] * y[j - M] * base_.dL[j - M] + fp_[j - M] * eL[j - M]) +
                       be * eL[j - H2];
            double y1 = (y[i] + c1 * (G + A) + c2 * (Gp - C - be * A)) / lhs;
            y[j] = y1;
            eL[j] = eR[j] = A + be * y1;
        }
        Eigen::VectorXd out(dim());
        for (int i = 0; i <= L; ++i) {
            out[i] = y[P + i];
            out[L + 1 + i] = eL[P + i];
        }
        return out;
    }

private:
    DelayGrid g_;
    double lambda_, beta_;
    const Trajectory& base_;
    std::vector<double> fp_, fpp_;
};

inline std::vector<cplx> dense_multipliers(const PeriodMap& pm)
{
    const int D = pm.dim();
    Eigen::MatrixXd Mono(D, D);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(D);
    for (int c = 0; c < D; ++c) {
        e[c] = 1.0;
        Mono.col(c) = pm.apply(e);
        e[c] = 0.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(Mono, false);
    if (es.info() != Eigen::Success) throw numerical_error("floquet: eigensolver failed");
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + D);
    return ev;
}

// Orthogonal iteration with Rayleigh-Ritz for the leading multipliers.
inline std::vector<cplx> leading_multipliers(const PeriodMap& pm, int n_want)
{
    const int D = pm.dim();
    const int q = std::min(D, n_want + 6);
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(D, q);
    for (int c = 0; c < q; ++c)
        for (int r = 0; r < D; ++r) Q(r, c) = std::sin(0.7 * (r + 1) * (c + 1)) + (r % (c + 2) == 0 ? 1.0 : 0.0);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Q);
    Q = qr.householderQ() * Eigen::MatrixXd::Identity(D, q);
    std::vector<cplx> prev;
    for (int it = 0; it < 400; ++it) {
        Eigen::MatrixXd Z(D, q);
        for (int c = 0; c < q; ++c) Z.col(c) = pm.apply(Q.col(c));
        Eigen::MatrixXd Hm = Q.transpose() * Z;
        Eigen::HouseholderQR<Eigen::MatrixXd> qz(Z);
        Q = qz.householderQ() * Eigen::MatrixXd::Identity(D, q);
        Eigen::EigenSolver<Eigen::MatrixXd> es(Hm, false);
        std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + q);
        std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
        ev.resize(n_want);
        if (!prev.empty()) {
            double d = 0;
            for (int i = 0; i < n_want; ++i) d = std::max(d, std::abs(std::abs(ev[i]) - std::abs(prev[i])));
            if (d < 1e-10) return ev;
        }
        prev = ev;
    }
    return prev;
}

}  // namespace detail

// Multipliers of the period map linearized about a converged orbit.
inline FloquetReport floquet(const PeriodicOrbit& orbit, const ProblemScale& s, double b, const Nonlinearity& nl,
                             const FloquetOptions& opt = {})
{
    if (orbit.samples.empty()) throw domain_error("floquet: empty orbit");
    auto tr = integrate(s, orbit.lambda, b, nl, orbit_history(orbit, nl), s.p_k);
    detail::PeriodMap pm(s, orbit.lambda, b, nl, tr, orbit.N);

    FloquetReport rep;
    rep.dimension = pm.dim();
    rep.N = orbit.N;
    rep.dense = rep.dimension <= opt.dense_limit;
    rep.multipliers = rep.dense ? detail::dense_multipliers(pm) : detail::leading_multipliers(pm, opt.n_largest);
    std::sort(rep.multipliers.begin(), rep.multipliers.end(),
              [](cplx a, cplx c) { return std::abs(a) > std::abs(c); });

    rep.trivial_error = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rep.multipliers.size(); ++i) {
        double d = std::abs(rep.multipliers[i] - 1.0);
        if (d < rep.trivial_error) {
            rep.trivial_error = d;
            rep.trivial_index = static_cast<int>(i);
        }
    }
    for (std::size_t i = 0; i < rep.multipliers.size(); ++i)
        if (static_cast<int>(i) != rep.trivial_index && std::abs(rep.multipliers[i]) > 1.0 + opt.unstable_tol)
            ++rep.unstable_count;

    if (rep.trivial_error > opt.trivial_tol && orbit.amplitude > 0) {
        if (!opt.auto_refine) throw numerical_error("floquet: trivial multiplier not resolved");
        FloquetOptions o2 = opt;
        o2.auto_refine = false;
        OrbitOptions oo;
        oo.N = 2 * orbit.N;
        return floquet(find_orbit(s, orbit.lambda, orbit.b, nl, oo), s, b, nl, o2);
    }
    return rep;
}

// Equilibrium as a degenerate orbit, for linearized-flow checks.
inline PeriodicOrbit equilibrium_orbit(const ProblemScale& s, double lambda, double b, int N = 64)
{
    PeriodicOrbit o;
    o.scale = s;
    o.lambda = lambda;
    o.b = b;
    o.N = N;
    o.h = DelayGrid(s, N).h;
    o.period = s.p_k;
    o.samples.assign(4 * N, 0.0);
    return o;
}

}  // namespace delaylab

#endif

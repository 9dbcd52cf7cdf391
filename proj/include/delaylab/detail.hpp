#ifndef DELAYLAB_DETAIL_HPP
#define DELAYLAB_DETAIL_HPP

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace delaylab {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double half_pi = std::numbers::pi / 2;

// Input outside the mathematical domain of an operation.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to converge or certify its result.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// (-1)^n for integer n.
constexpr int sign_pow(std::int64_t n) { return (n % 2 == 0) ? 1 : -1; }

enum class Branch { plus, minus };

inline const char* to_string(Branch b) { return b == Branch::plus ? "+" : "-"; }

namespace detail {

// Root of f in [a, b] with f(a), f(b) of opposite sign (TOMS 748).
template <class F>
double bracket_root(F&& f, double a, double b, double fa, double fb)
{
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0)) throw numerical_error("bracket_root: no sign change");
    boost::uintmax_t iters = 200;
    auto tol = [](double x, double y) { return std::abs(x - y) <= 4e-16 * std::max(1.0, std::abs(x)); };
    auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
    return 0.5 * (r.first + r.second);
}

template <class F>
double bracket_root(F&& f, double a, double b)
{
    return bracket_root(f, a, b, f(a), f(b));
}

// Reduce x into [lo, lo + 2pi).
inline double wrap_2pi(double x, double lo)
{
    double y = std::fmod(x - lo, 2 * pi);
    if (y < 0) y += 2 * pi;
    if (y >= 2 * pi) y -= 2 * pi;
    return lo + y;
}

}  // namespace detail
}  // namespace delaylab

#endif

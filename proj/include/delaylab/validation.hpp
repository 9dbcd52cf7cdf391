#ifndef DELAYLAB_VALIDATION_HPP
#define DELAYLAB_VALIDATION_HPP

// Numeric-versus-series comparisons and their fitted convergence orders.

#include "delaylab/asymptotics.hpp"
#include "delaylab/hashing.hpp"
#include "delaylab/twoscale.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace delaylab {

struct SeriesSample {
    double h = 0;        // eps or delta
    int label = 0;       // k or m
    double numeric = 0;
    double series = 0;
    double residual() const { return std::abs(numeric - series); }
};

struct OrderReport {
    std::vector<SeriesSample> samples;
    std::vector<int> missing;  // labels where the numeric value does not exist
    double order = std::numeric_limits<double>::quiet_NaN();

    bool complete() const { return missing.empty() && samples.size() >= 3; }
    void fit()
    {
        if (samples.size() < 3) return;
        std::vector<std::pair<double, double>> pts;
        for (auto& s : samples) pts.push_back({s.h, s.residual()});
        order = order_fit(pts);
    }
};

// B of the Hopf point (m, j, branch) against its two-term eps series.
struct HopfSeriesReport {
    int m = 0;
    int j = 1;
    Branch branch = Branch::minus;
    OrderReport B;
};

// Points whose plus coefficient vanishes are the excluded value B = 0 and
// carry no series content; they are skipped.
inline std::vector<HopfSeriesReport> hopf_series_orders(const std::vector<int>& ms, const std::vector<int>& ks)
{
    std::vector<ProblemScale> scales;
    for (int k : ks) scales.push_back(make_scale(k));
    std::vector<HopfSeriesReport> out;
    for (int m : ms) {
        if (m < 1) throw domain_error("hopf_series_orders: m >= 1");
        std::vector<std::vector<HopfPoint>> pts;
        for (auto& s : scales) pts.push_back(hopf_points(s, m));
        int jm = (m + 1) / 2;
        for (int j = 1; j <= jm + 1; ++j)
            for (Branch br : {Branch::minus, Branch::plus}) {
                ResonanceIndex r(m, j);
                if (br == Branch::plus && r.alpha_plus() == 0.0) continue;
                HopfSeriesReport rep{m, j, br, {}};
                for (std::size_t i = 0; i < scales.size(); ++i) {
                    auto* p = find_point(pts[i], m, j, br);
                    if (!p) {
                        rep.B.missing.push_back(scales[i].k);
                        continue;
                    }
                    double ser = eps_expand(m, j, br, scales[i].eps, scales[i].parity() == 0).B;
                    rep.B.samples.push_back({scales[i].eps, scales[i].k, p->B, ser});
                }
                rep.B.fit();
                out.push_back(rep);
            }
    }
    return out;
}

struct BoundaryOrderReport {
    OrderReport lower;
    OrderReport upper;
};

// Scaled boundaries 2 eps B+(0,1) and 2 eps B-(1,1) against their series.
inline BoundaryOrderReport boundary_orders(const std::vector<int>& ks)
{
    BoundaryOrderReport r;
    for (int k : ks) {
        auto s = make_scale(k);
        auto be = boundary_expansion(s);
        auto p0 = hopf_points(s, 0);
        auto p1 = hopf_points(s, 1);
        if (auto* p = find_point(p0, 0, 1, Branch::plus))
            r.lower.samples.push_back({s.eps, k, 2.0 * s.eps * p->B, be.b_lower});
        else
            r.lower.missing.push_back(k);
        if (auto* p = find_point(p1, 1, 1, Branch::minus))
            r.upper.samples.push_back({s.eps, k, 2.0 * s.eps * p->B, be.b_upper});
        else
            r.upper.missing.push_back(k);
    }
    r.lower.fit();
    r.upper.fit();
    return r;
}

struct DeltaOrderReport {
    OrderReport Omega;  // Omega(delta, 0)
    OrderReport B_min;
};

inline DeltaOrderReport delta_orders(const std::vector<int>& ms)
{
    DeltaOrderReport r;
    for (int m : ms) {
        double d = resonance_delta(m);
        auto db = domain_bounds(m);
        r.Omega.samples.push_back({d, m, Omega_of_omega(m, 0.0, db), delta_expand(d, 0.0).Omega});
        r.B_min.samples.push_back({d, m, B_min_point(m).B, b_min_expansion(d)});
    }
    r.Omega.fit();
    r.B_min.fit();
    return r;
}

}  // namespace delaylab

#endif

#ifndef DELAYLAB_IO_HPP
#define DELAYLAB_IO_HPP

// JSON and CSV serialization of reports. Doubles are written with 17
// significant digits so every value round-trips exactly.

#include "delaylab/asymptotics.hpp"
#include "delaylab/dde.hpp"
#include "delaylab/hashing.hpp"
#include "delaylab/spectrum.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#ifndef DELAYLAB_BUILD_ID
#define DELAYLAB_BUILD_ID "unknown"
#endif

namespace delaylab::io {

using json = nlohmann::ordered_json;

inline const char* build_id() { return DELAYLAB_BUILD_ID; }

inline std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline json to_json(const ProblemScale& s)
{
    return {{"k", s.k}, {"omega_k", s.omega_k}, {"eps", s.eps}, {"lambda_k", s.lambda_k}, {"p_k", s.p_k}};
}

inline json to_json(const SpectrumReport& r)
{
    json roots = json::array();
    for (auto& e : r.roots) roots.push_back({{"re", e.mu.real()}, {"im", e.mu.imag()}, {"residual", e.residual}});
    return {{"k", r.scale.k},
            {"B", r.B},
            {"b", 2.0 * r.scale.eps * r.B},
            {"E", r.E},
            {"winding", r.winding},
            {"winding_residual", r.winding_residual},
            {"contour", {{"eta", r.contour.eta}, {"r_real", r.contour.r_real}, {"r_imag", r.contour.r_imag}}},
            {"roots_upper_half", roots}};
}

inline json to_json(const HopfPoint& p)
{
    return {{"k", p.k},
            {"m", p.m},
            {"j", p.j},
            {"branch", to_string(p.branch)},
            {"omega", p.omega},
            {"Omega", p.Omega},
            {"omega_tilde", p.omega_tilde},
            {"B", p.B},
            {"b", 2.0 * p.eps * p.B},
            {"crossing_sign", p.crossing_sign},
            {"multiple", p.multiple},
            {"tangent", p.tangent}};
}

inline json to_json(const InstabilityInterval& iv)
{
    auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
    const char* rel = iv.gap_to_next > 0 ? "gap" : iv.gap_to_next < 0 ? "overlap" : "unknown";
    return {{"m", iv.m}, {"j", iv.j}, {"B_minus", num(iv.B_minus)}, {"B_plus", num(iv.B_plus)}, {"next", rel}};
}

inline json to_json(const PyragasInterval& p)
{
    json ineq = json::array();
    for (auto& c : p.inequalities) ineq.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    return {{"k", p.scale.k},
            {"eps", p.scale.eps},
            {"B_lower", p.B_lower},
            {"B_upper", p.B_upper},
            {"b_lower", p.b_lower},
            {"b_upper", p.b_upper},
            {"lower_from_hopf", p.lower_from_hopf},
            {"upper_from_hopf", p.upper_from_hopf},
            {"verified", p.verified},
            {"E_mid", p.E_mid},
            {"E_below", p.E_below},
            {"E_above", p.E_above},
            {"inequalities", ineq}};
}

inline json to_json(const PeriodicOrbit& o)
{
    return {{"k", o.scale.k},
            {"lambda", o.lambda},
            {"b", std::isinf(o.b) ? json("inf") : json(o.b)},
            {"N", o.N},
            {"period", o.period},
            {"amplitude", o.amplitude},
            {"symmetry_residual", o.symmetry_residual},
            {"noninvasive_residual", o.noninvasive_residual},
            {"half_closure", o.half_closure},
            {"full_closure", o.full_closure},
            {"bvp_residual", o.bvp_residual},
            {"iterations", o.iterations}};
}

inline json to_json(const FloquetReport& f, int keep = 12)
{
    json mult = json::array();
    for (std::size_t i = 0; i < f.multipliers.size() && static_cast<int>(i) < keep; ++i)
        mult.push_back({{"re", f.multipliers[i].real()},
                        {"im", f.multipliers[i].imag()},
                        {"abs", std::abs(f.multipliers[i])}});
    return {{"dimension", f.dimension},
            {"N", f.N},
            {"dense", f.dense},
            {"trivial_error", f.trivial_error},
            {"unstable_count", f.unstable_count},
            {"leading_multipliers", mult}};
}

// Wraps results with the build identifier and the configuration used.
inline json envelope(const std::string& command, const json& config, const json& results)
{
    return {{"command", command}, {"build", build_id()}, {"config", config}, {"results", results}};
}

class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header, const json& config) : os_(os)
    {
        os_ << "# build: " << build_id() << '\n';
        os_ << "# config: " << config.dump() << '\n';
        for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
        os_ << '\n';
        width_ = header.size();
    }

    CsvWriter& cell(double v) { return raw(fmt(v)); }
    CsvWriter& cell(int v) { return raw(std::to_string(v)); }
    CsvWriter& cell(const std::string& v) { return raw(v); }
    CsvWriter& cell(const char* v) { return raw(v); }

    void end()
    {
        if (col_ != width_) throw std::logic_error("CsvWriter: row width mismatch");
        os_ << '\n';
        col_ = 0;
    }

private:
    CsvWriter& raw(const std::string& s)
    {
        os_ << (col_ ? "," : "") << s;
        ++col_;
        return *this;
    }

    std::ostream& os_;
    std::size_t width_ = 0;
    std::size_t col_ = 0;
};

}  // namespace delaylab::io

#endif

// delaylab command line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 numerical failure.

#include "delaylab/delaylab.hpp"
#include "delaylab/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace delaylab;
using io::json;

namespace {

enum Exit { ok = 0, verification = 1, usage = 2, numerical = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int default_jobs()
{
    if (const char* env = std::getenv("DELAYLAB_JOBS")) {
        try {
            int j = std::stoi(env);
            if (j > 0) return j;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// fn(i) for i < n on a worker pool; results kept in input order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int jobs, F&& fn)
{
    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    int w = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    for (int t = 1; t < w; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

std::vector<int> parse_int_set(const std::string& spec)
{
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string tok;
    try {
        while (std::getline(ss, tok, ',')) {
            auto dots = tok.find("..");
            if (dots == std::string::npos) {
                out.push_back(std::stoi(tok));
            } else {
                int a = std::stoi(tok.substr(0, dots)), b = std::stoi(tok.substr(dots + 2));
                if (b < a) throw UsageError("empty range: " + tok);
                for (int i = a; i <= b; ++i) out.push_back(i);
            }
        }
    } catch (const std::invalid_argument&) {
        throw UsageError("malformed integer set: " + spec);
    } catch (const std::out_of_range&) {
        throw UsageError("malformed integer set: " + spec);
    }
    if (out.empty()) throw UsageError("empty integer set: " + spec);
    return out;
}

std::vector<double> parse_grid(const std::string& spec)
{
    double a, b;
    long n;
    char c1, c2;
    std::stringstream ss(spec);
    if (!(ss >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 || !ss.eof())
        throw UsageError("grid must read a:b:n with n >= 1, got " + spec);
    std::vector<double> g(n);
    for (long i = 0; i < n; ++i) g[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return g;
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct Common {
    std::string out;
    std::string format = "json";
    int jobs = default_jobs();
    unsigned long long seed = 1;
};

void add_common(CLI::App* sc, Common& c)
{
    sc->add_option("--out", c.out, "output file (default stdout)");
    sc->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sc->add_option("--jobs", c.jobs, "worker threads (default DELAYLAB_JOBS)")->check(CLI::PositiveNumber);
    sc->add_option("--seed", c.seed, "random seed");
}

json common_config(const Common& c)
{
    return {{"format", c.format}, {"seed", c.seed}};
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
    int k = -1;
    std::optional<double> B;
    std::string grid;
    bool roots = true;
    double eta = 1e-6;
};

int cmd_spectrum(const SpectrumArgs& a, const Common& c)
{
    std::vector<double> Bs;
    if (a.B && !a.grid.empty()) throw UsageError("give either --B or --B-grid");
    if (a.B) Bs.push_back(*a.B);
    else if (!a.grid.empty()) Bs = parse_grid(a.grid);
    else throw UsageError("one of --B or --B-grid is required");
    for (double B : Bs)
        if (B == 0.0 || !std::isfinite(B)) throw UsageError("B must be finite and nonzero");
    auto s = make_scale(a.k);
    SpectrumOptions so;
    so.eta = a.eta;
    so.locate_roots = a.roots;
    auto reps = parallel_map<SpectrumReport>(Bs.size(), c.jobs, [&](std::size_t i) { return count_unstable(s, Bs[i], so); });

    json cfg = common_config(c);
    cfg.update({{"k", a.k}, {"eta", a.eta}, {"roots", a.roots}});
    if (a.B) cfg["B"] = *a.B;
    else cfg["B_grid"] = a.grid;
    Output out(c.out);
    if (c.format == "json") {
        json arr = json::array();
        for (auto& r : reps) arr.push_back(io::to_json(r));
        out.stream() << io::envelope("spectrum", cfg, arr).dump(2) << '\n';
    } else {
        io::CsvWriter w(out.stream(), {"k", "B", "b", "E", "winding", "winding_residual", "n_roots"}, cfg);
        for (auto& r : reps)
            w.cell(a.k).cell(r.B).cell(2 * s.eps * r.B).cell(r.E).cell(r.winding).cell(r.winding_residual)
                .cell(static_cast<int>(r.roots.size())).end();
    }
    return ok;
}

// -------------------------------------------------------------------- hopf

struct HopfArgs {
    int k = -1;
    std::string m = "0..3";
    bool intervals = false;
};

int cmd_hopf(const HopfArgs& a, const Common& c)
{
    auto s = make_scale(a.k);
    auto ms = parse_int_set(a.m);
    for (int m : ms)
        if (m < 0) throw UsageError("m must be nonnegative");
    auto per_m = parallel_map<std::vector<HopfPoint>>(ms.size(), c.jobs, [&](std::size_t i) { return hopf_points(s, ms[i]); });
    for (auto& v : per_m)
        std::stable_sort(v.begin(), v.end(), [](const HopfPoint& x, const HopfPoint& y) {
            if (x.branch != y.branch) return x.branch == Branch::plus;
            return x.B < y.B;
        });

    json cfg = common_config(c);
    cfg.update({{"k", a.k}, {"m", a.m}, {"intervals", a.intervals}});
    Output out(c.out);
    if (c.format == "json") {
        json res = json::array();
        for (std::size_t i = 0; i < ms.size(); ++i) {
            json pts = json::array(), ivs = json::array();
            for (auto& p : per_m[i]) pts.push_back(io::to_json(p));
            if (ms[i] >= 1)
                for (auto& iv : instability_intervals(per_m[i], ms[i])) ivs.push_back(io::to_json(iv));
            res.push_back({{"m", ms[i]}, {"points", pts}, {"intervals", ivs}});
        }
        out.stream() << io::envelope("hopf", cfg, res).dump(2) << '\n';
    } else if (a.intervals) {
        io::CsvWriter w(out.stream(), {"k", "m", "j", "B_minus", "B_plus", "next"}, cfg);
        for (std::size_t i = 0; i < ms.size(); ++i) {
            if (ms[i] < 1) continue;
            for (auto& iv : instability_intervals(per_m[i], ms[i]))
                w.cell(a.k).cell(iv.m).cell(iv.j).cell(iv.B_minus).cell(iv.B_plus)
                    .cell(iv.gap_to_next > 0 ? "gap" : iv.gap_to_next < 0 ? "overlap" : "unknown").end();
        }
    } else {
        io::CsvWriter w(out.stream(),
                        {"k", "m", "j", "branch", "omega", "Omega", "omega_tilde", "B", "b", "crossing_sign", "multiple",
                         "tangent"},
                        cfg);
        for (auto& v : per_m)
            for (auto& p : v)
                w.cell(p.k).cell(p.m).cell(p.j).cell(to_string(p.branch)).cell(p.omega).cell(p.Omega)
                    .cell(p.omega_tilde).cell(p.B).cell(2 * p.eps * p.B).cell(p.crossing_sign)
                    .cell(static_cast<int>(p.multiple)).cell(static_cast<int>(p.tangent)).end();
    }
    return ok;
}

// ------------------------------------------------------------------ curves

struct CurvesArgs {
    std::string m = "0..4";
    int n = 400;
    int k = -1;
};

int cmd_curves(const CurvesArgs& a, const Common& c)
{
    auto ms = parse_int_set(a.m);
    if (a.n < 1) throw UsageError("--n must be positive");
    json cfg = common_config(c);
    cfg.update({{"m", a.m}, {"n", a.n}, {"k", a.k}});

    struct Row {
        std::string kind;
        int m, j;
        double Omega, omega, B, D;
    };
    auto rows_of = [&](std::size_t i) {
        int m = ms[i];
        if (m < 0) throw UsageError("m must be nonnegative");
        std::vector<Row> rows;
        for (auto& cs : sample_curve(m, a.n, -1)) {
            rows.push_back({"curve+", m, 0, cs.Omega, cs.omega_plus, cs.B_plus, cs.D});
            rows.push_back({"curve-", m, 0, cs.Omega, cs.omega_minus, cs.B_minus, cs.D});
        }
        if (a.k >= 0) {
            // hashing line segments across the representative omega range
            auto s = make_scale(a.k);
            double lo = m == 0 ? -1.0 : domain_bounds(m).Omega_lower;
            double w0 = -half_pi, w1 = m == 0 ? 3 * half_pi : half_pi;
            for (int j = 1;; ++j) {
                double ap = ResonanceIndex(m, j).a() * pi;
                double W0 = s.eps * (w0 - ap), W1 = s.eps * (w1 - ap);
                if (W1 < lo) break;
                double sh = s.parity() == 0 ? pi : 0.0;
                rows.push_back({"line", m, j, W0, w0 + sh, std::nan(""), std::nan("")});
                rows.push_back({"line", m, j, W1, w1 + sh, std::nan(""), std::nan("")});
            }
        }
        return rows;
    };
    auto per_m = parallel_map<std::vector<Row>>(ms.size(), c.jobs, rows_of);
    Output out(c.out);
    if (c.format == "json") {
        json res = json::array();
        for (auto& v : per_m)
            for (auto& r : v) {
                auto num = [](double x) { return std::isnan(x) ? json(nullptr) : json(x); };
                res.push_back({{"kind", r.kind}, {"m", r.m}, {"j", r.j}, {"Omega", r.Omega}, {"omega", num(r.omega)},
                               {"B", num(r.B)}, {"D", num(r.D)}});
            }
        out.stream() << io::envelope("curves", cfg, res).dump(2) << '\n';
    } else {
        io::CsvWriter w(out.stream(), {"kind", "m", "j", "Omega", "omega", "B", "D"}, cfg);
        for (auto& v : per_m)
            for (auto& r : v) w.cell(r.kind).cell(r.m).cell(r.j).cell(r.Omega).cell(r.omega).cell(r.B).cell(r.D).end();
    }
    return ok;
}

// ----------------------------------------------------------------- pyragas

struct PyragasArgs {
    std::string k = "49";
    bool verify = true;
};

int cmd_pyragas(const PyragasArgs& a, const Common& c)
{
    auto ks = parse_int_set(a.k);
    for (int k : ks)
        if (k < 1) throw UsageError("pyragas needs k >= 1");
    PyragasOptions po;
    po.verify = a.verify;
    auto reps = parallel_map<PyragasInterval>(ks.size(), c.jobs, [&](std::size_t i) { return pyragas_interval(make_scale(ks[i]), po); });

    json cfg = common_config(c);
    cfg.update({{"k", a.k}, {"verify", a.verify}});
    bool all_ok = true;
    Output out(c.out);
    std::vector<json> rows;
    for (auto& r : reps) {
        auto be = boundary_expansion(r.scale);
        json j = io::to_json(r);
        j["b_lower_series"] = be.b_lower;
        j["b_upper_series"] = be.b_upper;
        j["b_lower_residual"] = std::abs(r.b_lower - be.b_lower);
        j["b_upper_residual"] = std::abs(r.b_upper - be.b_upper);
        all_ok = all_ok && r.inequalities_ok() && (!a.verify || r.verified);
        rows.push_back(j);
    }
    if (c.format == "json") {
        out.stream() << io::envelope("pyragas", cfg, rows).dump(2) << '\n';
    } else {
        io::CsvWriter w(out.stream(),
                        {"k", "eps", "b_lower", "b_upper", "b_lower_series", "b_upper_series", "E_mid", "E_below",
                         "E_above", "verified", "inequalities_ok"},
                        cfg);
        for (std::size_t i = 0; i < reps.size(); ++i) {
            auto& r = reps[i];
            w.cell(r.scale.k).cell(r.scale.eps).cell(r.b_lower).cell(r.b_upper)
                .cell(rows[i]["b_lower_series"].get<double>()).cell(rows[i]["b_upper_series"].get<double>())
                .cell(r.E_mid).cell(r.E_below).cell(r.E_above).cell(static_cast<int>(r.verified))
                .cell(static_cast<int>(r.inequalities_ok())).end();
        }
    }
    return all_ok ? ok : verification;
}

// -------------------------------------------------------------- expansions

struct ExpansionArgs {
    std::string check = "eps";
    std::string m;
    std::string k = "19,39,79";
};

json order_json(const OrderReport& r, double threshold)
{
    json s = json::array();
    for (auto& x : r.samples)
        s.push_back({{"h", x.h}, {"label", x.label}, {"numeric", x.numeric}, {"series", x.series},
                     {"residual", x.residual()}});
    bool pass = r.complete() && r.order >= threshold;
    return {{"samples", s},
            {"missing", r.missing},
            {"order", std::isnan(r.order) ? json(nullptr) : std::isinf(r.order) ? json("inf") : json(r.order)},
            {"threshold", threshold},
            {"pass", pass}};
}

int cmd_expansions(const ExpansionArgs& a, const Common& c)
{
    json cfg = common_config(c);
    struct Item {
        std::string quantity;
        const OrderReport* rep;
        double threshold;
    };
    std::vector<HopfSeriesReport> hopf;
    BoundaryOrderReport bnd;
    DeltaOrderReport del;
    std::vector<Item> items;
    std::vector<std::string> names;
    if (a.check == "eps") {
        auto ms = parse_int_set(a.m.empty() ? "1..3" : a.m);
        auto ks = parse_int_set(a.k);
        cfg.update({{"check", a.check}, {"m", a.m.empty() ? "1..3" : a.m}, {"k", a.k}});
        auto per_m = parallel_map<std::vector<HopfSeriesReport>>(ms.size(), c.jobs,
                                                                 [&](std::size_t i) { return hopf_series_orders({ms[i]}, ks); });
        for (auto& v : per_m) hopf.insert(hopf.end(), v.begin(), v.end());
        for (auto& h : hopf)
            items.push_back({"B(m=" + std::to_string(h.m) + ",j=" + std::to_string(h.j) + "," + to_string(h.branch) + ")",
                             &h.B, 2.7});
    } else if (a.check == "boundary") {
        cfg.update({{"check", a.check}, {"k", a.k}});
        bnd = boundary_orders(parse_int_set(a.k));
        items.push_back({"b_lower", &bnd.lower, 3.7});
        items.push_back({"b_upper", &bnd.upper, 3.7});
    } else if (a.check == "delta") {
        auto spec = a.m.empty() ? std::string("10,20,40") : a.m;
        cfg.update({{"check", a.check}, {"m", spec}});
        del = delta_orders(parse_int_set(spec));
        items.push_back({"Omega(delta,0)", &del.Omega, 2.7});
        items.push_back({"B_min(delta)", &del.B_min, 3.7});
    } else {
        throw UsageError("--check must be eps, delta or boundary");
    }

    bool all_ok = true;
    Output out(c.out);
    if (c.format == "json") {
        json res = json::array();
        for (auto& it : items) {
            json j = order_json(*it.rep, it.threshold);
            j["quantity"] = it.quantity;
            if (it.rep->complete()) all_ok = all_ok && j["pass"].get<bool>();
            res.push_back(j);
        }
        out.stream() << io::envelope("expansions", cfg, res).dump(2) << '\n';
    } else {
        io::CsvWriter w(out.stream(), {"quantity", "label", "h", "numeric", "series", "residual", "order"}, cfg);
        for (auto& it : items) {
            if (it.rep->complete()) all_ok = all_ok && it.rep->order >= it.threshold;
            for (auto& x : it.rep->samples)
                w.cell(it.quantity).cell(x.label).cell(x.h).cell(x.numeric).cell(x.series).cell(x.residual())
                    .cell(it.rep->order).end();
        }
    }
    return all_ok ? ok : verification;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    int k = 3;
    double lambda_offset = 0.05;
    std::string b = "inside";
    double periods = 50;
    int N = 64;
    double perturbation = 1e-6;
    std::string trajectory;
};

int cmd_simulate(const SimulateArgs& a, const Common& c)
{
    if (!(a.lambda_offset > 0)) throw UsageError("--lambda-offset must be positive");
    if (!(a.periods > 0)) throw UsageError("--periods must be positive");
    if (a.N < 1) throw UsageError("--N must be positive");
    auto s = make_scale(a.k);
    auto nl = Nonlinearity::sine();

    json cfg = common_config(c);
    cfg.update({{"k", a.k}, {"lambda_offset", a.lambda_offset}, {"b", a.b}, {"periods", a.periods}, {"N", a.N},
                {"perturbation", a.perturbation}});

    double b;
    json interval = nullptr;
    if (a.b == "inside" || a.b == "below" || a.b == "above") {
        if (a.k < 1) throw UsageError("relative --b needs k >= 1");
        PyragasOptions po;
        po.verify = false;
        auto pi_ = pyragas_interval(s, po);
        interval = {{"b_lower", pi_.b_lower}, {"b_upper", pi_.b_upper}};
        if (a.b == "inside") b = 0.5 * (pi_.b_lower + pi_.b_upper);
        else if (a.b == "below") b = 1.5 * pi_.b_lower;
        else b = 0.5 * pi_.b_upper;
    } else if (a.b == "inf") {
        b = std::numeric_limits<double>::infinity();
    } else {
        try {
            std::size_t pos;
            b = std::stod(a.b, &pos);
            if (pos != a.b.size()) throw std::invalid_argument(a.b);
        } catch (const std::exception&) {
            throw UsageError("--b must be inside, below, above, inf or a number");
        }
        if (b == 0.0) throw UsageError("b must be nonzero");
    }

    double lambda = s.lambda_k * (1.0 + a.lambda_offset);
    OrbitOptions oo;
    oo.N = a.N;
    auto orbit = find_orbit(s, lambda, b, nl, oo);
    auto fl = floquet(orbit, s, b, nl);

    // perturbed run from the orbit history
    auto hist = orbit_history(orbit, nl);
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> gauss(0.0, a.perturbation * orbit.amplitude);
    for (std::size_t i = 0; i < hist.x.size(); ++i) hist.x[i] += gauss(rng);
    auto tr = integrate(s, lambda, b, nl, hist, a.periods * s.p_k);
    int P = 4 * orbit.N;
    auto deviation = [&](std::size_t from, std::size_t to) {
        double d = 0;
        for (std::size_t i = from; i < to; ++i)
            d = std::max(d, std::abs(tr.x[i] - orbit.at(static_cast<long long>(i) - tr.L)));
        return d;
    };
    std::size_t n = tr.x.size();
    double d_first = deviation(tr.L, std::min(n, tr.L + static_cast<std::size_t>(P)));
    double d_last = deviation(n - std::min<std::size_t>(n - tr.L, P), n);

    json res = {{"scale", io::to_json(s)},
                {"b_used", std::isinf(b) ? json("inf") : json(b)},
                {"interval", interval},
                {"orbit", io::to_json(orbit)},
                {"floquet", io::to_json(fl)},
                {"perturbed_run", {{"first_period_deviation", d_first}, {"last_period_deviation", d_last}}}};

    if (!a.trajectory.empty()) {
        std::ofstream tf(a.trajectory);
        if (!tf) throw UsageError("cannot open trajectory file " + a.trajectory);
        io::CsvWriter w(tf, {"t", "x"}, cfg);
        for (std::size_t i = tr.L; i < n; ++i) w.cell(tr.t(i)).cell(tr.x[i]).end();
    }
    Output out(c.out);
    if (c.format == "json") {
        out.stream() << io::envelope("simulate", cfg, res).dump(2) << '\n';
    } else {
        io::CsvWriter w(out.stream(),
                        {"k", "lambda", "b", "amplitude", "symmetry_residual", "trivial_error", "unstable_count",
                         "first_period_deviation", "last_period_deviation"},
                        cfg);
        w.cell(a.k).cell(lambda).cell(b).cell(orbit.amplitude).cell(orbit.symmetry_residual).cell(fl.trivial_error)
            .cell(fl.unstable_count).cell(d_first).cell(d_last).end();
    }
    bool consistent = orbit.symmetry_residual < 1e-6 && fl.trivial_error < 1e-3;
    return consistent ? ok : verification;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"delaylab: delayed feedback stabilization toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(io::build_id()));

    Common c;

    SpectrumArgs sa;
    auto* sp = app.add_subcommand("spectrum", "unstable dimension by the argument principle");
    sp->add_option("--k", sa.k, "oscillation index")->required()->check(CLI::NonNegativeNumber);
    sp->add_option("--B", sa.B, "scaled control amplitude");
    sp->add_option("--B-grid", sa.grid, "grid a:b:n");
    sp->add_option("--eta", sa.eta, "contour offset from the imaginary axis")->check(CLI::PositiveNumber);
    sp->add_flag("!--no-roots", sa.roots, "skip root isolation");
    add_common(sp, c);

    HopfArgs ha;
    auto* hp = app.add_subcommand("hopf", "Hopf points on the hashing lines");
    hp->add_option("--k", ha.k, "oscillation index")->required()->check(CLI::NonNegativeNumber);
    hp->add_option("--m", ha.m, "resonance set, e.g. 0..4 or 1,3");
    hp->add_flag("--intervals", ha.intervals, "emit instability intervals (csv)");
    add_common(hp, c);

    CurvesArgs ca;
    auto* cv = app.add_subcommand("curves", "two-scale curves and hashing lines");
    cv->add_option("--m", ca.m, "resonance set");
    cv->add_option("--n", ca.n, "samples per curve");
    cv->add_option("--k", ca.k, "add hashing lines for this k")->check(CLI::NonNegativeNumber);
    add_common(cv, c);

    PyragasArgs pa;
    auto* py = app.add_subcommand("pyragas", "Pyragas interval and its certification");
    py->add_option("--k", pa.k, "k set, e.g. 49 or 19,39,79");
    py->add_flag("!--no-verify", pa.verify, "skip the unstable-dimension checks");
    add_common(py, c);

    ExpansionArgs ea;
    auto* ex = app.add_subcommand("expansions", "series versus numerics with fitted orders");
    ex->add_option("--check", ea.check, "eps, delta or boundary")->check(CLI::IsMember({"eps", "delta", "boundary"}));
    ex->add_option("--m", ea.m, "resonance set");
    ex->add_option("--k", ea.k, "k set");
    add_common(ex, c);

    SimulateArgs ma;
    auto* sm = app.add_subcommand("simulate", "symmetric orbit, Floquet multipliers and a perturbed run");
    sm->add_option("--k", ma.k, "oscillation index")->check(CLI::NonNegativeNumber);
    sm->add_option("--lambda-offset", ma.lambda_offset, "relative supercriticality");
    sm->add_option("--b", ma.b, "inside, below, above, inf or a number");
    sm->add_option("--periods", ma.periods, "length of the perturbed run");
    sm->add_option("--N", ma.N, "grid resolution per half period / 2");
    sm->add_option("--perturbation", ma.perturbation, "relative size of the history perturbation");
    sm->add_option("--trajectory", ma.trajectory, "write the perturbed run as csv");
    add_common(sm, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (*sp) return cmd_spectrum(sa, c);
        if (*hp) return cmd_hopf(ha, c);
        if (*cv) return cmd_curves(ca, c);
        if (*py) return cmd_pyragas(pa, c);
        if (*ex) return cmd_expansions(ea, c);
        if (*sm) return cmd_simulate(ma, c);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const delaylab::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const delaylab::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numerical;
    }
    return usage;
}

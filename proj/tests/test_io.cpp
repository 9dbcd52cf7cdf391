#include "delaylab/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

using namespace delaylab;

TEST(Io, SeventeenDigitRoundTrip)
{
    for (double v : {pi, -0.01636449069361721, 1e-300, 1.0 / 3.0, 6.02214076e23})
        EXPECT_EQ(std::strtod(io::fmt(v).c_str(), nullptr), v);
    io::json j = {{"x", 0.1}};
    EXPECT_EQ(io::json::parse(j.dump())["x"].get<double>(), 0.1);
}

TEST(Io, CsvLayout)
{
    std::ostringstream os;
    io::CsvWriter w(os, {"k", "B", "branch"}, {{"k", 5}});
    w.cell(5).cell(-0.25).cell("minus").end();
    EXPECT_THROW(w.cell(1).end(), std::logic_error);
    std::istringstream in(os.str());
    std::string l1, l2, l3, l4;
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    std::getline(in, l4);
    EXPECT_EQ(l1, std::string("# build: ") + io::build_id());
    EXPECT_EQ(l2, "# config: {\"k\":5}");
    EXPECT_EQ(l3, "k,B,branch");
    EXPECT_EQ(l4, "5,-0.25,minus");
}

TEST(Io, EnvelopeAndReports)
{
    auto e = io::envelope("spectrum", {{"k", 3}}, io::json::array());
    std::vector<std::string> keys;
    for (auto& [k, v] : e.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"command", "build", "config", "results"}));

    auto s = make_scale(3);
    auto r = io::to_json(count_unstable(s, -0.5));
    EXPECT_EQ(r["k"], 3);
    EXPECT_EQ(r["E"].get<int>(), count_unstable(s, -0.5).E);
    auto pts = hopf_points(s, 0);
    ASSERT_FALSE(pts.empty());
    auto h = io::to_json(pts[0]);
    EXPECT_EQ(h["branch"], to_string(pts[0].branch));
    EXPECT_DOUBLE_EQ(h["b"].get<double>(), 2 * s.eps * pts[0].B);
    InstabilityInterval iv;
    EXPECT_TRUE(io::to_json(iv)["B_minus"].is_null());
    EXPECT_EQ(io::to_json(iv)["next"], "unknown");
}

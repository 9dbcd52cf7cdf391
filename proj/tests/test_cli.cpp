#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    std::string cmd = std::string(DELAYLAB_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string f; std::getline(in, f, ',');) out.push_back(f);
    return out;
}

}  // namespace

TEST(Cli, SpectrumWeakControl)
{
    auto r = run("spectrum --k 5 --B -1e8");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["command"], "spectrum");
    EXPECT_TRUE(j["build"].is_string());
    EXPECT_EQ(j["config"]["k"], 5);
    EXPECT_EQ(j["results"][0]["E"], 5);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run("spectrum --k 3 --B 0").code, 2);
    EXPECT_EQ(run("spectrum --k 3").code, 2);
    EXPECT_EQ(run("spectrum --k 3 --B-grid 1:2").code, 2);
    EXPECT_EQ(run("nosuchcommand").code, 2);
    EXPECT_EQ(run("spectrum --k 3 --B -1 --format xml").code, 2);
}

TEST(Cli, SpectrumGrid)
{
    auto r = run("spectrum --k 10 --B-grid -0.2:-0.001:200 --no-roots --format csv --jobs 2");
    ASSERT_EQ(r.code, 0);
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 203u);
    EXPECT_EQ(ls[0].rfind("# build: ", 0), 0u);
    EXPECT_EQ(ls[1].rfind("# config: ", 0), 0u);
    EXPECT_EQ(ls[2], "k,B,b,E,winding,winding_residual,n_roots");
    EXPECT_EQ(split(ls[3])[1], "-0.20000000000000001");
}

TEST(Cli, DeterministicAcrossJobCounts)
{
    auto a = run("spectrum --k 7 --B-grid -0.5:-0.01:12 --jobs 1");
    auto b = run("spectrum --k 7 --B-grid -0.5:-0.01:12 --jobs 3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto c = run("hopf --k 19 --m 0..2 --jobs 1");
    auto d = run("hopf --k 19 --m 0..2 --jobs 2");
    EXPECT_EQ(c.out, d.out);
}

TEST(Cli, HopfCsvChainIncreasing)
{
    auto r = run("hopf --k 49 --m 0..4 --format csv");
    ASSERT_EQ(r.code, 0);
    auto ls = lines(r.out);
    ASSERT_GT(ls.size(), 3u);
    EXPECT_EQ(ls[2], "k,m,j,branch,omega,Omega,omega_tilde,B,b,crossing_sign,multiple,tangent");
    double prev = -1e300;
    int chain = 0;
    for (std::size_t i = 3; i < ls.size(); ++i) {
        auto f = split(ls[i]);
        ASSERT_EQ(f.size(), 12u);
        if (f[1] == "0" && f[3] == "+") {
            double B = std::stod(f[7]);
            EXPECT_GT(B, prev);
            prev = B;
            ++chain;
        }
    }
    EXPECT_EQ(chain, 24);
}

TEST(Cli, FirstGapAtFirstStrip)
{
    auto r = run("hopf --k 49 --m 1 --intervals --format csv");
    ASSERT_EQ(r.code, 0);
    auto ls = lines(r.out);
    ASSERT_GT(ls.size(), 4u);
    EXPECT_EQ(ls[2], "k,m,j,B_minus,B_plus,next");
    auto first = split(ls[3]);
    EXPECT_EQ(first[2], "1");
    EXPECT_EQ(first[5], "gap");
    EXPECT_EQ(split(ls[4])[5], "overlap");
}

TEST(Cli, PyragasAndExpansions)
{
    auto r = run("pyragas --k 49");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["results"][0]["verified"].get<bool>());
    EXPECT_NEAR(j["results"][0]["B_lower"].get<double>(), -0.01636449069361721, 1e-13);

    auto e = run("expansions --check boundary --k 19,39,79");
    ASSERT_EQ(e.code, 0);
    EXPECT_NE(e.out.find("order"), std::string::npos);
}

TEST(Cli, SimulateEmitsFloquet)
{
    auto r = run("simulate --k 0 --lambda-offset 0.1 --b inf --periods 5 --N 32");
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["command"], "simulate");
    EXPECT_EQ(j["results"]["floquet"]["unstable_count"], 0);
}

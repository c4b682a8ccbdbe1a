#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

/// Runs the CLI with the given argument string, capturing stdout and stderr separately.
Run run(const std::string& args) {
    const std::string err_file = "/tmp/qrdeg-cli-test-" + std::to_string(::getpid()) + ".err";
    const std::string cmd = std::string(QRDEG_CLI) + " " + args + " 2>" + err_file;
    Run r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = ::pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    if (FILE* e = std::fopen(err_file.c_str(), "r")) {
        while ((n = std::fread(buf.data(), 1, buf.size(), e)) > 0) r.err.append(buf.data(), n);
        std::fclose(e);
    }
    std::remove(err_file.c_str());
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::size_t columns(const std::string& line) { return std::size_t(std::count(line.begin(), line.end(), '\t')) + 1; }

json footer(const Run& r) {
    auto ls = lines(r.err);
    return ls.empty() ? json() : json::parse(ls.back(), nullptr, false);
}

/// Value of a key in the analyze key/value table.
std::string field(const std::string& out, const std::string& key) {
    for (const auto& l : lines(out))
        if (l.rfind(key + "\t", 0) == 0) return l.substr(key.size() + 1);
    return {};
}

} // namespace

TEST(Cli, AnalyzeSL27) {
    auto r = run("analyze --name sl2 --q 7");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(field(r.out, "order"), "336");
    EXPECT_EQ(field(r.out, "d0"), "3");
    EXPECT_EQ(field(r.out, "alpha"), "0.188859");
    EXPECT_EQ(field(r.out, "violations"), "0");
    auto f = footer(r);
    ASSERT_TRUE(f.is_object());
    EXPECT_EQ(f["status"], 0);
    EXPECT_TRUE(f.contains("elapsed_ms"));
}

TEST(Cli, AnalyzeJsonRoundTrips) {
    auto r = run("analyze --name M11 --json");
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j["order"], "7920");
    EXPECT_EQ(j["d0"], 10);
    EXPECT_EQ(json::parse(j.dump()), j);
    std::uint64_t sq = 0;
    for (auto d : j["degrees"]) sq += d.get<std::uint64_t>() * d.get<std::uint64_t>();
    EXPECT_EQ(sq, 7920u);
}

TEST(Cli, IdenticalInvocationsGiveIdenticalOutput) {
    for (const char* args : {"analyze --name A6", "tables --family psl --param-range 4..32 --d 2",
                             "verify --epsilon 1/5", "affine --builder sl2 --q 5 --check dual"}) {
        auto a = run(args), b = run(args);
        EXPECT_EQ(a.code, 0) << args;
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_FALSE(a.out.empty()) << args;
    }
}

TEST(Cli, TablesHaveFixedColumns) {
    auto r = run("tables --family sporadic");
    ASSERT_EQ(r.code, 0);
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 28u);
    for (const auto& l : ls) EXPECT_EQ(columns(l), 8u) << l;
    auto p = run("tables --family psl --param-range 4..64 --d 3");
    ASSERT_EQ(p.code, 0);
    for (const auto& l : lines(p.out)) EXPECT_EQ(columns(l), 8u) << l;
    auto j = run("tables --family psl --param-range 4..9 --d 2 --format json");
    ASSERT_EQ(j.code, 0);
    EXPECT_TRUE(json::parse(j.out).is_array());
}

TEST(Cli, VerifyAtOneThirdLeavesOnlyJ1) {
    auto r = run("verify --epsilon 1/3 --json");
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j["survivors"], json::array({"J1"}));
    EXPECT_TRUE(j["failures"].empty());
    EXPECT_FALSE(j["notes"].empty());
    auto t = run("verify --epsilon 1/5");
    ASSERT_EQ(t.code, 0);
    const auto header = lines(t.out).at(0);
    for (const auto& l : lines(t.out)) {
        if (l.empty()) break;
        EXPECT_EQ(columns(l), columns(header)) << l;
    }
}

TEST(Cli, EpsilonMustBeAFraction) {
    EXPECT_EQ(run("verify --epsilon 0.2").code, 2);
    EXPECT_EQ(run("verify --epsilon 1/0").code, 2);
    EXPECT_EQ(run("verify --epsilon 3/2").code, 2);
    EXPECT_EQ(run("verify --epsilon 1/1").code, 2);
    EXPECT_EQ(run("verify").code, 2);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("analyze --bogus").code, 2);
    EXPECT_EQ(run("analyze --name psl2 --q 6").code, 2);
    EXPECT_EQ(run("analyze --name nosuchgroup").code, 2);
    auto big = run("--max-order 100 analyze --name M12");
    EXPECT_EQ(big.code, 3);
    EXPECT_EQ(footer(big)["status"], 3);
    EXPECT_EQ(run("--max-degree 100 affine --builder sl2 --q 11 --check dual").code, 3);
    EXPECT_EQ(run("analyze --file /nonexistent/file.gens").code, 2);
}

TEST(Cli, IntegrityFailureExitsOne) {
    const std::string path = "/tmp/qrdeg-cli-bad-" + std::to_string(::getpid()) + ".gens";
    {
        FILE* f = std::fopen(path.c_str(), "w");
        std::fputs("# order 25\ndegree 4\n(1 2)\n(1 2 3 4)\n", f);
        std::fclose(f);
    }
    EXPECT_EQ(run("analyze --file " + path).code, 1);
    std::remove(path.c_str());
}

TEST(Cli, CertifyAndAffine) {
    auto c = run("certify --case cor13");
    ASSERT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("1.00031898"), std::string::npos);
    EXPECT_NE(c.out.find("2.84446876"), std::string::npos);
    auto a = run("affine --builder sl3_3 --check affsp --json");
    ASSERT_EQ(a.code, 0) << a.err;
    auto j = json::parse(a.out);
    EXPECT_EQ(j["d0_g"], 12);
    EXPECT_EQ(j["d0_k"], 12);
    EXPECT_EQ(run("certify --case psl2 --param 6").code, 2);
}

TEST(Cli, CacheRecheck) {
    ASSERT_EQ(run("verify --epsilon 1/5").code, 0);
    auto r = run("cache --recheck");
    EXPECT_EQ(r.code, 0) << r.out << r.err;
}

#include "qrdeg/cache.hpp"
#include "qrdeg/corpus.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace qrdeg;
namespace fs = std::filesystem;

namespace {

const std::string kManifest = std::string(QRDEG_DATA_DIR) + "/corpus.txt";

fs::path scratch_dir(const std::string& name) {
    auto d = fs::temp_directory_path() / ("qrdeg-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

int parse_error_line(const fs::path& manifest) {
    try {
        Corpus::load(manifest);
    } catch (const ParseError& e) {
        return e.line;
    }
    return -1;
}

/// Profiles of the whole bundled corpus, computed once for this test binary.
const std::vector<CorpusRow>& corpus_rows() {
    static const std::vector<CorpusRow> rows = [] {
        auto c = Corpus::load(kManifest);
        return compute_profiles(c, entry_names(c), nullptr);
    }();
    return rows;
}

} // namespace

TEST(Manifest, BundledEntriesBuildWithTheirExpectedOrders) {
    auto c = Corpus::load(kManifest);
    EXPECT_GE(c.entries().size(), 50u);
    for (const auto& e : c.entries()) {
        ASSERT_TRUE(e.expected_order) << e.name;
        Group g = c.build(e);
        EXPECT_EQ(g.order(), *e.expected_order) << e.name;
        EXPECT_LE(g.order(), 200000) << e.name;
    }
    EXPECT_TRUE(c.contains("J1"));
    EXPECT_THROW(c.find("nope"), InvalidInput);
}

TEST(Manifest, ParseErrorsCarryLineNumbers) {
    auto d = scratch_dir("manifest");
    write(d / "dup.txt", "# header\nA5 alternating 5 60\nA5 alternating 5 60\n");
    EXPECT_EQ(parse_error_line(d / "dup.txt"), 3);
    write(d / "cols.txt", "A5 alternating\n");
    EXPECT_EQ(parse_error_line(d / "cols.txt"), 1);
    write(d / "order.txt", "\nA5 alternating 5 sixty\n");
    EXPECT_EQ(parse_error_line(d / "order.txt"), 2);
    EXPECT_THROW(Corpus::load(d / "missing.txt"), InvalidInput);
    fs::remove_all(d);
}

TEST(Manifest, WrongExpectedOrderIsAnIntegrityError) {
    auto d = scratch_dir("integrity");
    write(d / "m.txt", "A5 alternating 5 61\nbad psl2 6 -\n");
    auto c = Corpus::load(d / "m.txt");
    EXPECT_THROW(c.build("A5"), IntegrityError);
    EXPECT_THROW(c.build("bad"), InvalidInput);
    fs::remove_all(d);
}

TEST(Manifest, IngestGeneratorFile) {
    auto d = scratch_dir("ingest");
    write(d / "s4.gens", "# order 24\ndegree 4\n(1 2)\n(1 2 3 4)\n");
    write(d / "lie.gens", "# order 25\ndegree 4\n(1 2)\n(1 2 3 4)\n");
    Corpus c;
    EXPECT_EQ(c.ingest(d / "s4.gens").name, "s4");
    EXPECT_EQ(c.build("s4").order(), 24);
    c.ingest(d / "lie.gens");
    EXPECT_THROW(c.build("lie"), IntegrityError);
    EXPECT_THROW(c.ingest(d / "s4.gens"), InvalidInput);
    fs::remove_all(d);
}

TEST(Builders, NamedKinds) {
    EXPECT_EQ(build_named("alternating", {"7"}).order(), 2520);
    EXPECT_EQ(build_named("psl2", {"11"}).order(), 660);
    EXPECT_EQ(build_named("sl2", {"9"}).order(), 720);
    EXPECT_EQ(build_named("psl", {"3", "3"}).order(), 5616);
    EXPECT_EQ(build_named("hq", {"4"}).order(), 16 * 60);
    EXPECT_THROW(build_named("psl2", {"6"}), InvalidInput);
    EXPECT_THROW(build_named("unknown", {}), InvalidInput);
}

TEST(Classification, OneFifth) {
    auto rep = classify_corpus(corpus_rows(), 1, 5);
    EXPECT_TRUE(rep.ok());
    EXPECT_TRUE(rep.failures.empty());
    bool affine_seen = false;
    for (const auto& r : rep.rows) {
        if (!r.survives) continue;
        ASSERT_TRUE(r.branch);
        EXPECT_TRUE(*r.branch == Branch::quasisimple || *r.branch == Branch::exception_a ||
                    *r.branch == Branch::exception_b)
            << r.name;
        EXPECT_TRUE(*r.profile.unique_maximal) << r.name;
        if (*r.branch == Branch::exception_a) affine_seen = true;
    }
    EXPECT_TRUE(affine_seen);
    EXPECT_TRUE(std::is_sorted(rep.rows.begin(), rep.rows.end(),
                               [](const CorpusRow& a, const CorpusRow& b) { return a.name < b.name; }));
}

TEST(Classification, ThreeFourteenthsAndOneThird) {
    auto rep = classify_corpus(corpus_rows(), 3, 14);
    EXPECT_TRUE(rep.ok());
    for (const auto& r : rep.rows)
        if (r.survives) {
            EXPECT_TRUE(*r.profile.is_quasisimple) << r.name;
        }
    auto third = classify_corpus(corpus_rows(), 1, 3);
    EXPECT_TRUE(third.ok());
    EXPECT_EQ(third.survivors(), std::vector<std::string>{"J1"});
    EXPECT_FALSE(third.notes.empty());
    EXPECT_THROW(classify_corpus(corpus_rows(), 1, 1), InvalidInput);
}

TEST(Classification, NonQuasisimpleSurvivorIsACounterexample) {
    QuasirandomProfile p;
    p.order = 3600;
    p.d0 = 3;
    p.is_perfect = true;
    p.is_quasisimple = false;
    p.unique_maximal = false;
    p.minimal_normal_orders = {60, 60};
    EXPECT_EQ(classify(p), Branch::counterexample);
    CorpusRow row;
    row.name = "fake";
    row.profile = p;
    row.profile.d0 = 60; // force survival at 1/5
    auto rep = classify_corpus({row}, 1, 5);
    EXPECT_FALSE(rep.ok());
}

TEST(Cache, RoundTripIsBitExact) {
    for (const auto& r : corpus_rows()) {
        auto line = serialize_profile(r.profile);
        EXPECT_EQ(serialize_profile(parse_profile(line)), line) << r.name;
    }
}

TEST(Cache, StoresReloadsAndInvalidatesMalformedRows) {
    auto d = scratch_dir("cache");
    const auto& rows = corpus_rows();
    {
        ProfileCache c(d);
        for (const auto& r : rows) c.put(r.profile);
        c.save();
    }
    ProfileCache c(d);
    EXPECT_EQ(c.size(), rows.size());
    EXPECT_TRUE(c.warnings().empty());
    const auto& p = rows[0].profile;
    EXPECT_TRUE(c.get(p.group_hash, p.order, p.perm_degree));
    EXPECT_FALSE(c.get(p.group_hash, p.order + 1, p.perm_degree));
    EXPECT_FALSE(c.get(p.group_hash, p.order, p.perm_degree + 1));

    // corrupt one line: a degree list that no longer square-sums to the order
    std::ifstream in(c.file());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto pos = text.find("\t1,");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 3, "\t2,");
    write(c.file(), text + "garbage line\n");
    ProfileCache broken(d);
    EXPECT_EQ(broken.size(), rows.size() - 1);
    EXPECT_EQ(broken.warnings().size(), 2u);
    fs::remove_all(d);
}

TEST(Cache, RecheckDetectsConsistentButWrongRows) {
    auto d = scratch_dir("recheck");
    auto corpus = Corpus::load(kManifest);
    ProfileCache c(d);
    std::map<std::uint64_t, std::function<QuasirandomProfile()>> fns;
    for (const auto& name : {"A5", "PSL2_7", "SL2_5"}) {
        auto g = std::make_shared<Group>(corpus.build(name));
        auto p = profile(*g);
        if (std::string(name) == "PSL2_7") p.is_simple = false; // internally consistent tampering
        c.put(p);
        fns[g->hash()] = [g] { return profile(*g); };
    }
    auto r = c.recheck(fns, 1, 1.0);
    EXPECT_EQ(r.sampled, 3u);
    EXPECT_EQ(r.mismatches, 1u);
    auto again = c.recheck(fns, 1, 1.0);
    EXPECT_EQ(again.mismatches, 0u);
    fs::remove_all(d);
}

TEST(Cache, ParallelAndSerialProfilesAgree) {
    auto corpus = Corpus::load(kManifest);
    std::vector<std::string> names{"A5", "A6", "PSL2_7", "SL2_7", "M11", "H5", "A5xA5"};
    auto serial = compute_profiles(corpus, names, nullptr, {}, 1);
    auto parallel = compute_profiles(corpus, names, nullptr, {}, 4);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t i = 0; i < names.size(); ++i)
        EXPECT_EQ(serialize_profile(serial[i].profile), serialize_profile(parallel[i].profile)) << names[i];
    auto d = scratch_dir("hits");
    ProfileCache cache(d);
    auto first = compute_profiles(corpus, names, &cache);
    EXPECT_EQ(cache.size(), names.size());
    auto second = compute_profiles(corpus, names, &cache);
    for (std::size_t i = 0; i < names.size(); ++i)
        EXPECT_EQ(serialize_profile(first[i].profile), serialize_profile(second[i].profile));
    fs::remove_all(d);
}

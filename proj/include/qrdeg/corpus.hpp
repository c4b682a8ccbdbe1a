#pragma once

#include "affine.hpp"
#include "genfile.hpp"
#include "lietab.hpp"
#include "normal.hpp"
#include "qdeg.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace qrdeg {

// ---- builders ----

/// Alt(n) from (1 2 3) and an n-cycle (n odd) or an (n-1)-cycle on 2..n (n even).
inline Group alternating_group(std::size_t n, GroupLimits limits = {}) {
    if (n < 3 || n > 12) throw InvalidInput("alternating(n) needs 3 <= n <= 12");
    std::vector<std::uint64_t> cyc;
    for (std::uint64_t i = (n % 2 ? 1 : 2); i <= n; ++i) cyc.push_back(i);
    return Group({Permutation::from_cycles(n, {{1, 2, 3}}), Permutation::from_cycles(n, {cyc})}, std::nullopt, limits);
}

/// Action on the points of projective space: vectors normalized to first nonzero coordinate 1.
inline std::vector<Permutation> projective_permutations(const MatrixGroup& k) {
    const Field& F = k.field;
    const std::uint64_t size = k.space_size();
    std::vector<std::int64_t> point_of(size, -1);
    std::vector<std::uint64_t> reps;
    for (std::uint64_t x = 1; x < size; ++x) {
        auto v = vec_from_index(F, x, k.dim);
        std::size_t lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] != 1) continue;
        point_of[x] = std::int64_t(reps.size());
        reps.push_back(x);
    }
    auto normalize = [&](std::vector<Field::Elem> v) {
        std::size_t lead = 0;
        while (v[lead] == 0) ++lead;
        auto s = F.inv(v[lead]);
        for (auto& c : v) c = F.mul(c, s);
        return std::uint64_t(point_of[vec_index(F, v)]);
    };
    std::vector<Permutation> out;
    for (const auto& g : k.generators) {
        std::vector<Point> img(reps.size());
        for (std::size_t i = 0; i < reps.size(); ++i)
            img[i] = Point(normalize(vec_mul(F, vec_from_index(F, reps[i], k.dim), g)));
        out.emplace_back(std::move(img));
    }
    return out;
}

/// SL_d(q) on the q^d - 1 nonzero vectors.
inline Group sl_group(std::size_t d, std::uint32_t q, GroupLimits limits = {}) {
    auto k = sl_matrices(d, q);
    auto lin = linear_permutations(k, false, std::uint64_t(1) << 20);
    std::vector<Permutation> gens;
    for (const auto& p : lin) {
        std::vector<Point> img(p.degree() - 1);
        for (Point x = 1; x < p.degree(); ++x) img[x - 1] = p[x] - 1;
        gens.emplace_back(std::move(img));
    }
    return Group(gens, std::nullopt, limits);
}

/// PSL_d(q) on the points of projective (d-1)-space.
inline Group psl_group(std::size_t d, std::uint32_t q, GroupLimits limits = {}) {
    return Group(projective_permutations(sl_matrices(d, q)), std::nullopt, limits);
}

/// F_q^2 : SL_2(q) on q^2 points.
inline Group hq_group(std::uint32_t q, GroupLimits limits = {}) {
    return affine_group(sl_matrices(2, q), 4096, limits).perm;
}

// ---- manifest ----

struct CorpusEntry {
    std::string name;
    std::string kind; // alternating | psl2 | psl | sl2 | sl | sl3_3_affine | hq | product | file
    std::vector<std::string> params;
    std::optional<BigInt> expected_order;
    std::set<std::string> tags;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

class Corpus {
public:
    Corpus() = default;
    explicit Corpus(std::filesystem::path base_dir) : base_(std::move(base_dir)) {}

    /// Manifest lines: `name kind params expected_order [tags]`; params comma-separated or `-`,
    /// expected_order an integer or `-`, tags comma-separated.
    static Corpus load(const std::filesystem::path& manifest) {
        std::ifstream in(manifest);
        if (!in) throw InvalidInput("cannot open corpus manifest " + manifest.string());
        Corpus c(manifest.parent_path());
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto t = detail::trim(line);
            if (t.empty() || t[0] == '#') continue;
            std::istringstream ls(t);
            std::vector<std::string> cols;
            std::string tok;
            while (ls >> tok) cols.push_back(tok);
            if (cols.size() < 4 || cols.size() > 5) throw ParseError(lineno, "expected 4 or 5 columns");
            CorpusEntry e;
            e.name = cols[0];
            e.kind = cols[1];
            if (cols[2] != "-") e.params = split(cols[2], ',');
            if (cols[3] != "-") {
                if (!std::all_of(cols[3].begin(), cols[3].end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
                    throw ParseError(lineno, "expected_order must be an integer or '-'");
                e.expected_order = BigInt(cols[3]);
            }
            if (cols.size() == 5)
                for (auto& s : split(cols[4], ',')) e.tags.insert(s);
            try {
                c.add(std::move(e));
            } catch (const InvalidInput& err) {
                throw ParseError(lineno, err.what());
            }
        }
        return c;
    }

    void add(CorpusEntry e) {
        if (index_.count(e.name)) throw InvalidInput("duplicate corpus entry '" + e.name + "'");
        index_[e.name] = entries_.size();
        entries_.push_back(std::move(e));
    }

    /// Registers a generator file; its `# order` header becomes the expected order.
    const CorpusEntry& ingest(const std::filesystem::path& path, std::string name = {}) {
        auto gf = read_generator_file(path.string()); // parse errors surface here
        CorpusEntry e;
        e.name = name.empty() ? path.stem().string() : std::move(name);
        e.kind = "file";
        e.params = {std::filesystem::absolute(path).string()};
        e.expected_order = gf.expected_order;
        add(std::move(e));
        return entries_.back();
    }

    const std::vector<CorpusEntry>& entries() const { return entries_; }
    const CorpusEntry& find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw InvalidInput("no corpus entry named '" + name + "'");
        return entries_[it->second];
    }
    bool contains(const std::string& name) const { return index_.count(name) > 0; }

    /// Builds and checks the order against the manifest.
    Group build(const CorpusEntry& e, GroupLimits limits = {}) const {
        Group g = build_unchecked(e, limits);
        if (e.expected_order && g.order() != *e.expected_order)
            throw IntegrityError(e.name + ": built order " + g.order().str() + " but expected " +
                                 e.expected_order->str());
        return g;
    }
    Group build(const std::string& name, GroupLimits limits = {}) const { return build(find(name), limits); }

private:
    std::filesystem::path base_;
    std::vector<CorpusEntry> entries_;
    std::map<std::string, std::size_t> index_;

    static std::uint64_t num(const CorpusEntry& e, std::size_t i) {
        if (i >= e.params.size()) throw InvalidInput(e.name + ": missing parameter");
        const auto& s = e.params[i];
        if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw InvalidInput(e.name + ": parameter '" + s + "' is not a positive integer");
        return std::stoull(s);
    }

    Group build_unchecked(const CorpusEntry& e, GroupLimits limits) const {
        const auto& k = e.kind;
        if (k == "alternating") return alternating_group(num(e, 0), limits);
        if (k == "psl2" || k == "sl2") {
            auto q = num(e, 0);
            if (!prime_power(q)) throw InvalidInput(e.name + ": q is not a prime power");
            if (k == "psl2" && q > 128) throw TooLarge("psl2 builder is limited to q <= 128");
            if (k == "sl2" && q > 64) throw TooLarge("sl2 builder is limited to q <= 64");
            return k == "psl2" ? psl_group(2, std::uint32_t(q), limits) : sl_group(2, std::uint32_t(q), limits);
        }
        if (k == "psl" || k == "sl") {
            auto d = num(e, 0), q = num(e, 1);
            if (!prime_power(q)) throw InvalidInput(e.name + ": q is not a prime power");
            return k == "psl" ? psl_group(d, std::uint32_t(q), limits) : sl_group(d, std::uint32_t(q), limits);
        }
        if (k == "sl3_3_affine") return affine_group(sl_matrices(3, 3), 4096, limits).perm;
        if (k == "hq") return hq_group(std::uint32_t(num(e, 0)), limits);
        if (k == "product") {
            if (e.params.size() < 2) throw InvalidInput(e.name + ": product needs two factors");
            Group g = build(e.params[0], limits);
            for (std::size_t i = 1; i < e.params.size(); ++i) g = direct_product(g, build(e.params[i], limits));
            return g;
        }
        if (k == "file") {
            if (e.params.empty()) throw InvalidInput(e.name + ": missing file path");
            std::filesystem::path p = e.params[0];
            if (p.is_relative()) p = base_ / p;
            auto gf = read_generator_file(p.string());
            Group g(gf.generators, std::nullopt, limits);
            if (gf.expected_order && g.order() != *gf.expected_order)
                throw IntegrityError(e.name + ": order " + g.order().str() + " contradicts the file header");
            return g;
        }
        throw InvalidInput(e.name + ": unknown builder kind '" + k + "'");
    }
};

/// Builds a group from a CLI-style name and parameter (`sl2` with q = 7, `alternating` with 6, ...).
inline Group build_named(const std::string& kind, const std::vector<std::string>& params, GroupLimits limits = {}) {
    CorpusEntry e;
    e.name = kind;
    e.kind = kind;
    e.params = params;
    Corpus c;
    c.add(e);
    return c.build(kind, limits);
}

// ---- classification ----

enum class Branch { quasisimple, exception_a, exception_b, counterexample, undecided };

inline const char* to_string(Branch b) {
    switch (b) {
    case Branch::quasisimple: return "quasisimple";
    case Branch::exception_a: return "F3^3:SL3(3)";
    case Branch::exception_b: return "F_q^4:Sp4(q)";
    case Branch::counterexample: return "COUNTEREXAMPLE";
    case Branch::undecided: return "undecided";
    }
    return "?";
}

/// Places a perfect 1/5-quasirandom group in one branch of the trichotomy. The affine
/// exceptions are matched by shape: a unique minimal normal subgroup of the stated order
/// and a quotient of the stated order.
inline Branch classify(const QuasirandomProfile& p) {
    if (!p.is_quasisimple) return Branch::undecided;
    if (*p.is_quasisimple) return Branch::quasisimple;
    if (p.minimal_normal_orders.size() == 1) {
        const std::uint64_t n = p.minimal_normal_orders[0];
        if (n == 27 && p.order == 151632) return Branch::exception_a;
        // q^4 with q = 2^f, f >= 6, quotient a perfect central extension of Sp4(q): the
        // quotient order is a multiple of |Sp4(q)|.
        for (std::uint64_t f = 6; f <= 15; ++f) {
            BigInt q = pow_big(BigInt(2), f);
            if (BigInt(n) == pow_big(q, 4) && (p.order / n) % sp4_order(q) == 0) return Branch::exception_b;
        }
    }
    return Branch::counterexample;
}

struct CorpusRow {
    std::string name;
    QuasirandomProfile profile;
    bool survives = false;
    std::optional<Branch> branch;
};

struct CorpusReport {
    std::uint64_t num = 0, den = 0;
    std::vector<CorpusRow> rows; // sorted by name
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    bool ok() const { return failures.empty(); }
    std::vector<std::string> survivors() const {
        std::vector<std::string> s;
        for (const auto& r : rows)
            if (r.survives) s.push_back(r.name);
        return s;
    }
};

/// Applies the eps-specific claims to already computed profiles.
inline CorpusReport classify_corpus(std::vector<CorpusRow> rows, std::uint64_t num, std::uint64_t den) {
    if (num == 0 || den == 0 || num >= den) throw InvalidInput("epsilon must lie strictly between 0 and 1");
    CorpusReport rep;
    rep.num = num;
    rep.den = den;
    std::sort(rows.begin(), rows.end(), [](const CorpusRow& a, const CorpusRow& b) { return a.name < b.name; });
    const BigRational eps(num, den);
    for (auto& r : rows) {
        const auto& p = r.profile;
        r.survives = p.is_perfect && is_eps_quasirandom(p, num, den);
        if (!r.survives) continue;
        if (eps >= BigRational(1, 5)) {
            r.branch = classify(p);
            if (*r.branch == Branch::counterexample || *r.branch == Branch::undecided)
                rep.failures.push_back(r.name + ": not quasisimple and no affine exception matches");
            if (!p.unique_maximal || !*p.unique_maximal)
                rep.failures.push_back(r.name + ": no unique maximal normal subgroup");
        }
        if (eps >= BigRational(3, 14) && (!p.is_quasisimple || !*p.is_quasisimple))
            rep.failures.push_back(r.name + ": survives 3/14 but is not quasisimple");
        if (eps >= BigRational(1, 3) && !(p.order == 175560 && p.d0 == 56))
            rep.failures.push_back(r.name + ": survives 1/3 but is not J1");
    }
    if (eps >= BigRational(1, 3)) rep.notes.push_back("O'N (order 460815505920) is beyond desk scale: untestable here");
    if (eps < BigRational(1, 5)) rep.notes.push_back("below 1/5 the trichotomy is not asserted");
    rep.rows = std::move(rows);
    return rep;
}

} // namespace qrdeg

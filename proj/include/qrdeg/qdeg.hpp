#pragma once

#include "chartab.hpp"
#include "normal.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qrdeg {

/// Everything computed once per group: classes, class constants, degrees, normal structure.
struct GroupAnalysis {
    ConjugacyData classes;
    ClassConstants constants;
    DegreeMultiset degrees;
    std::optional<NormalStructure> structure;
};

inline GroupAnalysis analyze_group(const Group& g, bool with_structure = true, std::size_t node_budget = 512) {
    GroupAnalysis a;
    a.classes = conjugacy_classes(g);
    a.constants = class_constants(g, a.classes);
    a.degrees = dixon_degrees(a.classes, a.constants, g.size());
    if (with_structure) a.structure = structure_audit(g, a.classes, a.constants, node_budget);
    return a;
}

struct QuasirandomProfile {
    BigInt order;
    std::uint64_t d0 = 0;
    std::size_t k = 0;
    double alpha = 0; // display only; exact tests never read it
    bool is_perfect = false;
    std::optional<bool> is_quasisimple;
    std::uint64_t group_hash = 0;
    std::vector<std::uint64_t> degrees;
    // audit shape used by the corpus classification
    std::size_t perm_degree = 0;
    std::optional<bool> is_simple, unique_maximal;
    std::vector<std::uint64_t> minimal_normal_orders;
    bool truncated = false;
};

inline double alpha_of(const BigInt& order, const BigInt& d0) {
    if (order < 2) throw InvalidInput("alpha of the trivial group is undefined");
    return ln_big(d0) / ln_big(order);
}

inline QuasirandomProfile profile_from(const Group& g, const GroupAnalysis& a) {
    QuasirandomProfile p;
    p.order = g.order();
    p.d0 = a.degrees.d0();
    p.k = a.degrees.k;
    p.alpha = alpha_of(p.order, p.d0);
    p.is_perfect = a.degrees.perfect();
    p.group_hash = g.hash();
    p.degrees = a.degrees.degrees;
    p.perm_degree = g.degree();
    if (a.structure) {
        const auto& s = *a.structure;
        if (s.is_perfect != p.is_perfect) throw IntegrityError("derived subgroup and linear characters disagree");
        p.is_quasisimple = s.is_quasisimple;
        p.is_simple = s.is_simple;
        p.unique_maximal = s.has_unique_maximal_normal;
        for (auto i : s.minimal) p.minimal_normal_orders.push_back(s.orders[i]);
        p.truncated = s.truncated;
    }
    return p;
}

inline QuasirandomProfile profile(const Group& g) { return profile_from(g, analyze_group(g)); }

/// Exact test d0^den >= order^num.
inline bool is_eps_quasirandom(const BigInt& order, std::uint64_t d0, std::uint64_t num, std::uint64_t den) {
    if (num == 0 || den == 0 || num >= den) throw InvalidInput("epsilon must lie strictly between 0 and 1");
    return pow_big(BigInt(d0), den) >= pow_big(order, num);
}
inline bool is_eps_quasirandom(const QuasirandomProfile& p, std::uint64_t num, std::uint64_t den) {
    return is_eps_quasirandom(p.order, p.d0, num, den);
}

/// One verified inequality, serialized as {check, group_hash, verdict, float_lhs, float_rhs, exact}.
struct CheckResult {
    std::string check;
    std::string subject;
    std::uint64_t group_hash = 0;
    std::string verdict; // pass | fail | indeterminate
    double float_lhs = 0, float_rhs = 0;
    std::optional<bool> exact;
    bool required = true; // informational entries do not count as violations
    std::string detail;

    bool violated() const { return required && verdict == "fail"; }
};

inline CheckResult make_check(std::string name, std::string subject, std::uint64_t hash, bool pass, double lhs,
                              double rhs, std::optional<bool> exact, std::string detail = {}) {
    CheckResult c;
    c.check = std::move(name);
    c.subject = std::move(subject);
    c.group_hash = hash;
    c.verdict = pass ? "pass" : "fail";
    c.float_lhs = lhs;
    c.float_rhs = rhs;
    c.exact = exact;
    c.detail = std::move(detail);
    return c;
}

inline std::string verdict_from(Verdict v, bool pass_if_less, bool pass_if_equal, bool pass_if_greater) {
    switch (v) {
    case Verdict::Less: return pass_if_less ? "pass" : "fail";
    case Verdict::Equal: return pass_if_equal ? "pass" : "fail";
    case Verdict::Greater: return pass_if_greater ? "pass" : "fail";
    default: return "indeterminate";
    }
}

/// |N| <= d0(G/N)^(1/alpha(G)) / |G/N|.
///
/// With alpha(G) itself the bound is equivalent to d0(G/N) >= d0(G), which is decided
/// exactly. With a rational lower bound eps = a/b on alpha(G) the exact form is
/// |G|^a <= d0(G/N)^b.
struct EqnReport {
    BigInt n_order, quotient_order;
    std::uint64_t d0_g = 0, d0_quotient = 0;
    double float_lhs = 0, float_rhs = 0;
    bool exact = false;
    std::optional<bool> exact_eps;
    CheckResult check;
};

inline EqnReport eqn_from(const BigInt& order_g, std::uint64_t d0_g, const BigInt& order_n, const BigInt& order_q,
                          std::uint64_t d0_q, std::optional<std::pair<std::uint64_t, std::uint64_t>> eps,
                          std::uint64_t hash = 0) {
    EqnReport r;
    r.n_order = order_n;
    r.quotient_order = order_q;
    r.d0_g = d0_g;
    r.d0_quotient = d0_q;
    r.float_lhs = order_n.convert_to<double>();
    if (d0_g <= 1) {
        r.float_rhs = INFINITY;
        r.exact = true;
    } else {
        double inv_alpha = ln_big(order_g) / std::log(double(d0_g));
        r.float_rhs = std::exp(inv_alpha * std::log(double(d0_q)) - ln_big(order_q));
        r.exact = d0_q >= d0_g;
    }
    if (eps) r.exact_eps = pow_big(order_g, eps->first) <= pow_big(BigInt(d0_q), eps->second);
    r.check = make_check("eqN", "", hash, r.exact, r.float_lhs, r.float_rhs, r.exact);
    return r;
}

inline EqnReport eqn_check(const Group& g, const Group& n_sub,
                           std::optional<std::pair<std::uint64_t, std::uint64_t>> eps = std::nullopt) {
    if (n_sub.order() == g.order()) throw InvalidInput("N must be a proper normal subgroup");
    Group q = quotient(g, n_sub);
    auto dg = d0(g);
    auto dq = d0(q);
    return eqn_from(g.order(), dg, n_sub.order(), q.order(), dq, eps, g.hash());
}

/// The eqN upper bound d0(L)^den / |L| for a quotient L known only from table data,
/// under the hypothesis alpha(G) >= 1/den.
inline BigRational eqn_table_bound(std::uint64_t d0_l, const BigInt& order_l, std::uint64_t den) {
    return BigRational(pow_big(BigInt(d0_l), den), order_l);
}

struct LemmaReport {
    std::vector<CheckResult> checks;
    bool truncated = false;
    std::size_t violations() const {
        std::size_t v = 0;
        for (const auto& c : checks)
            if (c.violated()) ++v;
        return v;
    }
};

/// Quotient-independent bounds: class sizes, counting remark, representation growth.
inline void local_checks(const Group& g, const GroupAnalysis& a, LemmaReport& rep, const std::string& name) {
    const auto h = g.hash();
    const BigInt order = g.order();
    const std::uint64_t d0v = a.degrees.d0();
    const bool perfect = a.degrees.perfect();
    const BigInt d0sq = BigInt(d0v) * d0v;
    const std::size_t k = a.degrees.k;

    rep.checks.push_back(make_check("sum_of_squares", name, h, a.degrees.sum_of_squares() == order,
                                    a.degrees.sum_of_squares().convert_to<double>(), order.convert_to<double>(), true));
    rep.checks.push_back(make_check("eps_below_half", name, h, d0sq < order, d0sq.convert_to<double>(),
                                    order.convert_to<double>(), d0sq < order));
    BigInt counting = 1 + BigInt(k - 1) * d0sq;
    rep.checks.push_back(make_check("counting_remark", name, h, order >= counting, order.convert_to<double>(),
                                    counting.convert_to<double>(), order >= counting));
    BigInt kd = BigInt(k) * d0sq;
    rep.checks.push_back(make_check("class_count_bound", name, h, kd <= order, double(k),
                                    std::exp(ln_big(order) - 2 * std::log(double(d0v))), kd <= order));

    if (perfect) {
        std::uint64_t smallest = 0;
        bool ok = true;
        for (std::size_t i = 1; i < a.classes.count(); ++i) {
            if (a.classes.sizes[i] == 1) continue; // central: the conjugation action on it is trivial
            if (!smallest || a.classes.sizes[i] < smallest) smallest = a.classes.sizes[i];
            if (a.classes.sizes[i] < d0v + 1) ok = false;
        }
        rep.checks.push_back(make_check("class_size_bound", name, h, ok, double(smallest), double(d0v + 1), ok));

        // r_n <= n^(1/alpha - 2)  <=>  ln(r_n n^2)/ln n <= ln|G|/ln d0
        const auto& ds = a.degrees.degrees;
        bool all = true, undecided = false;
        double worst = 0;
        for (std::size_t i = 1; i < ds.size();) {
            std::size_t j = i;
            while (j < ds.size() && ds[j] == ds[i]) ++j;
            BigInt n = ds[i], rn = j - i;
            auto v = compare_log_ratios(rn * n * n, n, order, BigInt(d0v));
            if (v == Verdict::Greater) all = false;
            if (v == Verdict::Indeterminate) undecided = true;
            worst = std::max(worst, ln_big(rn * n * n) / ln_big(n));
            i = j;
        }
        std::optional<bool> exact;
        if (!undecided) exact = all;
        CheckResult c = make_check("rep_growth_bound", name, h, all, worst, ln_big(order) / std::log(double(d0v)), exact,
                                   "max over n of ln(r_n n^2)/ln n against ln|G|/ln d0");
        if (all && undecided) c.verdict = "indeterminate";
        rep.checks.push_back(c);
    }
}

/// lemExt1 monotonicity, the strict alpha increase, lemImprove on noncentral abelian normal
/// subgroups, the class-size corollary and the counting remark.
inline LemmaReport lemma_suite(const Group& g, const GroupAnalysis& a, const std::string& name = "") {
    if (!a.structure) throw InvalidInput("lemma_suite needs the normal structure audit");
    const auto& s = *a.structure;
    LemmaReport rep;
    rep.truncated = s.truncated;
    const auto h = g.hash();
    const BigInt order = g.order();
    const std::uint64_t d0v = a.degrees.d0();
    const bool perfect = a.degrees.perfect();
    local_checks(g, a, rep, name);

    for (std::size_t i = 0; i < s.members.size(); ++i) {
        const std::uint64_t no = s.orders[i];
        if (no == 1 || BigInt(no) == order) continue;
        const Group& nsub = s.normal_subgroups[i];
        Group q = quotient(g, nsub);
        auto qa = analyze_group(q, false);
        const std::uint64_t dq = qa.degrees.d0();
        const BigInt qo = q.order();
        const std::string sub = name + "/N" + std::to_string(no);

        rep.checks.push_back(make_check("lemExt1", sub, h, dq >= d0v, double(dq), double(d0v), dq >= d0v));
        if (perfect) {
            auto v = compare_log_ratios(BigInt(dq), qo, BigInt(d0v), order);
            CheckResult c = make_check("alpha_quotient_increase", sub, h, false, ln_big(dq) / ln_big(qo),
                                       alpha_of(order, d0v), std::nullopt);
            c.verdict = verdict_from(v, false, false, true);
            rep.checks.push_back(c);
        }
        auto er = eqn_from(order, d0v, BigInt(no), qo, dq, std::nullopt, h);
        er.check.subject = sub;
        rep.checks.push_back(er.check);

        const bool central = class_subset(s.members[i], s.center);
        ClassSet der = derived_class_set(g, a.classes, a.constants, nsub.generators());
        const bool abelian = class_set_order(a.classes, der) == 1;
        if (perfect && abelian) {
            // alpha(G/N) > alpha(G)/(1-alpha(G)) = ln d0 / ln(|G|/d0)
            auto v = compare_log_ratios(BigInt(dq), qo, BigInt(d0v), order / d0v);
            double alpha_g = alpha_of(order, d0v);
            CheckResult c = make_check(central ? "lemImprove_central" : "lemImprove", sub, h, false,
                                       ln_big(dq) / ln_big(qo), alpha_g / (1 - alpha_g), std::nullopt);
            c.verdict = verdict_from(v, false, false, true);
            c.required = !central;
            if (central) c.detail = "N central: the improvement bound does not apply";
            rep.checks.push_back(c);
        }
    }
    return rep;
}

struct DpReport {
    std::uint64_t d0_a = 0, d0_b = 0, d0_product = 0;
    bool min_identity = false;
    std::string alpha_verdict; // pass | fail | indeterminate
    double alpha_product = 0, half_alpha_b = 0;
    bool swapped = false;
};

/// d0(A x B) = min(d0(A), d0(B)) and alpha(A x B) <= alpha(B)/2 with A, B labelled so that
/// alpha(A) <= alpha(B).
inline DpReport dp_check(const BigInt& order_a, std::uint64_t d0_a, const BigInt& order_b, std::uint64_t d0_b,
                         std::uint64_t d0_product) {
    DpReport r;
    auto v = compare_log_ratios(BigInt(d0_a), order_a, BigInt(d0_b), order_b);
    BigInt oa = order_a, ob = order_b;
    std::uint64_t da = d0_a, db = d0_b;
    if (v == Verdict::Greater) {
        std::swap(oa, ob);
        std::swap(da, db);
        r.swapped = true;
    }
    r.d0_a = da;
    r.d0_b = db;
    r.d0_product = d0_product;
    r.min_identity = d0_product == std::min(da, db);
    BigInt m = d0_product;
    auto w = compare_log_ratios(m, oa * ob, BigInt(db), ob * ob);
    r.alpha_verdict = verdict_from(w, true, true, false);
    r.alpha_product = ln_big(m) / ln_big(oa * ob);
    r.half_alpha_b = ln_big(db) / ln_big(ob) / 2;
    return r;
}

inline DpReport dp_check(const Group& a, const Group& b) {
    Group p = direct_product(a, b);
    return dp_check(a.order(), d0(a), b.order(), d0(b), d0(p));
}

/// alpha(prod G_i) < 1/n  <=>  d0^n < prod |G_i|, exactly.
inline bool product_alpha_below(const BigInt& product_order, std::uint64_t d0_product, std::uint64_t n) {
    return pow_big(BigInt(d0_product), n) < product_order;
}

struct GowersReport {
    std::uint64_t subset_size = 0;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
};

/// Smallest s with s >= |G|^(1 - alpha/3) = |G| / d0^(1/3), i.e. s^3 d0 >= |G|^3.
inline std::uint64_t gowers_threshold(std::uint64_t order, std::uint64_t d0v) {
    BigInt target = pow_big(BigInt(order), 3);
    auto s = std::uint64_t(std::ceil(double(order) / std::cbrt(double(d0v))));
    while (s > 1 && pow_big(BigInt(s - 1), 3) * d0v >= target) --s;
    while (pow_big(BigInt(s), 3) * d0v < target) ++s;
    return s;
}

/// Membership mask of S*T over element ranks.
inline std::vector<char> subset_product(const Group& g, const std::vector<std::uint64_t>& s,
                                        const std::vector<char>& t_mask) {
    const std::uint64_t n = g.size();
    const std::size_t m = g.base_length();
    const auto base = g.base();
    std::vector<char> out(n, 0);
    std::vector<std::uint64_t> t;
    for (std::uint64_t r = 0; r < n; ++r)
        if (t_mask[r]) t.push_back(r);
    std::vector<std::vector<Point>> tb(t.size(), std::vector<Point>(g.degree()));
    for (std::size_t j = 0; j < t.size(); ++j) tb[j] = g.element(t[j]).images();
    Point gamma[64], delta[64];
    for (auto x : s) {
        g.base_images(x, gamma);
        for (std::size_t j = 0; j < t.size(); ++j) {
            // (xy)(b) = y(x(b))
            for (std::size_t i = 0; i < m; ++i) delta[i] = tb[j][gamma[i]];
            out[std::size_t(g.rank_from_base_images(delta))] = 1;
        }
    }
    return out;
}

/// Draws uniform subsets S of the threshold size and checks S^3 = G by two product passes.
inline GowersReport gowers_sample(const Group& g, std::uint64_t d0v, std::uint64_t trials, std::uint64_t seed,
                                  std::optional<std::uint64_t> forced_size = std::nullopt) {
    if (g.order() > 10000) throw TooLarge("Gowers sampler is limited to groups of order at most 10^4");
    const std::uint64_t n = g.size();
    GowersReport r;
    r.subset_size = forced_size ? *forced_size : gowers_threshold(n, d0v);
    r.trials = trials;
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> all(n);
    for (std::uint64_t i = 0; i < n; ++i) all[i] = i;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<std::uint64_t> s(all.begin(), all.begin() + std::ptrdiff_t(std::min(r.subset_size, n)));
        std::sort(s.begin(), s.end());
        std::vector<char> mask(n, 0);
        for (auto x : s) mask[x] = 1;
        auto s2 = subset_product(g, s, mask);
        std::vector<std::uint64_t> s2list;
        for (std::uint64_t x = 0; x < n; ++x)
            if (s2[x]) s2list.push_back(x);
        auto s3 = subset_product(g, s2list, mask);
        bool full = std::all_of(s3.begin(), s3.end(), [](char c) { return c != 0; });
        if (!full) ++r.failures;
    }
    return r;
}

/// S^3 for an explicit subset, as a count of reached elements.
inline std::uint64_t triple_product_size(const Group& g, const std::vector<std::uint64_t>& s) {
    std::vector<char> mask(g.size(), 0);
    for (auto x : s) mask[x] = 1;
    auto s2 = subset_product(g, s, mask);
    std::vector<std::uint64_t> s2list;
    for (std::uint64_t x = 0; x < g.size(); ++x)
        if (s2[x]) s2list.push_back(x);
    auto s3 = subset_product(g, s2list, mask);
    return std::uint64_t(std::count(s3.begin(), s3.end(), 1));
}

} // namespace qrdeg

#pragma once

#include "conjugacy.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

namespace qrdeg {

/// A normal subgroup is a union of conjugacy classes; it is stored as a class mask.
using ClassSet = std::vector<char>;

/// Smallest normal subgroup containing the given classes, using the support of the class
/// products C_i C_j (those k with a_ijk > 0).
inline ClassSet class_closure(const ClassConstants& cc, const ClassSet& seed) {
    const std::size_t k = cc.k;
    ClassSet in(k, 0);
    in[0] = 1;
    std::vector<std::size_t> gen, members{0};
    for (std::size_t j = 0; j < k; ++j)
        if (seed[j]) gen.push_back(j);
    for (std::size_t h = 0; h < members.size(); ++h) {
        std::size_t i = members[h];
        for (std::size_t j : gen)
            for (std::size_t l = 0; l < k; ++l)
                if (!in[l] && cc(i, j, l) > 0) {
                    in[l] = 1;
                    members.push_back(l);
                }
    }
    return in;
}

inline std::uint64_t class_set_order(const ConjugacyData& cd, const ClassSet& s) {
    std::uint64_t o = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i]) o += cd.sizes[i];
    return o;
}

inline bool class_subset(const ClassSet& a, const ClassSet& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

/// Generators of the subgroup formed by the classes in `s`: class representatives, then
/// random members outside the current span until the order is right.
inline std::vector<Permutation> class_set_generators(const Group& g, const ConjugacyData& cd, const ClassSet& s,
                                                     std::uint64_t seed = 7) {
    std::vector<Permutation> gens;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i]) gens.push_back(cd.reps[i]);
    if (gens.empty()) return {Permutation::identity(g.degree())};
    const std::uint64_t target = class_set_order(cd, s);
    std::vector<std::uint64_t> ranks;
    for (std::uint64_t r = 0; r < cd.class_of.size(); ++r)
        if (s[cd.class_of[r]]) ranks.push_back(r);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, ranks.size() - 1);
    for (;;) {
        Group h(gens);
        if (h.order() == target) return gens;
        if (h.order() > target) throw IntegrityError("class set is not a subgroup");
        for (;;) {
            Permutation x = g.element(ranks[pick(rng)]);
            if (!h.contains(x)) {
                gens.push_back(std::move(x));
                break;
            }
        }
    }
}

struct NormalStructure {
    std::vector<ClassSet> members; // index 0 trivial; whole group present when complete
    std::vector<std::uint64_t> orders;
    std::vector<Group> normal_subgroups;
    std::vector<std::size_t> maximal;
    std::vector<std::size_t> minimal;
    ClassSet center, derived;
    std::uint64_t center_order = 1, derived_order = 1;
    bool truncated = false;
    bool is_perfect = false;
    // Withheld (empty) when the lattice was truncated.
    std::optional<bool> is_simple, is_quasisimple, has_unique_maximal_normal;
    std::optional<std::size_t> solvable_radical; // index into members
    std::vector<std::optional<bool>> solvable;   // per member

    std::size_t index_of(const ClassSet& s) const {
        for (std::size_t i = 0; i < members.size(); ++i)
            if (members[i] == s) return i;
        return members.size();
    }
};

/// Normal closure of the commutators of a generating set of N, as a class set.
inline ClassSet derived_class_set(const Group& g, const ConjugacyData& cd, const ClassConstants& cc,
                                  const std::vector<Permutation>& gens) {
    ClassSet seed(cd.count(), 0);
    for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = a + 1; b < gens.size(); ++b) seed[cd.class_of_element(g, commutator(gens[a], gens[b]))] = 1;
    return class_closure(cc, seed);
}

/// Normal subgroup lattice as joins of normal closures of classes, plus the derived flags.
inline NormalStructure structure_audit(const Group& g, const ConjugacyData& cd, const ClassConstants& cc,
                                       std::size_t node_budget = 512) {
    const std::size_t k = cd.count();
    NormalStructure ns;
    auto add = [&](const ClassSet& s) {
        for (const auto& m : ns.members)
            if (m == s) return false;
        ns.members.push_back(s);
        return true;
    };
    ClassSet triv(k, 0);
    triv[0] = 1;
    add(triv);
    for (std::size_t i = 1; i < k && !ns.truncated; ++i) {
        ClassSet seed(k, 0);
        seed[i] = 1;
        add(class_closure(cc, seed));
        if (ns.members.size() > node_budget) ns.truncated = true;
    }
    for (std::size_t a = 1; a < ns.members.size() && !ns.truncated; ++a)
        for (std::size_t b = 1; b < a && !ns.truncated; ++b) {
            if (class_subset(ns.members[a], ns.members[b]) || class_subset(ns.members[b], ns.members[a])) continue;
            ClassSet u(k, 0);
            for (std::size_t i = 0; i < k; ++i) u[i] = ns.members[a][i] | ns.members[b][i];
            add(class_closure(cc, u));
            if (ns.members.size() > node_budget) ns.truncated = true;
        }
    if (ns.truncated) ns.members.resize(node_budget);

    std::vector<std::size_t> perm(ns.members.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (const auto& m : ns.members) ns.orders.push_back(class_set_order(cd, m));
    std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) { return ns.orders[a] < ns.orders[b]; });
    std::vector<ClassSet> sorted;
    std::vector<std::uint64_t> sorted_orders;
    for (auto i : perm) {
        sorted.push_back(ns.members[i]);
        sorted_orders.push_back(ns.orders[i]);
    }
    ns.members = std::move(sorted);
    ns.orders = std::move(sorted_orders);

    ns.center.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        if (cd.sizes[i] == 1) ns.center[i] = 1;
    ns.center_order = class_set_order(cd, ns.center);
    ns.derived = derived_class_set(g, cd, cc, g.generators());
    ns.derived_order = class_set_order(cd, ns.derived);
    const std::uint64_t n = g.size();
    ns.is_perfect = ns.derived_order == n;

    for (const auto& m : ns.members) ns.normal_subgroups.push_back(Group(class_set_generators(g, cd, m)));

    if (ns.truncated) {
        ns.solvable.assign(ns.members.size(), std::nullopt);
        return ns;
    }

    const std::size_t cnt = ns.members.size();
    auto strictly_in = [&](std::size_t a, std::size_t b) {
        return ns.orders[a] < ns.orders[b] && class_subset(ns.members[a], ns.members[b]);
    };
    for (std::size_t a = 0; a < cnt; ++a) {
        if (ns.orders[a] == n) continue;
        bool is_max = true;
        for (std::size_t b = 0; b < cnt; ++b)
            if (ns.orders[b] < n && strictly_in(a, b)) is_max = false;
        if (is_max) ns.maximal.push_back(a);
    }
    for (std::size_t a = 0; a < cnt; ++a) {
        if (ns.orders[a] == 1) continue;
        bool is_min = true;
        for (std::size_t b = 0; b < cnt; ++b)
            if (ns.orders[b] > 1 && strictly_in(b, a)) is_min = false;
        if (is_min) ns.minimal.push_back(a);
    }
    ns.is_simple = n > 1 && cnt == 2;
    ns.has_unique_maximal_normal = ns.maximal.size() == 1;
    bool quasi = ns.is_perfect && ns.center_order < n;
    if (quasi) {
        for (std::size_t a = 0; a < cnt; ++a)
            if (class_subset(ns.center, ns.members[a]) && ns.members[a] != ns.center && ns.orders[a] != n) quasi = false;
    }
    ns.is_quasisimple = quasi;

    // derived series inside the lattice; N' is normal in G, hence a member
    std::vector<std::size_t> der(cnt);
    for (std::size_t a = 0; a < cnt; ++a) {
        ClassSet d = ns.orders[a] == 1 ? ns.members[a]
                                       : derived_class_set(g, cd, cc, ns.normal_subgroups[a].generators());
        der[a] = ns.index_of(d);
        if (der[a] == cnt) throw IntegrityError("derived subgroup of a normal subgroup missing from lattice");
    }
    ns.solvable.assign(cnt, false);
    std::size_t best = 0;
    for (std::size_t a = 0; a < cnt; ++a) {
        std::size_t cur = a;
        for (std::size_t steps = 0; steps <= cnt; ++steps) {
            if (ns.orders[cur] == 1) {
                ns.solvable[a] = true;
                break;
            }
            if (der[cur] == cur) break;
            cur = der[cur];
        }
        if (*ns.solvable[a] && ns.orders[a] > ns.orders[best]) best = a;
    }
    ns.solvable_radical = best;
    return ns;
}

/// Action of G on the right cosets Nx.
inline Group quotient(const Group& g, const Group& n_sub) {
    if (n_sub.degree() != g.degree()) throw InvalidInput("subgroup has a different degree");
    for (const auto& s : n_sub.generators())
        if (!g.contains(s)) throw InvalidInput("N is not a subgroup of G");
    for (const auto& x : g.generators())
        for (const auto& s : n_sub.generators())
            if (!n_sub.contains(s.conjugate_by(x))) throw InvalidInput("N is not normal in G");
    g.require_enumerable("quotient");
    const std::uint64_t total = g.size();
    const std::uint64_t nn = n_sub.order().convert_to<std::uint64_t>();
    const std::uint64_t index = total / nn;
    if (index > g.limits().max_enumeration) throw TooLarge("quotient index exceeds the enumeration cap");
    const std::size_t m = g.base_length();
    const auto base = g.base();
    constexpr std::uint32_t kNone = 0xffffffffu;
    std::vector<std::uint32_t> coset(total, kNone);
    std::vector<std::uint64_t> rep;
    std::vector<std::uint64_t> queue;
    std::int32_t idx[64];
    Point gamma[64];
    const auto& ngens = n_sub.generators();
    for (std::uint64_t start = 0; start < total; ++start) {
        if (coset[start] != kNone) continue;
        auto c = std::uint32_t(rep.size());
        rep.push_back(start);
        coset[start] = c;
        queue.assign(1, start);
        for (std::size_t h = 0; h < queue.size(); ++h) {
            g.digits(queue[h], idx);
            for (const auto& s : ngens) {
                // y = s x, so y(b) = x(s(b))
                for (std::size_t i = 0; i < m; ++i) gamma[i] = g.eval_digits(idx, s[base[i]]);
                auto r = std::size_t(g.rank_from_base_images(gamma));
                if (coset[r] == kNone) {
                    coset[r] = c;
                    queue.push_back(r);
                }
            }
        }
        if (queue.size() != nn) throw IntegrityError("coset size differs from |N|");
    }
    std::vector<Permutation> qgens;
    for (const auto& x : g.generators()) {
        std::vector<Point> img(rep.size());
        for (std::size_t c = 0; c < rep.size(); ++c) {
            g.digits(rep[c], idx);
            for (std::size_t i = 0; i < m; ++i) gamma[i] = x[g.eval_digits(idx, base[i])];
            img[c] = coset[std::size_t(g.rank_from_base_images(gamma))];
        }
        qgens.push_back(Permutation(std::move(img)));
    }
    return Group(std::move(qgens), BigInt(index), g.limits());
}

inline Group direct_product(const Group& a, const Group& b) {
    const std::size_t na = a.degree(), nb = b.degree();
    std::vector<Permutation> gens;
    for (const auto& s : a.generators()) {
        std::vector<Point> v(na + nb);
        for (Point x = 0; x < na; ++x) v[x] = s[x];
        for (Point x = 0; x < nb; ++x) v[na + x] = Point(na + x);
        gens.push_back(Permutation(std::move(v)));
    }
    for (const auto& s : b.generators()) {
        std::vector<Point> v(na + nb);
        for (Point x = 0; x < na; ++x) v[x] = x;
        for (Point x = 0; x < nb; ++x) v[na + x] = Point(na + s[x]);
        gens.push_back(Permutation(std::move(v)));
    }
    return Group(std::move(gens), a.order() * b.order(), a.limits());
}

} // namespace qrdeg

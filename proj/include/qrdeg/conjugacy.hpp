#pragma once

#include "group.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace qrdeg {

/// Conjugacy classes of an enumerable group, with the rank -> class map materialized.
struct ConjugacyData {
    std::vector<Permutation> reps;
    std::vector<std::uint64_t> sizes;
    std::vector<std::uint32_t> class_of; // indexed by element rank
    std::vector<std::size_t> inverse_class;
    std::vector<std::uint64_t> rep_orders;

    std::size_t count() const { return reps.size(); }
    std::uint64_t exponent() const {
        std::uint64_t e = 1;
        for (auto o : rep_orders) e = std::lcm(e, o);
        return e;
    }
    std::size_t class_of_element(const Group& g, const Permutation& p) const {
        auto r = g.rank(p);
        if (r < 0) throw InvalidInput("permutation is not in the group");
        return class_of[std::size_t(r)];
    }
};

/// Orbit partition of G under conjugation by its generators, by breadth-first search on ranks.
/// Classes are numbered in order of their least rank, so class 0 is the identity.
inline ConjugacyData conjugacy_classes(const Group& g) {
    g.require_enumerable("conjugacy classes");
    const std::uint64_t n = g.size();
    const std::size_t m = g.base_length();
    const auto base = g.base();
    std::vector<Permutation> gens = g.generators(), gens_inv;
    for (const auto& s : gens) gens_inv.push_back(s.inverse());

    ConjugacyData cd;
    constexpr std::uint32_t kNone = 0xffffffffu;
    cd.class_of.assign(n, kNone);
    std::vector<std::uint64_t> queue;
    queue.reserve(1024);
    std::int32_t idx[64];
    Point gamma[64];
    for (std::uint64_t start = 0; start < n; ++start) {
        if (cd.class_of[start] != kNone) continue;
        auto c = std::uint32_t(cd.reps.size());
        cd.class_of[start] = c;
        queue.clear();
        queue.push_back(start);
        for (std::size_t h = 0; h < queue.size(); ++h) {
            g.digits(queue[h], idx);
            for (std::size_t s = 0; s < gens.size(); ++s) {
                // y = s^-1 x s, so y(b) = s(x(s^-1(b)))
                for (std::size_t i = 0; i < m; ++i) gamma[i] = gens[s][g.eval_digits(idx, gens_inv[s][base[i]])];
                auto r = g.rank_from_base_images(gamma);
                if (r < 0) throw IntegrityError("conjugate left the group");
                if (cd.class_of[std::size_t(r)] == kNone) {
                    cd.class_of[std::size_t(r)] = c;
                    queue.push_back(std::uint64_t(r));
                }
            }
        }
        cd.reps.push_back(g.element(start));
        cd.sizes.push_back(queue.size());
    }
    for (const auto& r : cd.reps) {
        cd.inverse_class.push_back(cd.class_of[std::size_t(g.rank(r.inverse()))]);
        cd.rep_orders.push_back(r.order());
    }
    return cd;
}

/// Structure constants of the class algebra: a(i,j,k) = #{(x,y) in C_i x C_j : xy = z_k}
/// for the fixed representative z_k.
struct ClassConstants {
    std::size_t k = 0;
    std::vector<std::uint32_t> a;

    std::uint32_t operator()(std::size_t i, std::size_t j, std::size_t l) const { return a[(i * k + j) * k + l]; }
    std::uint32_t& at(std::size_t i, std::size_t j, std::size_t l) { return a[(i * k + j) * k + l]; }
};

/// Runs over x^-1 = u in G: the pair (u^-1, u z_k) lands in a(class(u^-1), class(u z_k), k).
/// Only base images are touched, so one step costs O(base length^2).
inline ClassConstants class_constants(const Group& g, const ConjugacyData& cd) {
    g.require_enumerable("class constants");
    if (cd.class_of.size() != g.size()) throw TooLarge("class map not materialized");
    const std::size_t k = cd.count(), m = g.base_length();
    ClassConstants cc;
    cc.k = k;
    cc.a.assign(k * k * k, 0);
    std::int32_t idx[64];
    Point gamma[64], delta[64];
    const std::uint64_t n = g.size();
    for (std::uint64_t u = 0; u < n; ++u) {
        g.digits(u, idx);
        g.base_images_digits(idx, gamma);
        std::size_t i = cd.inverse_class[cd.class_of[u]];
        for (std::size_t l = 0; l < k; ++l) {
            const auto& z = cd.reps[l];
            for (std::size_t b = 0; b < m; ++b) delta[b] = z[gamma[b]];
            auto r = g.rank_from_base_images(delta);
            cc.at(i, cd.class_of[std::size_t(r)], l) += 1;
        }
    }
    return cc;
}

} // namespace qrdeg

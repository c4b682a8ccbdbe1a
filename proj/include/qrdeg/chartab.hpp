#pragma once

#include "conjugacy.hpp"
#include "modp.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace qrdeg {

/// Irreducible character degrees, sorted ascending, one per class.
struct DegreeMultiset {
    std::vector<std::uint64_t> degrees;
    std::size_t k = 0;
    std::uint64_t prime = 0;

    std::uint64_t linear_count() const { return std::uint64_t(std::count(degrees.begin(), degrees.end(), 1u)); }
    bool perfect() const { return linear_count() == 1; }

    /// Minimal degree of a nontrivial irreducible: 1 when there is a nontrivial linear character.
    std::uint64_t d0() const {
        if (degrees.size() < 2) throw InvalidInput("D0 of the trivial group is undefined");
        return degrees[1];
    }
    BigInt sum_of_squares() const {
        BigInt s = 0;
        for (auto d : degrees) s += BigInt(d) * d;
        return s;
    }
};

namespace detail {

struct EigenSpace {
    modp::Matrix basis; // rows, reduced echelon form
    std::vector<std::size_t> pivots;
};

inline std::uint64_t isqrt_exact(std::uint64_t x, bool& ok) {
    auto r = std::uint64_t(std::sqrt(double(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    ok = r * r == x;
    return r;
}

} // namespace detail

/// Degrees from class constants by splitting the common eigenspaces of the class matrices
/// (M_i)_{jk} = a_ijk over F_p, with p = 1 (mod exponent) and p > |G|.
inline DegreeMultiset dixon_degrees(const ConjugacyData& cd, const ClassConstants& cc, std::uint64_t order,
                                    std::uint64_t seed = 20240607) {
    using namespace modp;
    const std::size_t k = cd.count();
    DegreeMultiset out;
    out.k = k;
    if (k == 1) {
        out.degrees = {1};
        return out;
    }
    const u64 p = prime_one_mod(cd.exponent(), order);
    out.prime = p;
    std::mt19937_64 rng(seed);

    std::vector<std::size_t> order_idx(k - 1);
    std::iota(order_idx.begin(), order_idx.end(), 1);
    std::stable_sort(order_idx.begin(), order_idx.end(),
                     [&](std::size_t a, std::size_t b) { return cd.sizes[a] > cd.sizes[b]; });

    std::vector<qrdeg::detail::EigenSpace> spaces(1);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<u64> row(k, 0);
        row[i] = 1;
        spaces[0].basis.push_back(row);
        spaces[0].pivots.push_back(i);
    }
    auto apply_m = [&](std::size_t ci, const std::vector<u64>& v) {
        std::vector<u64> r(k, 0);
        for (std::size_t j = 0; j < k; ++j) {
            u64 s = 0;
            for (std::size_t l = 0; l < k; ++l)
                if (v[l]) s = add(s, mul(cc(ci, j, l) % p, v[l], p), p);
            r[j] = s;
        }
        return r;
    };

    for (std::size_t ci : order_idx) {
        bool all_split = true;
        for (const auto& s : spaces)
            if (s.basis.size() > 1) all_split = false;
        if (all_split) break;
        std::vector<qrdeg::detail::EigenSpace> next;
        for (auto& sp : spaces) {
            const std::size_t r = sp.basis.size();
            if (r == 1) {
                next.push_back(std::move(sp));
                continue;
            }
            // restriction: M v_c = sum_r A[r][c] v_r, read off at the pivots
            Matrix images(r), a(r, std::vector<u64>(r, 0));
            for (std::size_t c = 0; c < r; ++c) {
                images[c] = apply_m(ci, sp.basis[c]);
                for (std::size_t rr = 0; rr < r; ++rr) a[rr][c] = images[c][sp.pivots[rr]];
            }
            auto roots = distinct_roots(charpoly(a, p), p, rng);
            if (roots.size() <= 1) {
                next.push_back(std::move(sp));
                continue;
            }
            std::size_t total = 0;
            for (u64 lam : roots) {
                Matrix shifted = a;
                for (std::size_t d = 0; d < r; ++d) shifted[d][d] = sub(shifted[d][d], lam, p);
                Matrix coeffs = nullspace(shifted, p);
                qrdeg::detail::EigenSpace ns;
                for (const auto& cvec : coeffs) {
                    std::vector<u64> v(k, 0);
                    for (std::size_t b = 0; b < r; ++b)
                        if (cvec[b])
                            for (std::size_t t = 0; t < k; ++t) v[t] = add(v[t], mul(cvec[b], sp.basis[b][t], p), p);
                    ns.basis.push_back(std::move(v));
                }
                ns.pivots = rref(ns.basis, p);
                total += ns.basis.size();
                next.push_back(std::move(ns));
            }
            if (total != r) throw IntegrityError("class matrix restriction is not diagonalizable");
        }
        spaces = std::move(next);
    }
    if (spaces.size() != k) throw IntegrityError("common eigenspaces did not split into lines");

    const u64 gmod = order % p;
    for (const auto& sp : spaces) {
        const auto& v = sp.basis[0];
        if (v[0] == 0) throw IntegrityError("eigenvector with zero identity coordinate");
        u64 n0 = inv(v[0], p);
        u64 s = 0;
        for (std::size_t i = 0; i < k; ++i) {
            u64 wi = mul(v[i], n0, p), wj = mul(v[cd.inverse_class[i]], n0, p);
            s = add(s, mul(mul(wi, wj, p), inv(cd.sizes[i] % p, p), p), p);
        }
        u64 sq = mul(gmod, inv(s, p), p);
        bool ok = false;
        u64 d = qrdeg::detail::isqrt_exact(sq, ok);
        if (!ok || d == 0 || order % d != 0) throw IntegrityError("degree residue is not an exact square");
        out.degrees.push_back(d);
    }
    std::sort(out.degrees.begin(), out.degrees.end());
    if (out.sum_of_squares() != order) throw IntegrityError("sum of squared degrees differs from the group order");
    return out;
}

/// Full pipeline from a group: classes, constants, degrees.
struct CharacterData {
    ConjugacyData classes;
    DegreeMultiset degrees;
};

inline CharacterData character_degrees(const Group& g) {
    CharacterData cdata;
    cdata.classes = conjugacy_classes(g);
    auto cc = class_constants(g, cdata.classes);
    cdata.degrees = dixon_degrees(cdata.classes, cc, g.size());
    return cdata;
}

inline std::uint64_t d0(const Group& g) {
    if (g.is_trivial()) throw InvalidInput("D0 of the trivial group is undefined");
    return character_degrees(g).degrees.d0();
}

} // namespace qrdeg

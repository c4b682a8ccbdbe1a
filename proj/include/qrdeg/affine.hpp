#pragma once

#include "chartab.hpp"
#include "gfq.hpp"
#include "group.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace qrdeg {

struct MatrixGroup {
    Field field;
    std::size_t dim = 0;
    std::vector<FqMatrix> generators;

    MatrixGroup(Field f, std::size_t n, std::vector<FqMatrix> gens) : field(std::move(f)), dim(n), generators(std::move(gens)) {
        for (const auto& g : generators) {
            if (g.n != dim) throw InvalidInput("generator has the wrong dimension");
            if (mat_det(field, g) == 0) throw InvalidInput("generator is singular");
        }
    }
    std::uint64_t space_size() const {
        std::uint64_t s = 1;
        for (std::size_t i = 0; i < dim; ++i) s *= field.q();
        return s;
    }
};

/// Permutation of V (all q^n vectors, lexicographic indices) induced by v -> vM.
inline Permutation vector_permutation(const Field& F, std::size_t n, const FqMatrix& m) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < n; ++i) size *= F.q();
    std::vector<Point> img(size);
    for (std::uint64_t x = 0; x < size; ++x) img[x] = Point(vec_index(F, vec_mul(F, vec_from_index(F, x, n), m)));
    return Permutation(std::move(img));
}

inline Permutation translation_permutation(const Field& F, std::size_t n, const std::vector<Field::Elem>& t) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < n; ++i) size *= F.q();
    std::vector<Point> img(size);
    for (std::uint64_t x = 0; x < size; ++x) {
        auto v = vec_from_index(F, x, n);
        for (std::size_t i = 0; i < n; ++i) v[i] = F.add(v[i], t[i]);
        img[x] = Point(vec_index(F, v));
    }
    return Permutation(std::move(img));
}

/// K acting on V (natural) or on V* (through g -> (g^-1)^T).
inline std::vector<Permutation> linear_permutations(const MatrixGroup& k, bool dual, std::uint64_t cap) {
    if (k.space_size() > cap) throw TooLarge("vector space of size " + std::to_string(k.space_size()) + " exceeds the degree cap");
    std::vector<Permutation> out;
    for (const auto& g : k.generators)
        out.push_back(vector_permutation(k.field, k.dim, dual ? mat_dual(k.field, g) : g));
    if (out.empty()) out.push_back(Permutation::identity(k.space_size()));
    return out;
}

struct AffineGroup {
    MatrixGroup base;
    Group k_perm; // K on V, fixing the zero vector
    Group perm;   // V x| K on V
    std::vector<Permutation> translations;
};

/// Builds V x| K on q^n points. The translations by x^j e_i (j < f) generate V additively;
/// the n basis translations alone would only give the F_p-span.
inline AffineGroup affine_group(const MatrixGroup& k, std::uint64_t degree_cap = 4096, GroupLimits limits = {}) {
    auto lin = linear_permutations(k, false, degree_cap);
    Group kp(lin, std::nullopt, limits);
    std::vector<Permutation> trans;
    for (std::size_t i = 0; i < k.dim; ++i) {
        Field::Elem c = 1;
        for (std::uint32_t j = 0; j < k.field.f(); ++j, c *= k.field.p()) {
            std::vector<Field::Elem> t(k.dim, 0);
            t[i] = c;
            trans.push_back(translation_permutation(k.field, k.dim, t));
        }
    }
    std::vector<Permutation> gens = lin;
    gens.insert(gens.end(), trans.begin(), trans.end());
    BigInt order = kp.order() * k.space_size();
    Group g(gens, order, limits);
    return AffineGroup{k, std::move(kp), std::move(g), std::move(trans)};
}

/// The stabilizer of 0 is K's image; 2-transitive iff it is transitive on nonzero vectors.
inline bool is_two_transitive(const AffineGroup& a) {
    std::uint64_t n = a.base.space_size();
    if (n <= 1) return false;
    return a.k_perm.orbit(1).size() == n - 1;
}

inline std::size_t orbit_count(const std::vector<Permutation>& gens, std::size_t n) {
    std::vector<char> seen(n, 0);
    std::size_t count = 0;
    std::vector<Point> stack;
    for (Point s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++count;
        seen[s] = 1;
        stack.assign(1, s);
        while (!stack.empty()) {
            Point x = stack.back();
            stack.pop_back();
            for (const auto& g : gens) {
                Point y = g[x];
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
        }
    }
    return count;
}

/// Orbit count by Burnside: average number of fixed points over every element.
inline BigRational burnside_count(const Group& g) {
    BigInt total = 0;
    const std::uint64_t n = g.size();
    for (std::uint64_t r = 0; r < n; ++r) {
        std::int32_t idx[64];
        g.digits(r, idx);
        std::uint64_t fix = 0;
        for (Point x = 0; x < g.degree(); ++x)
            if (g.eval_digits(idx, x) == x) ++fix;
        total += fix;
    }
    return BigRational(total, BigInt(n));
}

struct DualOrbitReport {
    std::size_t orbits_v = 0, orbits_dual = 0;
    BigRational burnside_v, burnside_dual;
    BigInt order_k;
    bool agree() const {
        return orbits_v == orbits_dual && burnside_v == BigRational(orbits_v) && burnside_dual == BigRational(orbits_dual);
    }
};

inline DualOrbitReport dual_orbit_check(const MatrixGroup& k, std::uint64_t degree_cap = 4096) {
    auto nat = linear_permutations(k, false, degree_cap);
    auto dua = linear_permutations(k, true, degree_cap);
    DualOrbitReport r;
    r.orbits_v = orbit_count(nat, k.space_size());
    r.orbits_dual = orbit_count(dua, k.space_size());
    Group gv(nat), gd(dua);
    r.order_k = gv.order();
    r.burnside_v = burnside_count(gv);
    r.burnside_dual = burnside_count(gd);
    return r;
}

struct AffSpReport {
    DegreeMultiset degrees_g, degrees_k;
    std::uint64_t d0_g = 0, d0_k = 0;
    bool equal = false;
    /// Every nontrivial degree of G is a degree of K or at least |V| - 1.
    bool branches_hold = false;
};

inline AffSpReport affsp_verify(const AffineGroup& a) {
    if (!is_two_transitive(a)) throw InvalidInput("not 2-transitive");
    AffSpReport r;
    r.degrees_g = character_degrees(a.perm).degrees;
    r.degrees_k = character_degrees(a.k_perm).degrees;
    r.d0_g = r.degrees_g.d0();
    r.d0_k = r.degrees_k.d0();
    r.equal = r.d0_g == r.d0_k;
    const std::uint64_t v = a.base.space_size();
    r.branches_hold = true;
    for (std::size_t i = 1; i < r.degrees_g.degrees.size(); ++i) {
        auto d = r.degrees_g.degrees[i];
        bool in_k = std::find(r.degrees_k.degrees.begin(), r.degrees_k.degrees.end(), d) != r.degrees_k.degrees.end();
        if (!in_k && d < v - 1) r.branches_hold = false;
    }
    return r;
}

// ---- named matrix groups ----

inline FqMatrix transvection(std::size_t n, std::size_t i, std::size_t j, Field::Elem t) {
    FqMatrix m = FqMatrix::identity(n);
    m(i, j) = t;
    return m;
}

/// SL_n(q) from elementary transvections x_ij(x^k), k < f, which span every x_ij(t).
inline MatrixGroup sl_matrices(std::size_t n, std::uint32_t q) {
    Field F = Field::of_order(q);
    std::vector<FqMatrix> gens;
    Field::Elem w = F.primitive();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            Field::Elem c = 1;
            for (std::uint32_t k = 0; k < F.f(); ++k, c = F.mul(c, w)) gens.push_back(transvection(n, i, j, c));
        }
    return MatrixGroup(F, n, gens);
}

inline BigInt sl_order(std::size_t n, const BigInt& q) {
    BigInt o = 1;
    for (std::size_t i = 0; i < n; ++i) o *= pow_big(q, n) - pow_big(q, i);
    return o / (q - 1);
}

inline BigInt sp4_order(const BigInt& q) { return pow_big(q, 4) * (pow_big(q, 4) - 1) * (q * q - 1); }

/// Sp_4(q) for the form with <e1,f1> = <e2,f2> = 1 on the ordered basis (e1, e2, f2, f1),
/// generated by symplectic transvections x -> x + a<x,v>v.
inline MatrixGroup sp4_matrices(std::uint32_t q) {
    Field F = Field::of_order(q);
    FqMatrix J(4);
    Field::Elem one = 1, m1 = F.neg(1);
    J(0, 3) = one;
    J(3, 0) = m1;
    J(1, 2) = one;
    J(2, 1) = m1;
    auto tv = [&](const std::vector<Field::Elem>& v, Field::Elem a) {
        // x M = x + a (x J v^T) v, so M = I + a (J v^T) v
        FqMatrix m = FqMatrix::identity(4);
        std::vector<Field::Elem> jv(4, 0);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t k = 0; k < 4; ++k) jv[i] = F.add(jv[i], F.mul(J(i, k), v[k]));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t k = 0; k < 4; ++k) m(i, k) = F.add(m(i, k), F.mul(a, F.mul(jv[i], v[k])));
        return m;
    };
    std::vector<std::vector<Field::Elem>> vs = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
                                                {1, 1, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}};
    std::vector<FqMatrix> gens;
    Field::Elem w = F.primitive();
    for (const auto& v : vs) {
        Field::Elem c = 1;
        for (std::uint32_t k = 0; k < F.f(); ++k, c = F.mul(c, w)) gens.push_back(tv(v, c));
    }
    return MatrixGroup(F, 4, gens);
}

/// Uniform random invertible matrices from a seeded generator.
inline FqMatrix random_invertible(const Field& F, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> d(0, F.q() - 1);
    for (;;) {
        FqMatrix m(n);
        for (auto& x : m.a) x = d(rng);
        if (mat_det(F, m) != 0) return m;
    }
}

inline MatrixGroup diagonal_torus(std::uint32_t q, std::size_t n) {
    Field F = Field::of_order(q);
    std::vector<FqMatrix> gens;
    for (std::size_t i = 0; i < n; ++i) {
        FqMatrix m = FqMatrix::identity(n);
        m(i, i) = F.primitive();
        gens.push_back(m);
    }
    return MatrixGroup(F, n, gens);
}

inline MatrixGroup gl_matrices(std::size_t n, std::uint32_t q) {
    MatrixGroup s = sl_matrices(n, q);
    FqMatrix d = FqMatrix::identity(n);
    d(0, 0) = s.field.primitive();
    s.generators.push_back(d);
    return s;
}

} // namespace qrdeg

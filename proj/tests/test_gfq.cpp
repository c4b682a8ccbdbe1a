#include "qrdeg/gfq.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qrdeg;

namespace {

const std::vector<std::uint32_t> kSmallFields{2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

int mobius(int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    return n > 1 ? -m : m;
}

/// Phi_l(q) = prod_{d | l} (q^d - 1)^mu(l/d), evaluated over the rationals.
BigRational cyclotomic_oracle(int l, std::uint64_t q) {
    BigRational r = 1;
    for (int d = 1; d <= l; ++d) {
        if (l % d) continue;
        BigInt t = pow_big(BigInt(q), unsigned(d)) - 1;
        int mu = mobius(l / d);
        if (mu == 1) r *= t;
        if (mu == -1) r /= t;
    }
    return r;
}

FqMatrix random_matrix(const Field& F, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> d(0, F.q() - 1);
    FqMatrix m(n);
    for (auto& x : m.a) x = d(rng);
    return m;
}

FqMatrix random_invertible_matrix(const Field& F, std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        auto m = random_matrix(F, n, rng);
        if (mat_det(F, m) != 0) return m;
    }
}

} // namespace

TEST(Field, AxiomsExhaustiveUpTo16) {
    for (auto q : kSmallFields) {
        SCOPED_TRACE(q);
        Field F = Field::of_order(q);
        ASSERT_EQ(F.q(), q);
        for (Field::Elem a = 0; a < q; ++a) {
            EXPECT_EQ(F.add(a, 0), a);
            EXPECT_EQ(F.mul(a, 1), a);
            EXPECT_EQ(F.mul(a, 0), 0u);
            EXPECT_EQ(F.add(a, F.neg(a)), 0u);
            if (a) { EXPECT_EQ(F.mul(a, F.inv(a)), 1u); }
            for (Field::Elem b = 0; b < q; ++b) {
                EXPECT_EQ(F.add(a, b), F.add(b, a));
                EXPECT_EQ(F.mul(a, b), F.mul(b, a));
                EXPECT_EQ(F.mul(a, b), F.mul_poly(a, b));
                for (Field::Elem c = 0; c < q; ++c) {
                    ASSERT_EQ(F.add(F.add(a, b), c), F.add(a, F.add(b, c)));
                    ASSERT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
                    ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
                }
            }
        }
    }
}

TEST(Field, PrimeFieldsAreIntegersModP) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 101u}) {
        Field F(p, 1);
        for (std::uint32_t a = 0; a < p; ++a)
            for (std::uint32_t b = 0; b < p; ++b) {
                EXPECT_EQ(F.add(a, b), (a + b) % p);
                EXPECT_EQ(F.mul(a, b), (a * b) % p);
            }
    }
}

TEST(Field, MultiplicativeGroupIsCyclic) {
    for (auto q : kSmallFields) {
        Field F = Field::of_order(q);
        auto g = F.primitive();
        std::set<Field::Elem> powers;
        for (std::uint32_t e = 0; e + 1 < q; ++e) powers.insert(F.pow(g, e));
        EXPECT_EQ(powers.size(), q - 1) << q;
        EXPECT_EQ(F.pow(g, q - 1), 1u);
        // Frobenius is additive
        for (Field::Elem a = 0; a < q; ++a)
            for (Field::Elem b = 0; b < q; ++b)
                EXPECT_EQ(F.pow(F.add(a, b), F.p()), F.add(F.pow(a, F.p()), F.pow(b, F.p())));
    }
}

TEST(Field, ModulusIsIrreducibleAndLowest) {
    // x^2 + 1 over F_3 and x^2 + x + 1 over F_2 are the first irreducible quadratics
    EXPECT_EQ(Field(3, 2).modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
    EXPECT_EQ(Field(2, 2).modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
    for (auto q : {8u, 16u, 27u, 25u, 32u, 49u, 64u}) {
        Field F = Field::of_order(q);
        const auto& m = F.modulus();
        // no roots in F_p, and for degree 4 no quadratic factor: checked by x^(p^k) != x for k < f
        for (std::uint32_t x = 0; x < F.p(); ++x) {
            std::uint64_t v = 0;
            for (std::size_t i = m.size(); i-- > 0;) v = (v * x + m[i]) % F.p();
            EXPECT_NE(v, 0u) << q;
        }
    }
}

TEST(Field, RejectsNonPrimePowers) {
    EXPECT_THROW(Field::of_order(6), InvalidInput);
    EXPECT_THROW(Field::of_order(1), InvalidInput);
    EXPECT_THROW(Field(4, 1), InvalidInput);
}

TEST(Cyclotomic, MatchesMobiusProduct) {
    for (int l : {1, 2, 3, 6, 12})
        for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 64u, 1024u}) {
            auto expect = cyclotomic_oracle(l, q);
            ASSERT_EQ(denominator(expect), 1);
            EXPECT_EQ(cyclotomic_eval(l, BigInt(q)), numerator(expect)) << l << " " << q;
        }
    EXPECT_EQ(cyclotomic_eval(3, BigInt(3)), 13);
    EXPECT_EQ(cyclotomic_eval(6, BigInt(3)), 7);
    EXPECT_EQ(cyclotomic_eval(3, BigInt(3)) * cyclotomic_eval(6, BigInt(3)), 91);
    EXPECT_THROW(cyclotomic_eval(4, BigInt(3)), InvalidInput);
    EXPECT_THROW(cyclotomic_eval(1, BigInt(1)), InvalidInput);
}

TEST(Matrix, InverseDeterminantAndDualHomomorphism) {
    std::mt19937_64 rng(42);
    for (auto q : {2u, 3u, 4u, 5u, 9u, 16u}) {
        Field F = Field::of_order(q);
        for (std::size_t n : {2u, 3u, 4u}) {
            for (int t = 0; t < 30; ++t) {
                auto g = random_invertible_matrix(F, n, rng), h = random_invertible_matrix(F, n, rng);
                auto gh = mat_mul(F, g, h);
                EXPECT_EQ(mat_mul(F, g, mat_inverse(F, g)).a, FqMatrix::identity(n).a);
                EXPECT_EQ(mat_det(F, gh), F.mul(mat_det(F, g), mat_det(F, h)));
                EXPECT_EQ(mat_dual(F, gh).a, mat_mul(F, mat_dual(F, g), mat_dual(F, h)).a);
                // row vectors: v (gh) = (v g) h
                std::vector<Field::Elem> v(n);
                for (auto& c : v) c = Field::Elem(rng() % q);
                EXPECT_EQ(vec_mul(F, v, gh), vec_mul(F, vec_mul(F, v, g), h));
            }
        }
    }
}

TEST(Matrix, VectorIndexRoundTrip) {
    Field F = Field::of_order(9);
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 729; ++i) {
        auto v = vec_from_index(F, i, 3);
        EXPECT_EQ(vec_index(F, v), i);
        seen.insert(i);
    }
    EXPECT_EQ(vec_from_index(F, 1, 3), (std::vector<Field::Elem>{0, 0, 1}));
}

TEST(Matrix, LiteralRoundTripAndErrors) {
    std::mt19937_64 rng(1);
    for (auto q : {2u, 4u, 7u, 9u}) {
        Field F = Field::of_order(q);
        auto m = random_matrix(F, 3, rng);
        auto text = format_matrix_literal(F, m);
        auto [qq, back] = parse_matrix_literal(text);
        EXPECT_EQ(qq, q);
        EXPECT_EQ(back.a, m.a);
    }
    auto [q, m] = parse_matrix_literal("q=3^1; rows=[[1,2],[0,1]]");
    EXPECT_EQ(q, 3u);
    EXPECT_EQ(m(0, 1), 2u);
    EXPECT_THROW(parse_matrix_literal("rows=[[1]]"), InvalidInput);
    EXPECT_THROW(parse_matrix_literal("q=3^1; rows=[[1,2],[0]]"), InvalidInput);
    EXPECT_THROW(parse_matrix_literal("q=3^1; rows=[[1,5],[0,1]]"), InvalidInput);
    EXPECT_THROW(parse_matrix_literal("q=6^1; rows=[[1]]"), InvalidInput);
    EXPECT_THROW(parse_matrix_literal("q=x^1; rows=[[1]]"), InvalidInput);
}

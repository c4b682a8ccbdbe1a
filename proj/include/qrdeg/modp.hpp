#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace qrdeg::modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul(u64 a, u64 b, u64 p) { return u64(u128(a) * b % p); }
inline u64 add(u64 a, u64 b, u64 p) { return a + b >= p ? a + b - p : a + b; }
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline u64 pow(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

inline u64 inv(u64 a, u64 p) {
    if (a % p == 0) throw InvalidInput("inverse of zero");
    return pow(a, p - 2, p);
}

/// Trial division. Intended for the word-sized primes used here.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Least prime p with p = 1 (mod e) and p > lower.
inline u64 prime_one_mod(u64 e, u64 lower) {
    u64 t = lower / e + 1;
    for (;; ++t) {
        u64 p = e * t + 1;
        if (p > lower && is_prime(p)) return p;
    }
}

/// Dense polynomial, coefficient of x^i at index i, no trailing zeros (zero poly is empty).
using Poly = std::vector<u64>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& b, u64 p) {
    trim(a);
    if (b.empty()) throw InvalidInput("polynomial division by zero");
    u64 lead_inv = inv(b.back(), p);
    while (a.size() >= b.size()) {
        u64 c = mul(a.back(), lead_inv, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = sub(a[shift + i], mul(c, b[i], p), p);
        trim(a);
    }
    return a;
}

inline Poly poly_divexact(Poly a, const Poly& b, u64 p) {
    trim(a);
    Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    u64 lead_inv = inv(b.back(), p);
    while (a.size() >= b.size()) {
        u64 c = mul(a.back(), lead_inv, p);
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = sub(a[shift + i], mul(c, b[i], p), p);
        trim(a);
    }
    return q;
}

inline Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j], p), p);
    trim(r);
    return r;
}

inline Poly poly_monic(Poly f, u64 p) {
    trim(f);
    if (f.empty()) return f;
    u64 c = inv(f.back(), p);
    for (auto& x : f) x = mul(x, c, p);
    return f;
}

inline Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a, p);
}

/// base^e mod f.
inline Poly poly_powmod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly r{1};
    r = poly_mod(r, f, p);
    base = poly_mod(base, f, p);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, base, p), f, p);
        e >>= 1;
        if (e) base = poly_mod(poly_mul(base, base, p), f, p);
    }
    return r;
}

inline u64 poly_eval(const Poly& f, u64 x, u64 p) {
    u64 r = 0;
    for (std::size_t i = f.size(); i-- > 0;) r = add(mul(r, x, p), f[i], p);
    return r;
}

namespace detail {
inline void split_roots(const Poly& g, u64 p, std::mt19937_64& rng, std::vector<u64>& out) {
    if (g.size() <= 1) return;
    if (g.size() == 2) {
        out.push_back(mul(sub(0, g[0], p), inv(g[1], p), p));
        return;
    }
    std::uniform_int_distribution<u64> dist(0, p - 1);
    for (;;) {
        Poly lin{dist(rng), 1};
        Poly h = poly_powmod(lin, (p - 1) / 2, g, p);
        if (h.empty()) h = {p - 1};
        else h[0] = sub(h[0], 1, p);
        trim(h);
        Poly d = poly_gcd(g, h, p);
        if (d.size() > 1 && d.size() < g.size()) {
            split_roots(d, p, rng, out);
            split_roots(poly_divexact(g, d, p), p, rng, out);
            return;
        }
    }
}
} // namespace detail

/// Distinct roots in F_p of f, for odd p. The squarefree part with all roots in F_p is
/// gcd(f, x^p - x); it is then split by random (x+a)^((p-1)/2) - 1 factors.
inline std::vector<u64> distinct_roots(const Poly& f0, u64 p, std::mt19937_64& rng) {
    Poly f = poly_monic(f0, p);
    std::vector<u64> out;
    if (f.size() <= 1) return out;
    Poly xp = poly_powmod(Poly{0, 1}, p, f, p);
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = sub(xp[1], 1, p);
    trim(xp);
    Poly g = poly_gcd(f, xp, p);
    if (!g.empty() && g[0] == 0) {
        out.push_back(0);
        g = poly_divexact(g, Poly{0, 1}, p);
    }
    detail::split_roots(g, p, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

using Matrix = std::vector<std::vector<u64>>;

/// Characteristic polynomial det(xI - A) by reduction to Hessenberg form.
inline Poly charpoly(Matrix a, u64 p) {
    const std::size_t n = a.size();
    for (std::size_t m = 1; m < n; ++m) {
        std::size_t piv = m;
        while (piv < n && a[piv][m - 1] == 0) ++piv;
        if (piv == n) continue;
        if (piv != m) {
            std::swap(a[piv], a[m]);
            for (std::size_t r = 0; r < n; ++r) std::swap(a[r][piv], a[r][m]);
        }
        u64 pinv = inv(a[m][m - 1], p);
        for (std::size_t i = m + 1; i < n; ++i) {
            u64 t = mul(a[i][m - 1], pinv, p);
            if (t == 0) continue;
            for (std::size_t j = 0; j < n; ++j) a[i][j] = sub(a[i][j], mul(t, a[m][j], p), p);
            for (std::size_t r = 0; r < n; ++r) a[r][m] = add(a[r][m], mul(t, a[r][i], p), p);
        }
    }
    std::vector<Poly> ps(n + 1);
    ps[0] = {1};
    for (std::size_t k = 1; k <= n; ++k) {
        Poly cur = poly_mul(Poly{sub(0, a[k - 1][k - 1], p), 1}, ps[k - 1], p);
        u64 prod = 1;
        for (std::size_t i = k - 1; i-- > 0;) {
            prod = mul(prod, a[i + 1][i], p);
            u64 c = mul(prod, a[i][k - 1], p);
            if (c == 0) continue;
            const Poly& q = ps[i];
            if (cur.size() < q.size()) cur.resize(q.size(), 0);
            for (std::size_t t = 0; t < q.size(); ++t) cur[t] = sub(cur[t], mul(c, q[t], p), p);
        }
        trim(cur);
        ps[k] = std::move(cur);
    }
    return ps[n];
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& rows, u64 p) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        u64 iv = inv(rows[r][c], p);
        for (auto& x : rows[r]) x = mul(x, iv, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            u64 t = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] = sub(rows[i][j], mul(t, rows[r][j], p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

/// Basis of the right nullspace {v : A v = 0}.
inline Matrix nullspace(Matrix a, u64 p) {
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    auto piv = rref(a, p);
    std::vector<char> is_piv(cols, 0);
    for (auto c : piv) is_piv[c] = 1;
    Matrix basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<u64> v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = sub(0, a[r][f], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace qrdeg::modp

#pragma once

#include "bigint.hpp"
#include "errors.hpp"
#include "modp.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace qrdeg {

/// Exact value of the l-th cyclotomic polynomial at q, for the indices the degree tables use.
inline BigInt cyclotomic_eval(int l, const BigInt& q) {
    if (q < 2) throw InvalidInput("cyclotomic_eval needs q >= 2");
    switch (l) {
    case 1: return q - 1;
    case 2: return q + 1;
    case 3: return q * q + q + 1;
    case 6: return q * q - q + 1;
    case 12: return q * q * q * q - q * q + 1;
    default: throw InvalidInput("cyclotomic index " + std::to_string(l) + " is not supported");
    }
}

/// F_{p^f} in a polynomial basis. Elements are integer codes sum c_i p^i with c_i in [0,p).
/// The modulus is the first monic irreducible of degree f in order of its lower-coefficient
/// code, so every run builds the same field.
class Field {
public:
    using Elem = std::uint32_t;

    Field(std::uint32_t p, std::uint32_t f) : p_(p), f_(f) {
        if (!modp::is_prime(p)) throw InvalidInput("field characteristic " + std::to_string(p) + " is not prime");
        if (f < 1) throw InvalidInput("extension degree must be at least 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < f; ++i) {
            q *= p;
            if (q > (1u << 20)) throw TooLarge("field size beyond 2^20");
        }
        q_ = std::uint32_t(q);
        find_modulus();
        build_tables();
    }

    static Field of_order(std::uint32_t q) {
        for (std::uint32_t p = 2; p <= q; ++p) {
            if (q % p) continue;
            std::uint32_t f = 0, r = q;
            while (r % p == 0) {
                r /= p;
                ++f;
            }
            if (r != 1) throw InvalidInput(std::to_string(q) + " is not a prime power");
            return Field(p, f);
        }
        throw InvalidInput("field order must be at least 2");
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t f() const { return f_; }
    std::uint32_t q() const { return q_; }
    /// Monic modulus, coefficient of x^i at index i (length f+1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    Elem primitive() const { return exp_[1]; }

    Elem add(Elem a, Elem b) const {
        if (f_ == 1) return (a + b) % p_;
        Elem r = 0, w = 1;
        for (std::uint32_t i = 0; i < f_; ++i) {
            r += ((a % p_ + b % p_) % p_) * w;
            a /= p_;
            b /= p_;
            w *= p_;
        }
        return r;
    }
    Elem neg(Elem a) const {
        Elem r = 0, w = 1;
        for (std::uint32_t i = 0; i < f_; ++i) {
            r += ((p_ - a % p_) % p_) * w;
            a /= p_;
            w *= p_;
        }
        return r;
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    Elem inv(Elem a) const {
        if (a == 0) throw InvalidInput("inverse of zero in F_" + std::to_string(q_));
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    Elem pow(Elem a, std::int64_t e) const {
        if (a == 0) {
            if (e < 0) throw InvalidInput("inverse of zero in F_" + std::to_string(q_));
            return e == 0 ? 1 : 0;
        }
        std::int64_t m = q_ - 1;
        std::int64_t r = ((std::int64_t(log_[a]) * (e % m)) % m + m) % m;
        return exp_[std::size_t(r)];
    }
    Elem from_int(std::int64_t v) const { return Elem(((v % std::int64_t(p_)) + p_) % p_); }
    bool valid(std::uint64_t code) const { return code < q_; }

    std::string name() const { return "F_" + std::to_string(q_); }

    /// Slow reference multiplication by polynomial reduction; used to build tables and in tests.
    Elem mul_poly(Elem a, Elem b) const {
        std::vector<std::uint64_t> x = digits(a), y = digits(b), r(2 * f_, 0);
        for (std::uint32_t i = 0; i < f_; ++i)
            for (std::uint32_t j = 0; j < f_; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p_;
        for (std::size_t d = 2 * f_ - 1; d >= f_; --d) {
            std::uint64_t c = r[d];
            if (!c) continue;
            r[d] = 0;
            for (std::uint32_t i = 0; i < f_; ++i) r[d - f_ + i] = (r[d - f_ + i] + (p_ - c) * modulus_[i]) % p_;
        }
        Elem out = 0, w = 1;
        for (std::uint32_t i = 0; i < f_; ++i) {
            out += Elem(r[i]) * w;
            w *= p_;
        }
        return out;
    }

private:
    std::uint32_t p_, f_, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<Elem> exp_, log_;

    std::vector<std::uint64_t> digits(Elem a) const {
        std::vector<std::uint64_t> d(f_);
        for (std::uint32_t i = 0; i < f_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    }

    /// Irreducible iff gcd(m, x^(p^k) - x) = 1 for k <= f/2.
    static bool irreducible(const modp::Poly& m, std::uint64_t p, std::uint32_t f) {
        modp::Poly xpk{0, 1};
        for (std::uint32_t k = 1; k <= f / 2; ++k) {
            xpk = modp::poly_powmod(xpk, p, m, p);
            modp::Poly h = xpk;
            if (h.size() < 2) h.resize(2, 0);
            h[1] = modp::sub(h[1], 1, p);
            modp::trim(h);
            if (h.empty()) return false;
            if (modp::poly_gcd(m, h, p).size() > 1) return false;
        }
        return true;
    }

    void find_modulus() {
        if (f_ == 1) {
            modulus_ = {0, 1};
            return;
        }
        for (std::uint64_t code = 0; code < q_; ++code) {
            modp::Poly m(f_ + 1, 0);
            std::uint64_t c = code;
            for (std::uint32_t i = 0; i < f_; ++i) {
                m[i] = c % p_;
                c /= p_;
            }
            m[f_] = 1;
            if (m[0] == 0) continue;
            if (irreducible(m, p_, f_)) {
                modulus_.assign(m.begin(), m.end());
                return;
            }
        }
        throw IntegrityError("no irreducible polynomial found");
    }

    void build_tables() {
        exp_.assign(q_, 0);
        log_.assign(q_, 0);
        const std::uint32_t n = q_ - 1;
        std::vector<std::uint32_t> primes;
        for (std::uint32_t r = 2, t = n; r <= t; ++r)
            if (t % r == 0) {
                primes.push_back(r);
                while (t % r == 0) t /= r;
            }
        auto slow_pow = [&](Elem a, std::uint32_t e) {
            Elem r = 1;
            while (e) {
                if (e & 1) r = mul_poly(r, a);
                a = mul_poly(a, a);
                e >>= 1;
            }
            return r;
        };
        for (Elem g = 1; g < q_; ++g) {
            bool prim = true;
            for (auto r : primes)
                if (slow_pow(g, n / r) == 1) prim = false;
            if (!prim && n > 1) continue;
            Elem x = 1;
            for (std::uint32_t i = 0; i < n; ++i) {
                exp_[i] = x;
                log_[x] = i;
                x = mul_poly(x, g);
            }
            exp_[n] = 1;
            return;
        }
        throw IntegrityError("no primitive element found");
    }
};

/// Square matrix over a field, entries as field codes, row-major.
struct FqMatrix {
    std::size_t n = 0;
    std::vector<Field::Elem> a;

    FqMatrix() = default;
    explicit FqMatrix(std::size_t dim) : n(dim), a(dim * dim, 0) {}
    static FqMatrix identity(std::size_t dim) {
        FqMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
        return m;
    }
    Field::Elem& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    Field::Elem operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    friend bool operator==(const FqMatrix&, const FqMatrix&) = default;
};

inline FqMatrix mat_mul(const Field& F, const FqMatrix& x, const FqMatrix& y) {
    if (x.n != y.n) throw InvalidInput("matrix dimension mismatch");
    FqMatrix r(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) {
            Field::Elem s = 0;
            for (std::size_t t = 0; t < x.n; ++t) s = F.add(s, F.mul(x(i, t), y(t, j)));
            r(i, j) = s;
        }
    return r;
}

inline FqMatrix mat_transpose(const FqMatrix& x) {
    FqMatrix r(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) r(j, i) = x(i, j);
    return r;
}

inline Field::Elem mat_det(const Field& F, FqMatrix m) {
    const std::size_t n = m.n;
    Field::Elem det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            det = F.neg(det);
        }
        det = F.mul(det, m(c, c));
        Field::Elem iv = F.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            Field::Elem t = F.mul(m(i, c), iv);
            if (!t) continue;
            for (std::size_t j = c; j < n; ++j) m(i, j) = F.sub(m(i, j), F.mul(t, m(c, j)));
        }
    }
    return det;
}

inline FqMatrix mat_inverse(const Field& F, const FqMatrix& x) {
    const std::size_t n = x.n;
    FqMatrix m = x, r = FqMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) throw InvalidInput("matrix is singular");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(m(piv, j), m(c, j));
            std::swap(r(piv, j), r(c, j));
        }
        Field::Elem iv = F.inv(m(c, c));
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) = F.mul(m(c, j), iv);
            r(c, j) = F.mul(r(c, j), iv);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m(i, c) == 0) continue;
            Field::Elem t = m(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = F.sub(m(i, j), F.mul(t, m(c, j)));
                r(i, j) = F.sub(r(i, j), F.mul(t, r(c, j)));
            }
        }
    }
    return r;
}

/// g -> (g^-1)^T, the action on the dual space.
inline FqMatrix mat_dual(const Field& F, const FqMatrix& g) { return mat_transpose(mat_inverse(F, g)); }

/// Row vector times matrix: the right action v -> vM.
inline std::vector<Field::Elem> vec_mul(const Field& F, const std::vector<Field::Elem>& v, const FqMatrix& m) {
    std::vector<Field::Elem> r(m.n, 0);
    for (std::size_t j = 0; j < m.n; ++j) {
        Field::Elem s = 0;
        for (std::size_t i = 0; i < m.n; ++i) s = F.add(s, F.mul(v[i], m(i, j)));
        r[j] = s;
    }
    return r;
}

/// Lexicographic index of a vector, first coordinate most significant.
inline std::uint64_t vec_index(const Field& F, const std::vector<Field::Elem>& v) {
    std::uint64_t idx = 0;
    for (auto x : v) idx = idx * F.q() + x;
    return idx;
}

inline std::vector<Field::Elem> vec_from_index(const Field& F, std::uint64_t idx, std::size_t n) {
    std::vector<Field::Elem> v(n);
    for (std::size_t i = n; i-- > 0;) {
        v[i] = Field::Elem(idx % F.q());
        idx /= F.q();
    }
    return v;
}

/// Parses `q=<p>^<f>; rows=[[a,b],[c,d]]` (entries are field codes).
inline std::pair<std::uint32_t, FqMatrix> parse_matrix_literal(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t' && c != '\r' && c != '\n') s += c;
    auto bad = [&](const std::string& why) { return InvalidInput("bad matrix literal '" + text + "': " + why); };
    if (s.rfind("q=", 0) != 0) throw bad("must start with q=");
    auto caret = s.find('^'), semi = s.find(';');
    if (caret == std::string::npos || semi == std::string::npos || caret > semi) throw bad("expected q=<p>^<f>;");
    auto number = [&](const std::string& t) {
        if (t.empty() || t.size() > 9 || t.find_first_not_of("0123456789") != std::string::npos)
            throw bad("'" + t + "' is not a small positive integer");
        return std::stoull(t);
    };
    std::uint64_t p = number(s.substr(2, caret - 2)), f = number(s.substr(caret + 1, semi - caret - 1));
    if (!modp::is_prime(p)) throw bad(std::to_string(p) + " is not prime");
    if (f < 1) throw bad("exponent must be at least 1");
    if (s.compare(semi + 1, 6, "rows=[") != 0) throw bad("expected rows=[...]");
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < f; ++i) {
        q *= p;
        if (q > (1u << 20)) throw bad("field size beyond 2^20");
    }
    std::vector<std::vector<std::uint64_t>> rows;
    std::size_t i = semi + 7;
    while (i < s.size() && s[i] == '[') {
        auto close = s.find(']', i);
        if (close == std::string::npos) throw bad("unterminated row");
        std::vector<std::uint64_t> row;
        std::string body = s.substr(i + 1, close - i - 1);
        std::stringstream in(body);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) throw bad("non-numeric entry");
            row.push_back(std::stoull(tok));
        }
        rows.push_back(row);
        i = close + 1;
        if (i < s.size() && s[i] == ',') ++i;
    }
    if (i >= s.size() || s[i] != ']') throw bad("unterminated rows");
    if (i + 1 != s.size()) throw bad("trailing characters");
    if (rows.empty()) throw bad("no rows");
    FqMatrix m(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) throw bad("matrix is not square");
        for (std::size_t c = 0; c < rows.size(); ++c) {
            if (rows[r][c] >= q) throw bad("entry outside the field");
            m(r, c) = Field::Elem(rows[r][c]);
        }
    }
    return {std::uint32_t(q), m};
}

inline std::string format_matrix_literal(const Field& F, const FqMatrix& m) {
    std::string s = "q=" + std::to_string(F.p()) + "^" + std::to_string(F.f()) + "; rows=[";
    for (std::size_t i = 0; i < m.n; ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.n; ++j) s += (j ? "," : "") + std::to_string(m(i, j));
        s += "]";
    }
    return s + "]";
}

} // namespace qrdeg

#pragma once

#include "errors.hpp"

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace qrdeg {

using Point = std::uint32_t;

/// Bijection of {0..n-1}. Text I/O is 1-based.
///
/// Composition convention used everywhere in this library: `p * q` applies p first,
/// then q, so (p * q)(x) = q(p(x)).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::size_t degree) : img_(degree) { std::iota(img_.begin(), img_.end(), Point{0}); }
    explicit Permutation(std::vector<Point> images) : img_(std::move(images)) {
        std::vector<char> seen(img_.size(), 0);
        for (Point x : img_) {
            if (x >= img_.size() || seen[x]) throw InvalidInput("image list is not a bijection");
            seen[x] = 1;
        }
    }

    static Permutation identity(std::size_t degree) { return Permutation(degree); }

    /// 1-based image list, as written in generator files.
    static Permutation from_images_1based(const std::vector<std::uint64_t>& imgs) {
        std::vector<Point> v(imgs.size());
        for (std::size_t i = 0; i < imgs.size(); ++i) {
            if (imgs[i] < 1 || imgs[i] > imgs.size()) throw InvalidInput("image out of range");
            v[i] = Point(imgs[i] - 1);
        }
        return Permutation(std::move(v));
    }

    /// Disjoint cycles given as 1-based point lists.
    static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<std::uint64_t>>& cycles) {
        Permutation p(degree);
        std::vector<char> used(degree, 0);
        for (const auto& c : cycles) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                auto a = c[i];
                if (a < 1 || a > degree) throw InvalidInput("cycle point out of range");
                if (used[a - 1]) throw InvalidInput("cycles are not disjoint");
                used[a - 1] = 1;
                p.img_[a - 1] = Point(c[(i + 1) % c.size()] - 1);
            }
        }
        return p;
    }

    std::size_t degree() const { return img_.size(); }
    Point operator[](Point x) const { return img_[x]; }
    Point operator()(Point x) const { return img_[x]; }
    const std::vector<Point>& images() const { return img_; }

    bool is_identity() const {
        for (Point i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<Point> v(img_.size());
        for (Point i = 0; i < img_.size(); ++i) v[img_[i]] = i;
        Permutation r;
        r.img_ = std::move(v);
        return r;
    }

    friend Permutation operator*(const Permutation& p, const Permutation& q) {
        if (p.degree() != q.degree()) throw InvalidInput("degree mismatch");
        Permutation r;
        r.img_.resize(p.degree());
        for (std::size_t i = 0; i < p.degree(); ++i) r.img_[i] = q.img_[p.img_[i]];
        return r;
    }

    Permutation pow(std::int64_t e) const {
        Permutation base = e < 0 ? inverse() : *this;
        std::uint64_t n = e < 0 ? std::uint64_t(-(e + 1)) + 1 : std::uint64_t(e);
        Permutation r(degree());
        while (n) {
            if (n & 1) r = r * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return r;
    }

    /// q^-1 * p * q: relabels the cycles of p through q.
    Permutation conjugate_by(const Permutation& q) const { return q.inverse() * (*this) * q; }

    std::uint64_t order() const;
    std::vector<std::vector<Point>> cycles() const;
    std::string to_cycle_string() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<Point> img_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }
/// q * p * q^-1, the left-action conjugate; equals p.conjugate_by(q.inverse()).
inline Permutation conjugate(const Permutation& p, const Permutation& q) { return q * p * q.inverse(); }
inline Permutation commutator(const Permutation& a, const Permutation& b) {
    return a.inverse() * b.inverse() * a * b;
}

inline std::vector<std::vector<Point>> Permutation::cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<char> seen(img_.size(), 0);
    for (Point i = 0; i < img_.size(); ++i) {
        if (seen[i] || img_[i] == i) continue;
        std::vector<Point> c;
        for (Point j = i; !seen[j]; j = img_[j]) {
            seen[j] = 1;
            c.push_back(j);
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline std::uint64_t Permutation::order() const {
    std::uint64_t l = 1;
    for (const auto& c : cycles()) l = std::lcm(l, std::uint64_t(c.size()));
    return l;
}

inline std::string Permutation::to_cycle_string() const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::string s;
    for (const auto& c : cs) {
        s += '(';
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(c[i] + 1);
        }
        s += ')';
    }
    return s;
}

} // namespace qrdeg

#pragma once

#include "bigint.hpp"
#include "errors.hpp"
#include "permutation.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace qrdeg {

/// Resource caps. Features that enumerate elements refuse to run past them.
struct GroupLimits {
    std::uint64_t max_enumeration = 2'000'000;
    /// Guard on degree * order, the rough byte cost of touching every element once.
    std::uint64_t max_memory_bytes = std::uint64_t(1) << 30;
};

namespace detail {

/// One level of a stabilizer chain: the orbit of the base point under the level's
/// strong generators, with either explicit coset representatives or a Schreier tree.
struct ChainLevel {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<Permutation> gens_inv;
    std::vector<Point> orbit;
    std::vector<std::int32_t> pos; // point -> index in orbit, or -1
    bool explicit_reps = true;
    std::vector<Point> rep;      // orbit.size() * degree, row j maps base to orbit[j]
    std::vector<Point> rep_inv;
    std::vector<std::int32_t> label; // tree mode: generator used to reach orbit[j]
    std::vector<std::int32_t> parent;

    std::size_t degree() const { return pos.size(); }

    void rebuild(std::size_t n, std::uint64_t explicit_budget) {
        gens_inv.clear();
        for (const auto& g : gens) gens_inv.push_back(g.inverse());
        pos.assign(n, -1);
        orbit.clear();
        label.clear();
        parent.clear();
        orbit.push_back(base);
        pos[base] = 0;
        label.push_back(-1);
        parent.push_back(-1);
        for (std::size_t h = 0; h < orbit.size(); ++h) {
            Point x = orbit[h];
            for (std::size_t s = 0; s < gens.size(); ++s) {
                Point y = gens[s][x];
                if (pos[y] < 0) {
                    pos[y] = std::int32_t(orbit.size());
                    orbit.push_back(y);
                    label.push_back(std::int32_t(s));
                    parent.push_back(std::int32_t(h));
                }
            }
        }
        explicit_reps = std::uint64_t(orbit.size()) * n <= explicit_budget;
        rep.clear();
        rep_inv.clear();
        if (!explicit_reps) return;
        rep.resize(orbit.size() * n);
        rep_inv.resize(orbit.size() * n);
        for (std::size_t x = 0; x < n; ++x) rep[x] = Point(x);
        for (std::size_t j = 1; j < orbit.size(); ++j) {
            const Point* pr = &rep[std::size_t(parent[j]) * n];
            const Permutation& s = gens[std::size_t(label[j])];
            Point* r = &rep[j * n];
            for (std::size_t x = 0; x < n; ++x) r[x] = s[pr[x]];
        }
        for (std::size_t j = 0; j < orbit.size(); ++j) {
            const Point* r = &rep[j * n];
            Point* ri = &rep_inv[j * n];
            for (std::size_t x = 0; x < n; ++x) ri[r[x]] = Point(x);
        }
    }

    Point apply(std::size_t j, Point x) const {
        if (explicit_reps) return rep[j * degree() + x];
        Point path[64];
        std::vector<std::int32_t> long_path;
        std::size_t len = 0;
        for (std::size_t k = j; parent[k] >= 0; k = std::size_t(parent[k])) {
            if (len < 64) path[len++] = Point(label[k]);
            else {
                if (long_path.empty()) long_path.assign(path, path + 64);
                long_path.push_back(label[k]);
            }
        }
        if (!long_path.empty()) {
            for (auto it = long_path.rbegin(); it != long_path.rend(); ++it) x = gens[std::size_t(*it)][x];
            return x;
        }
        while (len) x = gens[path[--len]][x];
        return x;
    }

    Point apply_inv(std::size_t j, Point x) const {
        if (explicit_reps) return rep_inv[j * degree() + x];
        for (std::size_t k = j; parent[k] >= 0; k = std::size_t(parent[k])) x = gens_inv[std::size_t(label[k])][x];
        return x;
    }

    Permutation rep_perm(std::size_t j) const {
        std::vector<Point> v(degree());
        for (Point x = 0; x < degree(); ++x) v[x] = apply(j, x);
        return Permutation(std::move(v));
    }
};

} // namespace detail

/// Permutation group with an eagerly built stabilizer chain. Immutable after construction.
///
/// Elements are addressed by a rank in [0, order): the mixed-radix number whose level-i
/// digit is the position of the element's coset representative in orbit i, level 0 least
/// significant. An element g factors as u_{m-1} * ... * u_1 * u_0.
class Group {
public:
    /// When `known_order` is given, the chain is built by random sifting until that order
    /// is reached; a deterministic build is used as fallback and the two must agree.
    explicit Group(std::vector<Permutation> gens, std::optional<BigInt> known_order = std::nullopt,
                   GroupLimits limits = {}, std::uint64_t seed = 0x5eed)
        : limits_(limits) {
        if (gens.empty()) throw InvalidInput("generator list is empty");
        degree_ = gens[0].degree();
        if (degree_ == 0) throw InvalidInput("degree must be positive");
        for (const auto& g : gens)
            if (g.degree() != degree_) throw InvalidInput("generators have different degrees");
        for (auto& g : gens)
            if (!g.is_identity()) gens_.push_back(g);
        if (gens_.empty()) gens_.push_back(Permutation::identity(degree_));
        if (known_order) build_random(*known_order, seed);
        else build_deterministic();
        order_ = 1;
        for (const auto& l : levels_) order_ *= l.orbit.size();
        if (known_order && order_ != *known_order)
            throw IntegrityError("group order " + order_.str() + " differs from expected " + known_order->str());
    }

    static Group trivial(std::size_t degree) { return Group({Permutation::identity(degree)}); }

    std::size_t degree() const { return degree_; }
    const std::vector<Permutation>& generators() const { return gens_; }
    const BigInt& order() const { return order_; }
    const GroupLimits& limits() const { return limits_; }
    bool is_trivial() const { return order_ == 1; }

    std::size_t base_length() const { return levels_.size(); }
    std::vector<Point> base() const {
        std::vector<Point> b;
        for (const auto& l : levels_) b.push_back(l.base);
        return b;
    }
    std::vector<std::size_t> transversal_sizes() const {
        std::vector<std::size_t> t;
        for (const auto& l : levels_) t.push_back(l.orbit.size());
        return t;
    }
    std::vector<Permutation> strong_generators() const {
        std::vector<Permutation> s;
        if (!levels_.empty()) s = levels_[0].gens;
        return s;
    }

    bool enumerable() const {
        if (order_ > limits_.max_enumeration) return false;
        return order_ * degree_ <= limits_.max_memory_bytes;
    }
    void require_enumerable(const char* what) const {
        if (!enumerable())
            throw TooLarge(std::string(what) + ": group of order " + order_.str() + " on " +
                           std::to_string(degree_) + " points exceeds the enumeration cap");
    }
    /// Order as a machine integer; only valid when enumerable().
    std::uint64_t size() const {
        require_enumerable("element enumeration");
        return order_.convert_to<std::uint64_t>();
    }

    bool contains(const Permutation& p) const {
        if (p.degree() != degree_) return false;
        Permutation h = p;
        for (const auto& l : levels_) {
            Point b = h[l.base];
            if (l.pos[b] < 0) return false;
            std::size_t j = std::size_t(l.pos[b]);
            std::vector<Point> v(degree_);
            for (Point x = 0; x < degree_; ++x) v[x] = l.apply_inv(j, h[x]);
            h = Permutation(std::move(v));
        }
        return h.is_identity();
    }

    /// Rank of the element whose base images are `gamma[0..m)`, or -1 if there is none.
    std::int64_t rank_from_base_images(const Point* gamma) const {
        const std::size_t m = levels_.size();
        std::int64_t r = 0, radix = 1;
        std::int32_t idx[64];
        for (std::size_t i = 0; i < m; ++i) {
            Point x = gamma[i];
            for (std::size_t l = 0; l < i; ++l) x = levels_[l].apply_inv(std::size_t(idx[l]), x);
            std::int32_t d = levels_[i].pos[x];
            if (d < 0) return -1;
            idx[i] = d;
            r += radix * d;
            radix *= std::int64_t(levels_[i].orbit.size());
        }
        return r;
    }

    /// Rank of an element known to lie in the group (checked only through base images).
    std::int64_t rank(const Permutation& p) const {
        Point gamma[64];
        for (std::size_t i = 0; i < levels_.size(); ++i) gamma[i] = p[levels_[i].base];
        return rank_from_base_images(gamma);
    }

    void digits(std::uint64_t r, std::int32_t* idx) const {
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            auto s = levels_[i].orbit.size();
            idx[i] = std::int32_t(r % s);
            r /= s;
        }
    }

    /// g(x) for the element with the given digits.
    Point eval_digits(const std::int32_t* idx, Point x) const {
        for (std::size_t l = levels_.size(); l-- > 0;) x = levels_[l].apply(std::size_t(idx[l]), x);
        return x;
    }

    Point eval(std::uint64_t r, Point x) const {
        std::int32_t idx[64];
        digits(r, idx);
        return eval_digits(idx, x);
    }

    void base_images_digits(const std::int32_t* idx, Point* gamma) const {
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            Point x = levels_[i].orbit[std::size_t(idx[i])];
            for (std::size_t l = i; l-- > 0;) x = levels_[l].apply(std::size_t(idx[l]), x);
            gamma[i] = x;
        }
    }

    void base_images(std::uint64_t r, Point* gamma) const {
        std::int32_t idx[64];
        digits(r, idx);
        base_images_digits(idx, gamma);
    }

    Permutation element(std::uint64_t r) const {
        std::int32_t idx[64];
        digits(r, idx);
        std::vector<Point> v(degree_);
        for (Point x = 0; x < degree_; ++x) v[x] = eval_digits(idx, x);
        return Permutation(std::move(v));
    }

    /// Calls f(rank, permutation) for every element, in rank order.
    template <class F>
    void for_each_element(F&& f) const {
        const std::uint64_t n = size();
        for (std::uint64_t r = 0; r < n; ++r) f(r, element(r));
    }

    /// Orbit of a point under the generators, in discovery order.
    std::vector<Point> orbit(Point x) const {
        std::vector<char> seen(degree_, 0);
        std::vector<Point> o{x};
        seen[x] = 1;
        for (std::size_t h = 0; h < o.size(); ++h)
            for (const auto& g : gens_) {
                Point y = g[o[h]];
                if (!seen[y]) {
                    seen[y] = 1;
                    o.push_back(y);
                }
            }
        return o;
    }

    Permutation random_element(std::mt19937_64& rng) const {
        std::uint64_t n = size();
        return element(std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng));
    }

    /// FNV-1a over the degree and generator images; stable identity key for caching.
    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            for (int i = 0; i < 8; ++i) {
                h ^= (v >> (8 * i)) & 0xff;
                h *= 1099511628211ull;
            }
        };
        mix(degree_);
        for (const auto& g : gens_)
            for (Point x : g.images()) mix(x);
        return h;
    }

private:
    static constexpr std::uint64_t kExplicitBudget = 4'000'000;

    std::size_t degree_ = 0;
    std::vector<Permutation> gens_;
    std::vector<detail::ChainLevel> levels_;
    BigInt order_;
    GroupLimits limits_;

    static Point first_moved(const Permutation& p) {
        for (Point x = 0; x < p.degree(); ++x)
            if (p[x] != x) return x;
        return Point(p.degree());
    }

    /// Sift h starting at `from`; returns the level where it dropped out (levels_.size()
    /// if it passed all levels) and leaves the residue in h.
    std::size_t strip(Permutation& h, std::size_t from) const {
        std::size_t i = from;
        std::vector<Point> v(degree_);
        for (; i < levels_.size(); ++i) {
            const auto& l = levels_[i];
            Point b = h[l.base];
            if (l.pos[b] < 0) return i;
            std::size_t j = std::size_t(l.pos[b]);
            if (j == 0) continue;
            for (Point x = 0; x < degree_; ++x) v[x] = l.apply_inv(j, h[x]);
            h = Permutation(v);
        }
        return i;
    }

    /// Adds a residue that dropped out at level j (or passed all levels as nonidentity)
    /// as a strong generator on levels from..j, opening a new level if needed.
    std::size_t add_residue(const Permutation& h, std::size_t from, std::size_t j) {
        if (j == levels_.size()) {
            detail::ChainLevel nl;
            nl.base = first_moved(h);
            levels_.push_back(std::move(nl));
        }
        for (std::size_t l = from; l <= j; ++l) {
            levels_[l].gens.push_back(h);
            levels_[l].rebuild(degree_, kExplicitBudget);
        }
        return j;
    }

    void init_levels() {
        levels_.clear();
        std::vector<Point> base;
        for (const auto& g : gens_) {
            bool fixes_all = true;
            for (Point b : base)
                if (g[b] != b) fixes_all = false;
            if (fixes_all && !g.is_identity()) base.push_back(first_moved(g));
        }
        for (Point b : base) {
            detail::ChainLevel l;
            l.base = b;
            levels_.push_back(std::move(l));
        }
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            for (const auto& g : gens_) {
                bool ok = true;
                for (std::size_t k = 0; k < i; ++k)
                    if (g[levels_[k].base] != levels_[k].base) ok = false;
                if (ok && !g.is_identity()) levels_[i].gens.push_back(g);
            }
            levels_[i].rebuild(degree_, kExplicitBudget);
        }
    }

    void build_deterministic() {
        init_levels();
        std::size_t i = levels_.size();
        while (i-- > 0) {
        restart:
            auto& l = levels_[i];
            bool changed = false;
            for (std::size_t bj = 0; bj < l.orbit.size() && !changed; ++bj) {
                for (std::size_t s = 0; s < l.gens.size() && !changed; ++s) {
                    Point beta = l.orbit[bj];
                    Point img = l.gens[s][beta];
                    std::size_t ij = std::size_t(l.pos[img]);
                    // Schreier generator u_beta * s * u_img^-1
                    std::vector<Point> v(degree_);
                    for (Point x = 0; x < degree_; ++x) v[x] = l.apply_inv(ij, l.gens[s][l.apply(bj, x)]);
                    Permutation h(std::move(v));
                    if (h.is_identity()) continue;
                    std::size_t j = strip(h, i + 1);
                    if (j < levels_.size() || !h.is_identity()) {
                        add_residue(h, i + 1, j);
                        i = j;
                        changed = true;
                    }
                }
            }
            if (changed) goto restart;
        }
    }

    BigInt chain_order() const {
        BigInt o = 1;
        for (const auto& l : levels_) o *= l.orbit.size();
        return o;
    }

    void build_random(const BigInt& target, std::uint64_t seed) {
        init_levels();
        std::mt19937_64 rng(seed);
        std::vector<Permutation> pool;
        while (pool.size() < 11)
            for (const auto& g : gens_) pool.push_back(g);
        Permutation acc = Permutation::identity(degree_);
        auto next = [&]() {
            std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
            std::size_t a = d(rng), b = d(rng);
            while (b == a) b = d(rng);
            pool[a] = (rng() & 1) ? pool[a] * pool[b] : pool[b] * pool[a];
            acc = acc * pool[a];
            return acc;
        };
        for (int k = 0; k < 60; ++k) next();
        int idle = 0;
        while (chain_order() < target && idle < 400) {
            Permutation h = next();
            std::size_t j = strip(h, 0);
            if (j < levels_.size() || !h.is_identity()) {
                add_residue(h, 0, j);
                idle = 0;
            } else {
                ++idle;
            }
        }
        // Reaching the target only bounds |G| from below; every generator and a further
        // batch of random elements must also sift, otherwise the claim is too small.
        bool sifts = chain_order() == target;
        for (std::size_t i = 0; sifts && i < gens_.size() + 40; ++i) {
            Permutation h = i < gens_.size() ? gens_[i] : next();
            sifts = strip(h, 0) == levels_.size() && h.is_identity();
        }
        if (!sifts) build_deterministic();
    }
};

} // namespace qrdeg

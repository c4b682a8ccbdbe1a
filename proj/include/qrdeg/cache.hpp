#pragma once

#include "corpus.hpp"
#include "qdeg.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <atomic>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace qrdeg {

namespace detail {

inline std::string tri(const std::optional<bool>& b) { return b ? (*b ? "1" : "0") : "?"; }

inline std::optional<bool> parse_tri(const std::string& s) {
    if (s == "1") return true;
    if (s == "0") return false;
    if (s == "?") return std::nullopt;
    throw InvalidInput("bad flag value '" + s + "'");
}

inline std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace detail

/// One TSV line: hash, order, k, d0, alpha (6dp), flags, degree list.
inline std::string serialize_profile(const QuasirandomProfile& p) {
    std::ostringstream s;
    char alpha[32];
    std::snprintf(alpha, sizeof alpha, "%.6f", p.alpha);
    s << detail::hex64(p.group_hash) << '\t' << p.order << '\t' << p.k << '\t' << p.d0 << '\t' << alpha << '\t';
    s << "perfect=" << (p.is_perfect ? 1 : 0) << ";quasisimple=" << detail::tri(p.is_quasisimple)
      << ";simple=" << detail::tri(p.is_simple) << ";unique_max=" << detail::tri(p.unique_maximal)
      << ";truncated=" << (p.truncated ? 1 : 0) << ";deg=" << p.perm_degree << ";min_normal=";
    if (p.minimal_normal_orders.empty()) s << '-';
    for (std::size_t i = 0; i < p.minimal_normal_orders.size(); ++i) s << (i ? "|" : "") << p.minimal_normal_orders[i];
    s << '\t';
    for (std::size_t i = 0; i < p.degrees.size(); ++i) s << (i ? "," : "") << p.degrees[i];
    return s.str();
}

/// Parses and validates a cache line; throws InvalidInput on any inconsistency.
inline QuasirandomProfile parse_profile(const std::string& line) {
    auto cols = split(line, '\t');
    if (cols.size() != 7) throw InvalidInput("expected 7 columns");
    QuasirandomProfile p;
    auto u64 = [](const std::string& s) {
        if (s.empty() || s.size() > 19 || s.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidInput("bad integer '" + s + "'");
        return std::stoull(s);
    };
    if (cols[0].size() != 16 || cols[0].find_first_not_of("0123456789abcdef") != std::string::npos)
        throw InvalidInput("bad hash");
    p.group_hash = std::stoull(cols[0], nullptr, 16);
    if (cols[1].empty() || cols[1].find_first_not_of("0123456789") != std::string::npos)
        throw InvalidInput("bad order");
    p.order = BigInt(cols[1]);
    p.k = u64(cols[2]);
    p.d0 = u64(cols[3]);
    for (const auto& kv : split(cols[5], ';')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw InvalidInput("bad flag '" + kv + "'");
        auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "perfect") p.is_perfect = *detail::parse_tri(val);
        else if (key == "quasisimple") p.is_quasisimple = detail::parse_tri(val);
        else if (key == "simple") p.is_simple = detail::parse_tri(val);
        else if (key == "unique_max") p.unique_maximal = detail::parse_tri(val);
        else if (key == "truncated") p.truncated = *detail::parse_tri(val);
        else if (key == "deg") p.perm_degree = u64(val);
        else if (key == "min_normal") {
            if (val != "-")
                for (const auto& v : split(val, '|')) p.minimal_normal_orders.push_back(u64(v));
        } else throw InvalidInput("unknown flag '" + key + "'");
    }
    for (const auto& d : split(cols[6], ',')) p.degrees.push_back(u64(d));
    // internal consistency: the record must describe a real degree multiset
    BigInt sq = 0;
    for (auto d : p.degrees) sq += BigInt(d) * d;
    if (sq != p.order) throw InvalidInput("degrees do not square-sum to the order");
    if (p.degrees.size() != p.k) throw InvalidInput("degree count differs from k");
    if (!std::is_sorted(p.degrees.begin(), p.degrees.end()) || p.degrees.empty() || p.degrees[0] != 1)
        throw InvalidInput("degree list malformed");
    if (p.degrees.size() > 1 && p.degrees[1] != p.d0) throw InvalidInput("d0 inconsistent with degrees");
    if (p.is_perfect != (p.degrees.size() < 2 || p.degrees[1] > 1)) throw InvalidInput("perfect flag inconsistent");
    p.alpha = p.order > 1 ? alpha_of(p.order, p.d0) : 0;
    char alpha[32];
    std::snprintf(alpha, sizeof alpha, "%.6f", p.alpha);
    if (cols[4] != alpha) throw InvalidInput("alpha column inconsistent");
    return p;
}

struct RecheckReport {
    std::size_t sampled = 0, mismatches = 0, skipped = 0;
    std::vector<std::string> details;
};

/// On-disk profile table `profiles.tsv`, keyed by group hash. Reads are shared; writes go
/// through one mutex and the file is replaced atomically on save().
class ProfileCache {
public:
    explicit ProfileCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
        load();
    }

    static std::filesystem::path default_dir() {
        if (const char* env = std::getenv("QRDEG_CACHE_DIR"); env && *env) return env;
        return std::filesystem::current_path() / ".qrdeg-cache";
    }

    std::filesystem::path file() const { return dir_ / "profiles.tsv"; }

    /// A hit requires matching order and permutation degree; anything else is a miss.
    std::optional<QuasirandomProfile> get(std::uint64_t hash, const BigInt& order, std::size_t degree) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = rows_.find(hash);
        if (it == rows_.end() || it->second.order != order || it->second.perm_degree != degree) return std::nullopt;
        return it->second;
    }

    void put(const QuasirandomProfile& p) {
        std::lock_guard<std::mutex> lock(mu_);
        rows_[p.group_hash] = p;
        dirty_ = true;
    }

    bool invalidate(std::uint64_t hash) {
        std::lock_guard<std::mutex> lock(mu_);
        dirty_ = true;
        return rows_.erase(hash) > 0;
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return rows_.size();
    }

    std::vector<std::uint64_t> keys() const {
        std::lock_guard<std::mutex> lock(mu_);
        std::vector<std::uint64_t> k;
        for (const auto& [h, p] : rows_) k.push_back(h);
        return k;
    }

    const std::vector<std::string>& warnings() const { return warnings_; }

    void save() {
        std::lock_guard<std::mutex> lock(mu_);
        auto tmp = dir_ / "profiles.tsv.tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) throw InvalidInput("cache directory not writable: " + dir_.string());
            out << "# hash\torder\tk\td0\talpha\tflags\tdegrees\n";
            for (const auto& [h, p] : rows_) out << serialize_profile(p) << '\n';
        }
        std::filesystem::rename(tmp, file());
        dirty_ = false;
    }

    /// Recomputes a seeded sample of about 10% of the cached rows (at least one) and compares
    /// the serialized lines. Rows without a recompute function are skipped.
    RecheckReport recheck(const std::map<std::uint64_t, std::function<QuasirandomProfile()>>& recompute,
                          std::uint64_t seed = 1, double fraction = 0.1) {
        RecheckReport r;
        std::vector<std::uint64_t> candidates;
        for (auto h : keys()) {
            if (recompute.count(h)) candidates.push_back(h);
            else ++r.skipped;
        }
        std::mt19937_64 rng(seed);
        std::shuffle(candidates.begin(), candidates.end(), rng);
        std::size_t n = candidates.empty() ? 0 : std::max<std::size_t>(1, std::size_t(fraction * double(candidates.size()) + 0.999));
        for (std::size_t i = 0; i < n && i < candidates.size(); ++i) {
            auto h = candidates[i];
            QuasirandomProfile cached;
            {
                std::lock_guard<std::mutex> lock(mu_);
                cached = rows_.at(h);
            }
            auto fresh = recompute.at(h)();
            ++r.sampled;
            if (serialize_profile(fresh) != serialize_profile(cached)) {
                ++r.mismatches;
                r.details.push_back(detail::hex64(h) + ": cached row differs from recomputation");
                put(fresh);
            }
        }
        return r;
    }

private:
    std::filesystem::path dir_;
    std::map<std::uint64_t, QuasirandomProfile> rows_;
    std::vector<std::string> warnings_;
    mutable std::mutex mu_;
    bool dirty_ = false;

    void load() {
        std::ifstream in(file());
        if (!in) return;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            try {
                auto p = parse_profile(line);
                rows_[p.group_hash] = std::move(p);
            } catch (const std::exception& e) {
                warnings_.push_back("profiles.tsv line " + std::to_string(lineno) + " invalidated: " + e.what());
                dirty_ = true;
            }
        }
    }
};

/// Profiles for the named corpus entries, in parallel across entries. Cache hits skip the
/// character computation; misses are computed and stored.
inline std::vector<CorpusRow> compute_profiles(const Corpus& corpus, const std::vector<std::string>& names,
                                               ProfileCache* cache, GroupLimits limits = {},
                                               unsigned threads = std::thread::hardware_concurrency()) {
    std::vector<CorpusRow> rows(names.size());
    std::vector<std::exception_ptr> errors(names.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < names.size();) {
            try {
                Group g = corpus.build(names[i], limits);
                rows[i].name = names[i];
                std::optional<QuasirandomProfile> hit;
                if (cache) hit = cache->get(g.hash(), g.order(), g.degree());
                if (hit) {
                    rows[i].profile = *hit;
                } else {
                    rows[i].profile = profile_from(g, analyze_group(g));
                    if (cache) cache->put(rows[i].profile);
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned n = std::max(1u, std::min<unsigned>(threads ? threads : 1, unsigned(names.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

inline std::vector<std::string> entry_names(const Corpus& c) {
    std::vector<std::string> n;
    for (const auto& e : c.entries()) n.push_back(e.name);
    return n;
}

} // namespace qrdeg

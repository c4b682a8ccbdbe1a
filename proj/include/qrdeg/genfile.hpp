#pragma once

#include "bigint.hpp"
#include "errors.hpp"
#include "permutation.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qrdeg {

/// Parsed generator file.
///
/// Format: first non-comment line `degree <n>`; then one generator per nonblank line, either
/// `img: a1 ... an` (1-based images) or disjoint cycles `(a b c)(d e)`, with `()` for the
/// identity. Lines starting with `#` are comments; `# order <N>` records an expected order.
struct GeneratorFile {
    std::size_t degree = 0;
    std::vector<Permutation> generators;
    std::optional<BigInt> expected_order;
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::uint64_t parse_uint(const std::string& tok, int line) {
    if (tok.empty() || tok.size() > 18) throw ParseError(line, "expected a positive integer, got '" + tok + "'");
    for (char c : tok)
        if (c < '0' || c > '9') throw ParseError(line, "expected a positive integer, got '" + tok + "'");
    return std::stoull(tok);
}

inline Permutation parse_cycles(const std::string& s, std::size_t n, int line) {
    std::vector<std::vector<std::uint64_t>> cycles;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        if (c != '(') throw ParseError(line, std::string("unexpected character '") + c + "' in cycle notation");
        auto close = s.find(')', i);
        auto reopen = s.find('(', i + 1);
        if (close == std::string::npos || (reopen != std::string::npos && reopen < close))
            throw ParseError(line, "unterminated cycle");
        std::string body = s.substr(i + 1, close - i - 1);
        for (char& ch : body)
            if (ch == ',') ch = ' ';
        std::istringstream in(body);
        std::vector<std::uint64_t> cyc;
        std::string tok;
        while (in >> tok) {
            auto v = parse_uint(tok, line);
            if (v < 1 || v > n) throw ParseError(line, "point " + tok + " outside 1.." + std::to_string(n));
            cyc.push_back(v);
        }
        if (!cyc.empty()) cycles.push_back(std::move(cyc));
        i = close + 1;
    }
    try {
        return Permutation::from_cycles(n, cycles);
    } catch (const InvalidInput& e) {
        throw ParseError(line, e.what());
    }
}

} // namespace detail

inline GeneratorFile parse_generator_text(const std::string& text) {
    GeneratorFile f;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool have_degree = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = detail::trim(raw);
        if (s.empty()) continue;
        if (s[0] == '#') {
            std::istringstream c(s.substr(1));
            std::string key, val;
            if (c >> key && key == "order") {
                if (!(c >> val)) throw ParseError(line, "order comment without a value");
                for (char ch : val)
                    if (ch < '0' || ch > '9') throw ParseError(line, "order must be an integer");
                f.expected_order = BigInt(val);
            }
            continue;
        }
        if (!have_degree) {
            std::istringstream c(s);
            std::string key, val, extra;
            if (!(c >> key >> val) || key != "degree" || (c >> extra))
                throw ParseError(line, "expected 'degree <n>'");
            f.degree = detail::parse_uint(val, line);
            if (f.degree == 0) throw ParseError(line, "degree must be positive");
            have_degree = true;
            continue;
        }
        if (s.rfind("img:", 0) == 0) {
            std::istringstream c(s.substr(4));
            std::vector<std::uint64_t> imgs;
            std::string tok;
            while (c >> tok) imgs.push_back(detail::parse_uint(tok, line));
            if (imgs.size() != f.degree)
                throw ParseError(line, "image list has " + std::to_string(imgs.size()) + " entries, expected " +
                                           std::to_string(f.degree));
            try {
                f.generators.push_back(Permutation::from_images_1based(imgs));
            } catch (const InvalidInput& e) {
                throw ParseError(line, e.what());
            }
        } else {
            f.generators.push_back(detail::parse_cycles(s, f.degree, line));
        }
    }
    if (!have_degree) throw ParseError(line, "missing 'degree <n>' line");
    if (f.generators.empty()) throw ParseError(line, "no generators");
    return f;
}

inline GeneratorFile read_generator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open generator file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_generator_text(ss.str());
}

inline std::string format_generator_file(const std::vector<Permutation>& gens,
                                         const std::optional<BigInt>& order = std::nullopt) {
    std::string out;
    if (order) out += "# order " + order->str() + "\n";
    out += "degree " + std::to_string(gens.empty() ? 0 : gens[0].degree()) + "\n";
    for (const auto& g : gens) out += g.to_cycle_string() + "\n";
    return out;
}

} // namespace qrdeg

#pragma once

// Conjunctions over words and bit strings, and DNFs built from them.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "model.hpp"

namespace glnlab {

// Delta(x_{i_1}, y_1) ... Delta(x_{i_k}, y_k), indices strictly increasing.
struct ProperTerm {
    std::vector<std::pair<std::uint64_t, Value>> pairs;

    std::size_t size() const { return pairs.size(); }

    friend bool operator==(const ProperTerm&, const ProperTerm&) = default;
    friend auto operator<=>(const ProperTerm&, const ProperTerm&) = default;
};

// Conjunction of literals "bit at position pos equals value".
struct BitTerm {
    std::vector<std::pair<std::uint64_t, std::uint8_t>> literals;

    std::size_t size() const { return literals.size(); }

    friend bool operator==(const BitTerm&, const BitTerm&) = default;
    friend auto operator<=>(const BitTerm&, const BitTerm&) = default;
};

inline void validate(const ProperTerm& c, const Params& p) {
    for (std::size_t j = 0; j < c.pairs.size(); ++j) {
        const auto [i, y] = c.pairs[j];
        if (i >= p.N) throw EncodingError("proper term index " + std::to_string(i) + " >= N");
        if (y >= p.M) throw EncodingError("proper term value " + std::to_string(y) + " >= M");
        if (j > 0 && c.pairs[j - 1].first >= i) {
            throw EncodingError("proper term indices must be strictly increasing");
        }
    }
}

inline void validate(const BitTerm& c, std::uint64_t n) {
    std::vector<std::uint64_t> seen;
    seen.reserve(c.size());
    for (const auto& [pos, bit] : c.literals) {
        if (pos >= n) throw EncodingError("literal position " + std::to_string(pos) + " >= n");
        if (bit > 1) throw EncodingError("literal value must be 0 or 1");
        seen.push_back(pos);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw EncodingError("bit term repeats a position");
    }
}

inline ProperTerm make_proper_term(std::vector<std::pair<std::uint64_t, Value>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    return ProperTerm{std::move(pairs)};
}

inline BitTerm make_bit_term(std::vector<std::pair<std::uint64_t, std::uint8_t>> literals) {
    std::sort(literals.begin(), literals.end());
    return BitTerm{std::move(literals)};
}

inline bool eval_term(const ProperTerm& c, const Word& x) {
    for (const auto& [i, y] : c.pairs) {
        if (i >= x.size()) throw EncodingError("proper term index out of range");
        if (x[i] != y) return false;
    }
    return true;
}

inline bool eval_term(const BitTerm& c, const BitString& b) {
    for (const auto& [pos, bit] : c.literals) {
        if (pos >= b.size()) throw EncodingError("literal position out of range");
        if (b[pos] != bit) return false;
    }
    return true;
}

inline bool eval_term(const BitTerm& c, const Word& x, const Params& p) {
    const auto m = static_cast<std::uint64_t>(p.m);
    for (const auto& [pos, bit] : c.literals) {
        const std::uint64_t i = pos / m;
        if (i >= x.size()) throw EncodingError("literal position out of range");
        const std::uint64_t shift = m - 1 - pos % m;
        if (((x[i] >> shift) & 1u) != bit) return false;
    }
    return true;
}

// Term on an n-bit point stored big-endian (see point_bit).
inline bool eval_term_point(const BitTerm& c, std::uint64_t point, std::uint64_t n) {
    for (const auto& [pos, bit] : c.literals) {
        if (point_bit(point, n, pos) != static_cast<bool>(bit)) return false;
    }
    return true;
}

// Delta(x_i, y) spelled out as m literals.
inline BitTerm to_bit_term(const ProperTerm& c, const Params& p) {
    BitTerm out;
    const auto m = static_cast<std::uint64_t>(p.m);
    for (const auto& [i, y] : c.pairs) {
        for (std::uint64_t j = 0; j < m; ++j) {
            out.literals.emplace_back(i * m + j, static_cast<std::uint8_t>((y >> (m - 1 - j)) & 1u));
        }
    }
    return out;
}

// Coordinates touched by a bit term, ascending.
inline std::vector<std::uint64_t> touched_coordinates(const BitTerm& c, const Params& p) {
    std::vector<std::uint64_t> coords;
    for (const auto& lit : c.literals) coords.push_back(lit.first / static_cast<std::uint64_t>(p.m));
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    return coords;
}

// For each touched coordinate, the values consistent with the literals on it.
inline std::vector<std::pair<std::uint64_t, std::vector<Value>>> coordinate_patterns(
    const BitTerm& c, const Params& p) {
    validate(c, p.n);
    const auto m = static_cast<std::uint64_t>(p.m);
    std::map<std::uint64_t, std::pair<Value, Value>> fixed;  // coord -> (mask, bits)
    for (const auto& [pos, bit] : c.literals) {
        auto& [mask, bits] = fixed[pos / m];
        const Value sel = Value{1} << (m - 1 - pos % m);
        mask |= sel;
        if (bit) bits |= sel;
    }
    std::vector<std::pair<std::uint64_t, std::vector<Value>>> out;
    for (const auto& [coord, mb] : fixed) {
        std::vector<Value> allowed;
        for (Value v = 0; v < p.M; ++v) {
            if ((v & mb.first) == mb.second) allowed.push_back(v);
        }
        out.emplace_back(coord, std::move(allowed));
    }
    return out;
}

inline constexpr std::uint64_t kMaxLiftSize = std::uint64_t{1} << 20;

// All proper terms on exactly the coordinates touched by c that imply c; they
// partition the event c, so probabilities add over the returned set.
inline std::vector<ProperTerm> lift_bit_term(const BitTerm& c, const Params& p) {
    const auto patterns = coordinate_patterns(c, p);
    std::uint64_t total = 1;
    for (const auto& [coord, allowed] : patterns) {
        total *= allowed.size();
        if (total > kMaxLiftSize) {
            throw ScaleError("lifting would produce more than 2^20 proper terms");
        }
    }
    std::vector<ProperTerm> out;
    out.reserve(total);
    std::vector<std::size_t> digit(patterns.size(), 0);
    for (;;) {
        ProperTerm t;
        for (std::size_t j = 0; j < patterns.size(); ++j) {
            t.pairs.emplace_back(patterns[j].first, patterns[j].second[digit[j]]);
        }
        out.push_back(std::move(t));
        std::size_t j = 0;
        while (j < digit.size() && ++digit[j] == patterns[j].second.size()) digit[j++] = 0;
        if (j == digit.size()) break;
    }
    return out;
}

// A DNF over bit literals or over Delta factors. Width is counted in the unit
// of its terms: literals for bit DNFs, Delta factors for proper DNFs.
struct Dnf {
    enum class Kind { bit, proper };

    Kind kind = Kind::bit;
    std::vector<BitTerm> bit_terms;
    std::vector<ProperTerm> proper_terms;

    static Dnf of_bits(std::vector<BitTerm> terms) {
        Dnf f;
        f.kind = Kind::bit;
        f.bit_terms = std::move(terms);
        return f;
    }

    static Dnf of_proper(std::vector<ProperTerm> terms) {
        Dnf f;
        f.kind = Kind::proper;
        f.proper_terms = std::move(terms);
        return f;
    }

    std::size_t term_count() const {
        return kind == Kind::bit ? bit_terms.size() : proper_terms.size();
    }

    bool empty() const { return term_count() == 0; }

    std::size_t width() const {
        std::size_t w = 0;
        for (const auto& t : bit_terms) w = std::max(w, t.size());
        for (const auto& t : proper_terms) w = std::max(w, t.size());
        return w;
    }

    // The same formula over bit literals.
    Dnf as_bits(const Params& p) const {
        if (kind == Kind::bit) return *this;
        std::vector<BitTerm> terms;
        for (const auto& t : proper_terms) terms.push_back(to_bit_term(t, p));
        return of_bits(std::move(terms));
    }
};

inline bool eval_dnf(const Dnf& f, const Word& x, const Params& p) {
    if (f.kind == Dnf::Kind::proper) {
        for (const auto& t : f.proper_terms) {
            if (eval_term(t, x)) return true;
        }
        return false;
    }
    for (const auto& t : f.bit_terms) {
        if (eval_term(t, x, p)) return true;
    }
    return false;
}

inline bool eval_dnf(const Dnf& f, const BitString& b, const Params& p) {
    if (f.kind == Dnf::Kind::proper) return eval_dnf(f, decode(b, p), p);
    for (const auto& t : f.bit_terms) {
        if (eval_term(t, b)) return true;
    }
    return false;
}

inline std::string describe(const ProperTerm& c) {
    std::string s;
    for (const auto& [i, y] : c.pairs) {
        if (!s.empty()) s += "*";
        s += "D(x" + std::to_string(i) + "," + std::to_string(y) + ")";
    }
    return s.empty() ? "1" : s;
}

inline std::string describe(const BitTerm& c) {
    std::string s;
    for (const auto& [pos, bit] : c.literals) {
        if (!s.empty()) s += "*";
        s += (bit ? "b" : "~b") + std::to_string(pos);
    }
    return s.empty() ? "1" : s;
}

inline std::string describe(const Dnf& f) {
    std::string s;
    const auto add = [&](const std::string& t) { s += (s.empty() ? "" : " | ") + t; };
    for (const auto& t : f.bit_terms) add(describe(t));
    for (const auto& t : f.proper_terms) add(describe(t));
    return s.empty() ? "0" : s;
}

}  // namespace glnlab

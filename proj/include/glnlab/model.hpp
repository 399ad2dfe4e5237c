#pragma once

// Instance parameters, words over the alphabet {0..M-1}, their bit encoding,
// histograms and the surjectivity predicate.
//
// Values are 0-based: the alphabet {0, ..., M-1} stands for [M] = {1, ..., M}.
// Coordinate i of a word occupies bit positions i*m ... i*m+m-1 of its encoding,
// most significant bit first.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace glnlab {

struct Params {
    int m = 0;            // bits per coordinate
    std::uint64_t M = 0;  // alphabet size, 2^m
    std::uint64_t N = 0;  // number of coordinates, ceil(M m ln 2)
    std::uint64_t n = 0;  // total bits, N m

    friend bool operator==(const Params&, const Params&) = default;
};

inline constexpr int kMaxM = 24;

inline Params params_from_m(int m) {
    if (m < 1 || m > kMaxM) {
        throw ParameterError("m must lie in [1, " + std::to_string(kMaxM) + "], got " +
                             std::to_string(m));
    }
    using Float = boost::multiprecision::cpp_bin_float_50;
    Params p;
    p.m = m;
    p.M = std::uint64_t{1} << m;
    const Float product = Float(p.M) * Float(m) * boost::multiprecision::log(Float(2));
    p.N = static_cast<std::uint64_t>(boost::multiprecision::ceil(product));
    p.n = p.N * static_cast<std::uint64_t>(m);
    return p;
}

using Value = std::uint32_t;

struct Word {
    std::vector<Value> coords;

    Word() = default;
    explicit Word(std::vector<Value> c) : coords(std::move(c)) {}
    Word(std::initializer_list<Value> c) : coords(c) {}

    std::size_t size() const { return coords.size(); }
    Value operator[](std::size_t i) const { return coords[i]; }
    Value& operator[](std::size_t i) { return coords[i]; }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;
};

struct BitString {
    std::vector<std::uint8_t> bits;

    BitString() = default;
    explicit BitString(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

    std::size_t size() const { return bits.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits[i]; }
    std::uint8_t& operator[](std::size_t i) { return bits[i]; }

    friend bool operator==(const BitString&, const BitString&) = default;
};

struct Histogram {
    std::vector<std::uint64_t> counts;  // counts[v] = #{i : x_i = v}

    friend bool operator==(const Histogram&, const Histogram&) = default;
};

inline void validate_word(const Word& x, const Params& p) {
    if (x.size() != p.N) {
        throw EncodingError("word has " + std::to_string(x.size()) + " coordinates, expected " +
                            std::to_string(p.N));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= p.M) {
            throw EncodingError("coordinate " + std::to_string(i) + " holds " +
                                std::to_string(x[i]) + " >= M = " + std::to_string(p.M));
        }
    }
}

inline BitString encode(const Word& x, const Params& p) {
    validate_word(x, p);
    BitString b;
    b.bits.resize(p.n);
    const auto m = static_cast<std::size_t>(p.m);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            b.bits[i * m + j] = static_cast<std::uint8_t>((x[i] >> (m - 1 - j)) & 1u);
        }
    }
    return b;
}

inline Word decode(const BitString& b, const Params& p) {
    if (b.size() != p.n) {
        throw EncodingError("bit string has length " + std::to_string(b.size()) +
                            ", expected " + std::to_string(p.n));
    }
    const auto m = static_cast<std::size_t>(p.m);
    Word x;
    x.coords.resize(p.N);
    for (std::size_t i = 0; i < p.N; ++i) {
        Value v = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const auto bit = b.bits[i * m + j];
            if (bit > 1) throw EncodingError("bit string holds a non-binary entry");
            v = (v << 1) | bit;
        }
        x[i] = v;
    }
    return x;
}

inline std::set<Value> image(const Word& x) { return {x.coords.begin(), x.coords.end()}; }

inline Histogram histogram(const Word& x, const Params& p) {
    Histogram h;
    h.counts.assign(p.M, 0);
    for (Value v : x.coords) {
        if (v >= p.M) throw EncodingError("value out of alphabet");
        ++h.counts[v];
    }
    return h;
}

// |Im_X|, without materializing the set.
inline std::uint64_t image_size(const Word& x, const Params& p) {
    std::vector<std::uint8_t> seen(p.M, 0);
    std::uint64_t distinct = 0;
    for (Value v : x.coords) {
        if (!seen[v]) {
            seen[v] = 1;
            ++distinct;
        }
    }
    return distinct;
}

// Values of the alphabet absent from X, ascending.
inline std::vector<Value> missing_values(const Word& x, const Params& p) {
    std::vector<std::uint8_t> seen(p.M, 0);
    for (Value v : x.coords) seen[v] = 1;
    std::vector<Value> out;
    for (std::uint64_t v = 0; v < p.M; ++v) {
        if (!seen[v]) out.push_back(static_cast<Value>(v));
    }
    return out;
}

inline bool f_surj(const Word& x, const Params& p) { return image_size(x, p) == p.M; }

inline bool f_surj_bits(const BitString& b, const Params& p) { return f_surj(decode(b, p), p); }

// --- Dense indexing for exhaustive enumeration -------------------------------
//
// A word is identified with the integer whose base-M digits are its coordinates,
// coordinate 0 most significant. Under the MSB-first encoding this is the same
// integer as the bit string read big-endian, so word index == point index.

inline std::uint64_t word_count(const Params& p) {
    if (p.n > 62) throw ScaleError("word space too large to index");
    return std::uint64_t{1} << p.n;
}

inline std::uint64_t word_index(const Word& x, const Params& p) {
    std::uint64_t idx = 0;
    for (Value v : x.coords) idx = (idx << p.m) | v;
    return idx;
}

inline Word word_from_index(std::uint64_t idx, const Params& p) {
    Word x;
    x.coords.resize(p.N);
    const std::uint64_t mask = p.M - 1;
    for (std::size_t i = p.N; i-- > 0;) {
        x[i] = static_cast<Value>(idx & mask);
        idx >>= p.m;
    }
    return x;
}

// Bit at global position `pos` of an n-bit point stored big-endian.
inline bool point_bit(std::uint64_t point, std::uint64_t n, std::uint64_t pos) {
    return (point >> (n - 1 - pos)) & 1u;
}

inline std::uint64_t position_mask(std::uint64_t n, std::uint64_t pos) {
    return std::uint64_t{1} << (n - 1 - pos);
}

inline BitString bits_from_point(std::uint64_t point, std::uint64_t n) {
    BitString b;
    b.bits.resize(n);
    for (std::uint64_t j = 0; j < n; ++j) b.bits[j] = point_bit(point, n, j) ? 1 : 0;
    return b;
}

inline std::uint64_t point_from_bits(const BitString& b) {
    std::uint64_t point = 0;
    for (auto bit : b.bits) point = (point << 1) | bit;
    return point;
}

inline std::string to_bit_text(const BitString& b) {
    std::string s;
    s.reserve(b.size());
    for (auto bit : b.bits) s.push_back(bit ? '1' : '0');
    return s;
}

inline BitString from_bit_text(const std::string& s) {
    BitString b;
    b.bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw EncodingError("bit text may only contain 0 and 1");
        b.bits.push_back(c == '1' ? 1 : 0);
    }
    return b;
}

}  // namespace glnlab

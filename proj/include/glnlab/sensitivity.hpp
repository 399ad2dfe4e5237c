#pragma once

// Sensitivity, block sensitivity and explicit disjoint-block certificates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "circuits.hpp"
#include "dist.hpp"
#include "errors.hpp"
#include "fooling.hpp"
#include "model.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace glnlab {

using BoolFn = std::function<bool(const BitString&)>;

inline BoolFn surj_function(const Params& p) {
    return [p](const BitString& b) { return f_surj_bits(b, p); };
}

inline BoolFn tribes_function(const TribesParams& t) {
    return [t](const BitString& b) { return f_tribes(decode(b, t.as_params()), t); };
}

inline BitString flip(BitString b, const std::vector<std::uint64_t>& block) {
    for (std::uint64_t pos : block) {
        if (pos >= b.size()) throw EncodingError("block position " + std::to_string(pos) + " >= n");
        b[pos] ^= 1u;
    }
    return b;
}

inline std::uint64_t sensitivity_at(const BoolFn& f, const BitString& x) {
    const bool base = f(x);
    std::uint64_t s = 0;
    BitString y = x;
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] ^= 1u;
        if (f(y) != base) ++s;
        y[i] ^= 1u;
    }
    return s;
}

// Averages of s_X(f) over U, overall and conditioned on f(X).
struct AvgSensitivity {
    Mode mode = Mode::exact;
    std::uint64_t points = 0;
    std::uint64_t zero_points = 0;
    std::uint64_t one_points = 0;
    ExactProb overall;  // exact mode
    ExactProb on_zero;
    ExactProb on_one;
    double overall_value = 0;
    double on_zero_value = 0;
    double on_one_value = 0;
};

inline constexpr std::uint64_t kMaxExactSensitivityBits = 20;

inline AvgSensitivity finish_avg(Mode mode, std::uint64_t points, std::uint64_t zeros,
                                 std::uint64_t sum0, std::uint64_t sum1) {
    AvgSensitivity r;
    r.mode = mode;
    r.points = points;
    r.zero_points = zeros;
    r.one_points = points - zeros;
    const auto ratio = [](std::uint64_t num, std::uint64_t den) {
        return den == 0 ? ExactProb(0) : make_rational(static_cast<long>(num), den);
    };
    r.overall = ratio(sum0 + sum1, points);
    r.on_zero = ratio(sum0, zeros);
    r.on_one = ratio(sum1, points - zeros);
    r.overall_value = to_double(r.overall);
    r.on_zero_value = to_double(r.on_zero);
    r.on_one_value = to_double(r.on_one);
    return r;
}

inline AvgSensitivity avg_sensitivity_exact(const BoolFn& f, std::uint64_t n) {
    if (n > kMaxExactSensitivityBits) throw ScaleError("exact average sensitivity needs n <= 20");
    std::uint64_t zeros = 0, sum0 = 0, sum1 = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t point = 0; point < total; ++point) {
        const BitString x = bits_from_point(point, n);
        const std::uint64_t s = sensitivity_at(f, x);
        if (f(x)) {
            sum1 += s;
        } else {
            ++zeros;
            sum0 += s;
        }
    }
    return finish_avg(Mode::exact, total, zeros, sum0, sum1);
}

inline AvgSensitivity avg_sensitivity_sampled(const BoolFn& f, std::uint64_t n, std::uint64_t samples,
                                              Rng& rng) {
    std::uint64_t zeros = 0, sum0 = 0, sum1 = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        BitString x;
        x.bits.resize(n);
        for (auto& bit : x.bits) bit = static_cast<std::uint8_t>(rng.below(2));
        const std::uint64_t sx = sensitivity_at(f, x);
        if (f(x)) {
            sum1 += sx;
        } else {
            ++zeros;
            sum0 += sx;
        }
    }
    return finish_avg(Mode::sampled, samples, zeros, sum0, sum1);
}

// Exact at m <= 2, sampled above.
inline AvgSensitivity avg_sensitivity(const BoolFn& f, const Params& p, Mode mode,
                                      std::uint64_t samples, Rng& rng) {
    if (mode == Mode::exact) {
        require_word_enumerable(p);
        return avg_sensitivity_exact(f, p.n);
    }
    return avg_sensitivity_sampled(f, p.n, samples, rng);
}

// --- Block families -----------------------------------------------------------

struct BlockFamily {
    std::vector<std::vector<std::uint64_t>> blocks;  // global bit positions, ascending
    BitString anchor;
    std::string target;
    bool verified = false;

    std::size_t size() const { return blocks.size(); }
};

struct BlockCheck {
    bool pass = true;
    std::size_t count = 0;
    std::string reason;
    std::vector<std::size_t> witness;  // offending block index, or overlapping pair
};

inline BlockCheck verify_block_family(const BlockFamily& bf, const BoolFn& f) {
    BlockCheck out;
    out.count = bf.blocks.size();
    const auto fail = [&](std::string why, std::vector<std::size_t> witness) {
        out.pass = false;
        out.reason = std::move(why);
        out.witness = std::move(witness);
        return out;
    };
    std::vector<std::ptrdiff_t> owner(bf.anchor.size(), -1);
    for (std::size_t j = 0; j < bf.blocks.size(); ++j) {
        if (bf.blocks[j].empty()) return fail("empty block", {j});
        for (std::uint64_t pos : bf.blocks[j]) {
            if (pos >= bf.anchor.size()) return fail("position out of range", {j});
            if (owner[pos] >= 0) {
                return fail("blocks overlap at bit " + std::to_string(pos),
                            {static_cast<std::size_t>(owner[pos]), j});
            }
            owner[pos] = static_cast<std::ptrdiff_t>(j);
        }
    }
    const bool base = f(bf.anchor);
    for (std::size_t j = 0; j < bf.blocks.size(); ++j) {
        if (f(flip(bf.anchor, bf.blocks[j])) == base) return fail("flip leaves value unchanged", {j});
    }
    return out;
}

inline void seal(BlockFamily& bf, const BoolFn& f) {
    const BlockCheck check = verify_block_family(bf, f);
    if (!check.pass) {
        throw std::logic_error("constructed block family failed verification: " + check.reason);
    }
    bf.verified = true;
}

// B_{y,b} = { bit b of coordinate i : x_i = y }. Flipping it moves every
// occurrence of y elsewhere, so y leaves the image.
inline BlockFamily surj_one_input_blocks(const Word& x, const Params& p) {
    validate_word(x, p);
    if (!f_surj(x, p)) throw PreconditionError("one-input certificate needs a surjective word");
    BlockFamily bf;
    bf.anchor = encode(x, p);
    bf.target = "surj";
    const auto m = static_cast<std::uint64_t>(p.m);
    for (Value y = 0; y < p.M; ++y) {
        for (std::uint64_t b = 0; b < m; ++b) {
            std::vector<std::uint64_t> block;
            for (std::uint64_t i = 0; i < p.N; ++i) {
                if (x[i] == y) block.push_back(i * m + b);
            }
            bf.blocks.push_back(std::move(block));
        }
    }
    seal(bf, surj_function(p));
    return bf;
}

// A(X): coordinates whose value occurs at least twice.
inline std::vector<std::uint64_t> repeated_coordinates(const Word& x, const Params& p) {
    const Histogram h = histogram(x, p);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < x.size(); ++i) {
        if (h.counts[x[i]] >= 2) out.push_back(i);
    }
    return out;
}

// For |Im| = M-1: one block per i in A(X), the bits where x_i differs from the
// missing value. Setting x_i to the missing value keeps x_i's old value present.
inline BlockFamily surj_zero_input_blocks(const Word& x, const Params& p) {
    validate_word(x, p);
    const auto missing = missing_values(x, p);
    if (missing.size() != 1) {
        throw PreconditionError("zero-input certificate needs |Im| = M-1, got " +
                                std::to_string(p.M - missing.size()));
    }
    const Value z = missing.front();
    BlockFamily bf;
    bf.anchor = encode(x, p);
    bf.target = "surj";
    const auto m = static_cast<std::uint64_t>(p.m);
    for (std::uint64_t i : repeated_coordinates(x, p)) {
        std::vector<std::uint64_t> block;
        for (std::uint64_t b = 0; b < m; ++b) {
            if (((x[i] ^ z) >> (m - 1 - b)) & 1u) block.push_back(i * m + b);
        }
        bf.blocks.push_back(std::move(block));
    }
    seal(bf, surj_function(p));
    return bf;
}

// Tribes 0-input: set any coordinate to the marked value.
inline BlockFamily tribes_zero_input_blocks(const Word& x, const TribesParams& t) {
    const Params p = t.as_params();
    validate_word(x, p);
    if (f_tribes(x, t)) throw PreconditionError("Tribes zero-input certificate needs f = 0");
    BlockFamily bf;
    bf.anchor = encode(x, p);
    bf.target = "tribes";
    const auto m = static_cast<std::uint64_t>(t.width);
    for (std::uint64_t i = 0; i < t.N; ++i) {
        std::vector<std::uint64_t> block;
        for (std::uint64_t b = 0; b < m; ++b) {
            if (((x[i] ^ t.marked) >> (m - 1 - b)) & 1u) block.push_back(i * m + b);
        }
        bf.blocks.push_back(std::move(block));
    }
    seal(bf, tribes_function(t));
    return bf;
}

// --- Exact block sensitivity (small n) ----------------------------------------

inline constexpr std::uint64_t kMaxBruteForceBits = 10;

struct TruthTable {
    std::uint64_t n = 0;
    std::vector<std::uint8_t> values;  // indexed by big-endian point
};

inline TruthTable truth_table(const BoolFn& f, std::uint64_t n) {
    if (n > kMaxBruteForceBits) throw ScaleError("truth table brute force needs n <= 10");
    TruthTable t;
    t.n = n;
    t.values.resize(std::size_t{1} << n);
    for (std::uint64_t point = 0; point < t.values.size(); ++point) {
        t.values[point] = f(bits_from_point(point, n));
    }
    return t;
}

// Largest disjoint family of sensitive blocks at x, by dynamic programming over
// subsets of positions (3^n work).
inline BlockFamily max_block_family(const TruthTable& t, std::uint64_t x, std::string target = "") {
    const std::size_t full = t.values.size();
    const std::uint8_t base = t.values[x];
    std::vector<int> best(full, 0);
    std::vector<std::uint64_t> pick(full, 0);  // block used at this mask, 0 = skip low bit
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        const std::uint64_t low = mask & (~mask + 1);
        best[mask] = best[mask ^ low];
        const std::uint64_t rest = mask ^ low;
        // submasks of rest, each joined with low
        for (std::uint64_t sub = rest;; sub = (sub - 1) & rest) {
            const std::uint64_t block = sub | low;
            if (t.values[x ^ block] != base && best[mask ^ block] + 1 > best[mask]) {
                best[mask] = best[mask ^ block] + 1;
                pick[mask] = block;
            }
            if (sub == 0) break;
        }
    }
    BlockFamily bf;
    bf.anchor = bits_from_point(x, t.n);
    bf.target = std::move(target);
    for (std::uint64_t mask = full - 1; mask != 0;) {
        const std::uint64_t block = pick[mask];
        if (block == 0) {
            mask ^= mask & (~mask + 1);
            continue;
        }
        std::vector<std::uint64_t> positions;
        for (std::uint64_t pos = 0; pos < t.n; ++pos) {
            if (block & position_mask(t.n, pos)) positions.push_back(pos);
        }
        bf.blocks.push_back(std::move(positions));
        mask ^= block;
    }
    std::sort(bf.blocks.begin(), bf.blocks.end());
    return bf;
}

inline std::uint64_t block_sensitivity(const TruthTable& t, std::uint64_t x) {
    return max_block_family(t, x).size();
}

// --- Certified average block sensitivity for f_surj ---------------------------

// Certified bs at X: Mm on 1-inputs, |A(X)| when |Im| = M-1, else 0.
inline std::uint64_t certified_surj_bs(const Word& x, const Params& p, bool* verified = nullptr) {
    const std::uint64_t im = image_size(x, p);
    BlockFamily bf;
    if (im == p.M) {
        bf = surj_one_input_blocks(x, p);
    } else if (im + 1 == p.M) {
        bf = surj_zero_input_blocks(x, p);
    } else {
        if (verified) *verified = true;
        return 0;
    }
    if (verified) *verified = bf.verified;
    return bf.size();
}

struct BsAverageReport {
    Mode mode = Mode::exact;
    std::uint64_t points = 0;
    std::uint64_t one_inputs = 0;
    std::uint64_t covered_zero_inputs = 0;  // |Im| = M-1
    std::uint64_t other_zero_inputs = 0;
    std::uint64_t min_one_bs = 0;
    std::uint64_t min_covered_zero_bs = 0;
    bool all_verified = true;
    bool pigeonhole_ok = true;  // |A(X)| >= N-M on every covered zero input
    bool ones_exact = true;     // every 1-input certified at exactly Mm
    ExactProb bs_one;           // certified averages; exact mode only
    ExactProb bs_zero;
    ExactProb bs_all;
    ExactProb covered_mass;     // Pr_U[|Im| = M-1]
    double bs_one_value = 0;
    double bs_zero_value = 0;
    double bs_all_value = 0;
    double covered_mass_value = 0;
    double normalized = 0;  // bs_all / (n / log2 n)
};

class BsAccumulator {
public:
    explicit BsAccumulator(const Params& p) : p_(p) {}

    void add(const Word& x) {
        ++points_;
        bool ok = false;
        const std::uint64_t im = image_size(x, p_);
        const std::uint64_t bs = certified_surj_bs(x, p_, &ok);
        all_verified_ = all_verified_ && ok;
        if (im == p_.M) {
            ++ones_;
            sum_one_ += bs;
            min_one_ = std::min(min_one_, bs);
            ones_exact_ = ones_exact_ && bs == p_.M * static_cast<std::uint64_t>(p_.m);
        } else if (im + 1 == p_.M) {
            ++covered_;
            sum_zero_ += bs;
            min_zero_ = std::min(min_zero_, bs);
            if (p_.N >= p_.M && bs < p_.N - p_.M) pigeonhole_ok_ = false;
        } else {
            ++other_;
        }
    }

    BsAverageReport finish(Mode mode) const {
        BsAverageReport r;
        r.mode = mode;
        r.points = points_;
        r.one_inputs = ones_;
        r.covered_zero_inputs = covered_;
        r.other_zero_inputs = other_;
        r.min_one_bs = ones_ ? min_one_ : 0;
        r.min_covered_zero_bs = covered_ ? min_zero_ : 0;
        r.all_verified = all_verified_;
        r.pigeonhole_ok = pigeonhole_ok_;
        r.ones_exact = ones_exact_;
        const auto ratio = [](std::uint64_t num, std::uint64_t den) {
            return den == 0 ? ExactProb(0) : make_rational(static_cast<long>(num), den);
        };
        r.bs_one = ratio(sum_one_, ones_);
        r.bs_zero = ratio(sum_zero_, covered_ + other_);
        r.bs_all = ratio(sum_one_ + sum_zero_, points_);
        r.covered_mass = ratio(covered_, points_);
        r.bs_one_value = to_double(r.bs_one);
        r.bs_zero_value = to_double(r.bs_zero);
        r.bs_all_value = to_double(r.bs_all);
        r.covered_mass_value = to_double(r.covered_mass);
        const double n = static_cast<double>(p_.n);
        r.normalized = n > 1 ? r.bs_all_value / (n / std::log2(n)) : 0.0;
        return r;
    }

private:
    Params p_;
    std::uint64_t points_ = 0, ones_ = 0, covered_ = 0, other_ = 0;
    std::uint64_t sum_one_ = 0, sum_zero_ = 0;
    std::uint64_t min_one_ = UINT64_MAX, min_zero_ = UINT64_MAX;
    bool all_verified_ = true, pigeonhole_ok_ = true, ones_exact_ = true;
};

inline BsAverageReport avg_bs_lower_bound_exact(const Params& p) {
    require_word_enumerable(p);
    BsAccumulator acc(p);
    const std::uint64_t total = word_count(p);
    for (std::uint64_t idx = 0; idx < total; ++idx) acc.add(word_from_index(idx, p));
    return acc.finish(Mode::exact);
}

inline BsAverageReport avg_bs_lower_bound(const Params& p, std::uint64_t samples, Rng& rng) {
    if (p.m < 2) throw ParameterError("certified block sensitivity needs m >= 2");
    BsAccumulator acc(p);
    for (std::uint64_t s = 0; s < samples; ++s) acc.add(sample_uniform(p, rng));
    return acc.finish(Mode::sampled);
}

}  // namespace glnlab

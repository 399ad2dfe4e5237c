#pragma once

// The uniform distribution U over words, the perturbed distribution D = D(U),
// its fixed-y variant D_y and the inverse procedure D^inv, as seeded samplers
// and as exact laws.
//
// Sampler draw order: perturb draws y first, then one replacement per coordinate
// equal to y in increasing i; inverse_perturb draws y first, then one Bernoulli(1/M)
// per coordinate in increasing i.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace glnlab {

// --- Samplers ----------------------------------------------------------------

inline Word sample_uniform(const Params& p, Rng& rng) {
    Word x;
    x.coords.resize(p.N);
    for (auto& v : x.coords) v = static_cast<Value>(rng.below(p.M));
    return x;
}

// Uniform element of {0..M-1} \ {y}.
inline Value draw_other_than(Value y, const Params& p, Rng& rng) {
    const auto r = static_cast<Value>(rng.below(p.M - 1));
    return r < y ? r : r + 1;
}

inline Word perturb_fixed(const Word& x, Value y, const Params& p, Rng& rng) {
    if (y >= p.M) throw ParameterError("perturbation value y must be < M");
    Word z = x;
    for (auto& v : z.coords) {
        if (v == y) v = draw_other_than(y, p, rng);
    }
    return z;
}

inline Word perturb(const Word& x, const Params& p, Rng& rng) {
    const auto y = static_cast<Value>(rng.below(p.M));
    return perturb_fixed(x, y, p, rng);
}

inline Word sample_d(const Params& p, Rng& rng) { return perturb(sample_uniform(p, rng), p, rng); }

inline Word inverse_perturb(const Word& z, const Params& p, Rng& rng) {
    const auto absent = missing_values(z, p);
    if (absent.empty()) {
        throw PreconditionError("inverse perturbation is undefined on a surjective word");
    }
    const Value y = absent[rng.below(absent.size())];
    Word x = z;
    for (auto& v : x.coords) {
        if (rng.bernoulli(1, p.M)) v = y;
    }
    return x;
}

// --- Exact laws (dense, indexed by word_index) -------------------------------

using WordLaw = std::vector<ExactProb>;

inline constexpr int kMaxExactWordM = 2;

inline void require_word_enumerable(const Params& p) {
    if (p.m > kMaxExactWordM) {
        throw ScaleError("word-level exact enumeration supports m <= " +
                         std::to_string(kMaxExactWordM) + ", got m = " + std::to_string(p.m));
    }
}

inline WordLaw uniform_law(const Params& p) {
    require_word_enumerable(p);
    return WordLaw(word_count(p), inverse_power(p.M, p.N));
}

// Which version of step (2) the exact engine enumerates. `skip_resample` is a
// mutation hook for exercising the verification suite, never a real distribution.
enum class PerturbProcedure { literal, skip_resample };

namespace detail {

// Calls visit(target_index, weight) for every outcome of D_y applied to word x,
// where weight is the probability of that outcome given x and y.
template <class Visit>
void enumerate_fixed_perturbation(const Word& x, Value y, const Params& p,
                                  PerturbProcedure procedure, Visit&& visit) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == y) hits.push_back(i);
    }
    if (procedure == PerturbProcedure::skip_resample || hits.empty()) {
        visit(word_index(x, p), ExactProb(1));
        return;
    }
    const ExactProb weight = inverse_power(p.M - 1, hits.size());
    // Odometer over ({0..M-1} \ {y})^|hits|, digits in 0..M-2.
    std::vector<Value> digit(hits.size(), 0);
    Word z = x;
    for (;;) {
        for (std::size_t j = 0; j < hits.size(); ++j) z[hits[j]] = digit[j] < y ? digit[j] : digit[j] + 1;
        visit(word_index(z, p), weight);
        std::size_t j = 0;
        while (j < digit.size() && ++digit[j] == p.M - 1) digit[j++] = 0;
        if (j == digit.size()) break;
    }
}

}  // namespace detail

// Law of D(src) obtained by enumerating the two-step procedure literally.
inline WordLaw perturb_law(const WordLaw& src, const Params& p,
                           PerturbProcedure procedure = PerturbProcedure::literal) {
    require_word_enumerable(p);
    WordLaw out(src.size(), ExactProb(0));
    const ExactProb pick_y = make_rational(1, p.M);
    for (std::uint64_t idx = 0; idx < src.size(); ++idx) {
        if (src[idx] == 0) continue;
        const Word x = word_from_index(idx, p);
        const ExactProb base = src[idx] * pick_y;
        for (Value y = 0; y < p.M; ++y) {
            detail::enumerate_fixed_perturbation(
                x, y, p, procedure,
                [&](std::uint64_t target, const ExactProb& w) { out[target] += base * w; });
        }
    }
    return out;
}

inline WordLaw perturb_fixed_law(const WordLaw& src, Value y, const Params& p) {
    require_word_enumerable(p);
    if (y >= p.M) throw ParameterError("perturbation value y must be < M");
    WordLaw out(src.size(), ExactProb(0));
    for (std::uint64_t idx = 0; idx < src.size(); ++idx) {
        if (src[idx] == 0) continue;
        const Word x = word_from_index(idx, p);
        detail::enumerate_fixed_perturbation(
            x, y, p, PerturbProcedure::literal,
            [&](std::uint64_t target, const ExactProb& w) { out[target] += src[idx] * w; });
    }
    return out;
}

// Law of D^inv(src). Throws PreconditionError if src charges a surjective word.
inline WordLaw inverse_perturb_law(const WordLaw& src, const Params& p) {
    require_word_enumerable(p);
    WordLaw out(src.size(), ExactProb(0));
    // flip_weight[t] = (1/M)^t ((M-1)/M)^(N-t)
    std::vector<ExactProb> flip_weight(p.N + 1);
    for (std::uint64_t t = 0; t <= p.N; ++t) {
        flip_weight[t] = ExactProb(big_pow(p.M - 1, p.N - t), big_pow(p.M, p.N));
        flip_weight[t].canonicalize();
    }
    const std::uint64_t subsets = std::uint64_t{1} << p.N;
    for (std::uint64_t idx = 0; idx < src.size(); ++idx) {
        if (src[idx] == 0) continue;
        const Word z = word_from_index(idx, p);
        const auto absent = missing_values(z, p);
        if (absent.empty()) {
            throw PreconditionError("source law charges surjective word " +
                                    std::to_string(idx) + "; inverse perturbation undefined");
        }
        const ExactProb base = src[idx] / ExactProb(static_cast<unsigned long>(absent.size()));
        for (Value y : absent) {
            for (std::uint64_t s = 0; s < subsets; ++s) {
                Word x = z;
                std::uint64_t t = 0;
                for (std::size_t i = 0; i < p.N; ++i) {
                    if ((s >> i) & 1u) {
                        x[i] = y;
                        ++t;
                    }
                }
                out[word_index(x, p)] += base * flip_weight[t];
            }
        }
    }
    return out;
}

inline ExactProb total_mass(const WordLaw& law) {
    ExactProb s(0);
    for (const auto& q : law) s += q;
    return s;
}

// Pr_D[Z] = (#values missing from Z) / (M (M-1)^N): D is the average over the
// missing value y of the uniform law on ({0..M-1} \ {y})^N. Only trusted after
// agreeing with perturb_law (see tests).
inline ExactProb closed_form_pd(const Word& z, const Params& p) {
    const auto absent = missing_values(z, p).size();
    ExactProb q(BigInt(static_cast<unsigned long>(absent)),
                BigInt(static_cast<unsigned long>(p.M)) * big_pow(p.M - 1, p.N));
    q.canonicalize();
    return q;
}

struct WordProbs {
    Params params;
    WordLaw pu;
    WordLaw pd;
    std::vector<Word> words;  // words[idx] = word_from_index(idx)
};

inline WordProbs exact_word_probs(const Params& p,
                                  PerturbProcedure procedure = PerturbProcedure::literal) {
    require_word_enumerable(p);
    WordProbs table{p, uniform_law(p), {}, {}};
    table.pd = perturb_law(table.pu, p, procedure);
    table.words.reserve(table.pu.size());
    for (std::uint64_t idx = 0; idx < table.pu.size(); ++idx) table.words.push_back(word_from_index(idx, p));
    return table;
}

// --- Image-size laws -----------------------------------------------------------

inline constexpr int kMaxSymmetricM = 4;

// Number of surjections from an n-set onto a j-set (inclusion-exclusion).
inline BigInt surjection_count(std::uint64_t n, std::uint64_t j) {
    BigInt total(0);
    for (std::uint64_t i = 0; i <= j; ++i) {
        BigInt term = binomial(j, i) * big_pow(j - i, n);
        if (i % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

struct ImageSizeProbs {
    ExactProb under_u;
    ExactProb under_d;
};

// Pr[|Im_X| = M - k] under U and under D, exactly.
inline ImageSizeProbs exact_symmetric_probs(const Params& p, std::uint64_t k) {
    if (p.m > kMaxSymmetricM) {
        throw ScaleError("symmetric exact engine supports m <= " + std::to_string(kMaxSymmetricM));
    }
    ImageSizeProbs out{ExactProb(0), ExactProb(0)};
    if (k > p.M) return out;
    const std::uint64_t present = p.M - k;
    out.under_u = ExactProb(binomial(p.M, present) * surjection_count(p.N, present),
                            big_pow(p.M, p.N));
    out.under_u.canonicalize();
    // D mixes, over the missing value y, the uniform law on the other M-1 letters.
    if (k >= 1) {
        out.under_d = ExactProb(binomial(p.M - 1, present) * surjection_count(p.N, present),
                                big_pow(p.M - 1, p.N));
        out.under_d.canonicalize();
    }
    return out;
}

// Floating-point occupancy recursion: entry k is Pr[|Im| = M - k] when N values
// are drawn uniformly from an alphabet of `alphabet` letters, padded to length M+1.
inline std::vector<double> occupancy_law_float(std::uint64_t alphabet, std::uint64_t draws,
                                               std::uint64_t M) {
    std::vector<double> q(alphabet + 1, 0.0);  // q[j] = Pr[j distinct so far]
    q[0] = 1.0;
    const double a = static_cast<double>(alphabet);
    for (std::uint64_t t = 0; t < draws; ++t) {
        const std::uint64_t top = std::min<std::uint64_t>(t + 1, alphabet);
        for (std::uint64_t j = top; j >= 1; --j) {
            q[j] = q[j] * (static_cast<double>(j) / a) +
                   q[j - 1] * (static_cast<double>(alphabet - j + 1) / a);
        }
        q[0] = 0.0;
    }
    std::vector<double> by_k(M + 1, 0.0);
    for (std::uint64_t j = 0; j <= alphabet; ++j) by_k[M - j] += q[j];
    return by_k;
}

// Pr[|Im| = M - k], k = 0..M, under U and D in double precision (any m).
struct ImageSizeLawFloat {
    std::vector<double> under_u;
    std::vector<double> under_d;
};

inline ImageSizeLawFloat image_size_law_float(const Params& p) {
    return {occupancy_law_float(p.M, p.N, p.M), occupancy_law_float(p.M - 1, p.N, p.M)};
}

// --- Monte Carlo bookkeeping --------------------------------------------------

struct ProportionEstimate {
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;

    double value() const { return samples ? static_cast<double>(hits) / samples : 0.0; }

    double std_error() const {
        if (samples == 0) return 0.0;
        const double v = value();
        return std::sqrt(v * (1.0 - v) / static_cast<double>(samples));
    }

    // Two-sided 3-sigma half-width; Hoeffding at the same confidence when the
    // count sits too close to 0 or to the sample size for the normal approximation.
    double half_width() const {
        if (samples == 0) return 1.0;
        constexpr std::uint64_t kMinTail = 10;
        if (hits < kMinTail || samples - hits < kMinTail) {
            constexpr double kAlpha = 0.0027;  // two-sided 3 sigma
            return std::sqrt(std::log(2.0 / kAlpha) / (2.0 * static_cast<double>(samples)));
        }
        return 3.0 * std_error();
    }

    ProportionEstimate& operator+=(const ProportionEstimate& o) {
        hits += o.hits;
        samples += o.samples;
        return *this;
    }
};

}  // namespace glnlab

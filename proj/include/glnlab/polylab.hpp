#pragma once

// Multilinear polynomials on {0,1}^n: Fourier coefficients, basis changes,
// term combinations, the fat-content LP and the fooling-bound checks.
//
// Subsets S of positions are bit masks built with position_mask, so the
// character chi_S(x) is (-1)^popcount(x & S) for a big-endian point x.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dist.hpp"
#include "errors.hpp"
#include "fooling.hpp"
#include "model.hpp"
#include "rational.hpp"
#include "simplex.hpp"
#include "terms.hpp"

namespace glnlab {

inline constexpr std::uint64_t kMaxFourierBits = 14;

inline void require_fourier_size(std::uint64_t n) {
    if (n > kMaxFourierBits) {
        throw ScaleError("Fourier transform needs n <= 14, got " + std::to_string(n));
    }
}

template <class T>
T scalar_abs(const T& v) {
    return v < T(0) ? T(-v) : v;
}

template <class T>
double scalar_value(const T& v) {
    if constexpr (kExactScalar<T>) {
        return v.get_d();
    } else {
        return static_cast<double>(v);
    }
}

// 2^-k in the scalar type.
template <class T>
T half_power(std::uint64_t k) {
    if constexpr (kExactScalar<T>) {
        return inverse_power(2, k);
    } else {
        return std::ldexp(T(1), -static_cast<int>(k));
    }
}

inline int subset_size(std::uint64_t s) { return std::popcount(s); }

// f(x) = sum_S coeffs[S] chi_S(x), coeffs[S] = E[f chi_S].
template <class T>
struct MultilinearPoly {
    std::uint64_t n = 0;
    std::vector<T> coeffs;

    int degree() const {
        int d = -1;  // zero polynomial
        for (std::uint64_t s = 0; s < coeffs.size(); ++s) {
            if (coeffs[s] != T(0)) d = std::max(d, subset_size(s));
        }
        return d;
    }
};

template <class T>
std::vector<T> truth_vector(const std::function<bool(const BitString&)>& f, std::uint64_t n) {
    require_fourier_size(n);
    std::vector<T> out(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < out.size(); ++x) out[x] = f(bits_from_point(x, n)) ? T(1) : T(0);
    return out;
}

template <class T>
void walsh_hadamard(std::vector<T>& v) {
    for (std::size_t len = 1; len < v.size(); len <<= 1) {
        for (std::size_t i = 0; i < v.size(); i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                T a = v[j];
                T b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
}

inline std::uint64_t size_to_bits(std::size_t size) {
    std::uint64_t n = 0;
    while ((std::size_t{1} << n) < size) ++n;
    if ((std::size_t{1} << n) != size) throw EncodingError("table size is not a power of two");
    return n;
}

template <class T>
MultilinearPoly<T> fourier(std::vector<T> truth) {
    const std::uint64_t n = size_to_bits(truth.size());
    require_fourier_size(n);
    walsh_hadamard(truth);
    const T scale = half_power<T>(n);
    for (auto& c : truth) c *= scale;
    return MultilinearPoly<T>{n, std::move(truth)};
}

template <class T>
std::vector<T> to_truth(const MultilinearPoly<T>& poly) {
    std::vector<T> v = poly.coeffs;
    walsh_hadamard(v);
    return v;
}

// Monomial basis: f(x) = sum_T mono[T] prod_{i in T} x_i.
template <class T>
std::vector<T> monomial_from_truth(std::vector<T> v) {
    for (std::size_t bit = 1; bit < v.size(); bit <<= 1) {
        for (std::size_t s = 0; s < v.size(); ++s) {
            if (s & bit) v[s] -= v[s ^ bit];
        }
    }
    return v;
}

template <class T>
std::vector<T> truth_from_monomial(std::vector<T> v) {
    for (std::size_t bit = 1; bit < v.size(); bit <<= 1) {
        for (std::size_t s = 0; s < v.size(); ++s) {
            if (s & bit) v[s] += v[s ^ bit];
        }
    }
    return v;
}

// chi_S = prod_{i in S} (1 - 2 x_i), so mono[T] = (-2)^|T| sum_{S >= T} coeffs[S].
template <class T>
std::vector<T> monomial_from_parity(const MultilinearPoly<T>& poly) {
    std::vector<T> v = poly.coeffs;
    for (std::size_t bit = 1; bit < v.size(); bit <<= 1) {
        for (std::size_t s = 0; s < v.size(); ++s) {
            if (!(s & bit)) v[s] += v[s | bit];
        }
    }
    for (std::size_t s = 0; s < v.size(); ++s) {
        const int k = subset_size(s);
        if (k == 0) continue;
        T factor(1);
        for (int j = 0; j < k; ++j) factor *= T(-2);
        v[s] *= factor;
    }
    return v;
}

// x_i = (1 - chi_i) / 2, so coeffs[S] = (-1)^|S| sum_{T >= S} mono[T] 2^-|T|.
template <class T>
MultilinearPoly<T> parity_from_monomial(std::vector<T> v) {
    const std::uint64_t n = size_to_bits(v.size());
    for (std::size_t s = 0; s < v.size(); ++s) v[s] *= half_power<T>(subset_size(s));
    for (std::size_t bit = 1; bit < v.size(); bit <<= 1) {
        for (std::size_t s = 0; s < v.size(); ++s) {
            if (!(s & bit)) v[s] += v[s | bit];
        }
    }
    for (std::size_t s = 0; s < v.size(); ++s) {
        if (subset_size(s) % 2) v[s] = -v[s];
    }
    return MultilinearPoly<T>{n, std::move(v)};
}

template <class T>
T parseval_sum(const MultilinearPoly<T>& poly) {
    T s(0);
    for (const auto& c : poly.coeffs) s += c * c;
    return s;
}

template <class T>
T expectation(const std::vector<T>& truth) {
    T s(0);
    for (const auto& v : truth) s += v;
    return s * half_power<T>(size_to_bits(truth.size()));
}

template <class T>
struct Truncation {
    MultilinearPoly<T> poly;
    T error;  // E_U[(p - f)^2] = sum_{|S| > d} coeffs[S]^2
};

template <class T>
Truncation<T> truncate_and_error(const MultilinearPoly<T>& poly, int d) {
    Truncation<T> out{poly, T(0)};
    for (std::uint64_t s = 0; s < poly.coeffs.size(); ++s) {
        if (subset_size(s) > d) {
            out.error += poly.coeffs[s] * poly.coeffs[s];
            out.poly.coeffs[s] = T(0);
        }
    }
    return out;
}

// --- Term combinations --------------------------------------------------------

template <class T>
struct WeightedTerm {
    T coeff;
    BitTerm term;
};

// p = sum alpha_C C over bit terms on n positions.
template <class T>
struct TermCombination {
    std::uint64_t n = 0;
    std::vector<WeightedTerm<T>> terms;

    // sum |alpha_C| 2^-|C|
    T weight() const {
        T w(0);
        for (const auto& t : terms) w += scalar_abs(t.coeff) * half_power<T>(t.term.size());
        return w;
    }

    std::size_t max_size() const {
        std::size_t d = 0;
        for (const auto& t : terms) d = std::max(d, t.term.size());
        return d;
    }

    T evaluate_point(std::uint64_t x) const {
        T v(0);
        for (const auto& t : terms) {
            if (eval_term_point(t.term, x, n)) v += t.coeff;
        }
        return v;
    }
};

// Pointwise values; each term adds its coefficient over its subcube.
template <class T>
std::vector<T> truth_of(const TermCombination<T>& tc) {
    require_fourier_size(tc.n);
    std::vector<T> out(std::size_t{1} << tc.n, T(0));
    for (const auto& t : tc.terms) {
        validate(t.term, tc.n);
        std::uint64_t fixed_mask = 0, fixed_bits = 0;
        for (const auto& [pos, bit] : t.term.literals) {
            fixed_mask |= position_mask(tc.n, pos);
            if (bit) fixed_bits |= position_mask(tc.n, pos);
        }
        const std::uint64_t free_mask = (out.size() - 1) & ~fixed_mask;
        for (std::uint64_t sub = free_mask;; sub = (sub - 1) & free_mask) {
            out[sub | fixed_bits] += t.coeff;
            if (sub == 0) break;
        }
    }
    return out;
}

inline BitTerm monomial_term(std::uint64_t s, std::uint64_t n) {
    BitTerm t;
    for (std::uint64_t pos = 0; pos < n; ++pos) {
        if (s & position_mask(n, pos)) t.literals.emplace_back(pos, 1);
    }
    return t;
}

// One positive-literal term per nonzero monomial coefficient.
template <class T>
TermCombination<T> from_monomial(const std::vector<T>& mono) {
    TermCombination<T> tc;
    tc.n = size_to_bits(mono.size());
    for (std::uint64_t s = 0; s < mono.size(); ++s) {
        if (mono[s] != T(0)) tc.terms.push_back({mono[s], monomial_term(s, tc.n)});
    }
    return tc;
}

// --- Fat content ---------------------------------------------------------------

inline constexpr std::uint64_t kMaxFatBits = 8;
inline constexpr std::uint64_t kMaxExactFatBits = 5;
inline constexpr double kMaxDualityGap = 1e-9;

// All 3^n terms: each position absent, fixed to 0, or fixed to 1.
inline std::vector<BitTerm> all_terms(std::uint64_t n, std::size_t max_size) {
    std::vector<BitTerm> out;
    std::vector<int> state(n, 0);
    for (;;) {
        BitTerm t;
        for (std::uint64_t pos = 0; pos < n; ++pos) {
            if (state[pos]) t.literals.emplace_back(pos, static_cast<std::uint8_t>(state[pos] - 1));
        }
        if (t.size() <= max_size) out.push_back(std::move(t));
        std::uint64_t j = 0;
        while (j < n && ++state[j] == 3) state[j++] = 0;
        if (j == n) break;
    }
    return out;
}

template <class T>
struct FatLpResult {
    LpStatus status = LpStatus::iteration_limit;
    T value = T(0);
    TermCombination<T> representation;
    double duality_gap = 0;
    double dual_infeasibility = 0;
    T lower_bound = T(0);  // |E_U[p]|
    bool reproduces = false;
    bool above_lower_bound = false;
    std::size_t iterations = 0;
    std::size_t max_term_size = 0;

    bool ok() const {
        return status == LpStatus::optimal && reproduces && above_lower_bound &&
               duality_gap < kMaxDualityGap;
    }
};

// min sum |alpha_C| 2^-|C| subject to sum alpha_C C(x) = p(x) for every x,
// with alpha = alpha+ - alpha-. Exact pivoting for rationals (n <= 5).
template <class T>
FatLpResult<T> fat_lp(const std::vector<T>& truth, std::size_t max_term_size) {
    const std::uint64_t n = size_to_bits(truth.size());
    if (n > kMaxFatBits) throw ScaleError("fat content LP needs n <= 8, got " + std::to_string(n));
    if (kExactScalar<T> && n > kMaxExactFatBits) {
        throw ScaleError("exact fat content LP needs n <= 5; use the floating solver");
    }
    max_term_size = std::min<std::size_t>(max_term_size, n);
    const auto terms = all_terms(n, max_term_size);
    const std::size_t points = truth.size();
    LpProblem<T> lp(points, 2 * terms.size());
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const T cost = half_power<T>(terms[j].size());
        lp.c[2 * j] = cost;
        lp.c[2 * j + 1] = cost;
        for (std::uint64_t x = 0; x < points; ++x) {
            if (eval_term_point(terms[j], x, n)) {
                lp.at(x, 2 * j) = T(1);
                lp.at(x, 2 * j + 1) = T(-1);
            }
        }
    }
    for (std::uint64_t x = 0; x < points; ++x) lp.b[x] = truth[x];

    const LpSolution<T> sol = solve_lp(lp);
    FatLpResult<T> out;
    out.status = sol.status;
    out.iterations = sol.iterations;
    out.max_term_size = max_term_size;
    out.lower_bound = scalar_abs(expectation(truth));
    if (sol.status != LpStatus::optimal) return out;

    out.value = sol.objective;
    out.duality_gap = sol.duality_gap;
    out.dual_infeasibility = sol.dual_infeasibility;
    out.representation.n = n;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const T alpha = sol.x[2 * j] - sol.x[2 * j + 1];
        if (alpha != T(0)) out.representation.terms.push_back({alpha, terms[j]});
    }
    const auto rebuilt = truth_of(out.representation);
    out.reproduces = true;
    for (std::uint64_t x = 0; x < points; ++x) {
        const T diff = scalar_abs(T(rebuilt[x] - truth[x]));
        if (kExactScalar<T> ? diff != T(0) : scalar_value(diff) > 1e-9) out.reproduces = false;
    }
    out.above_lower_bound = kExactScalar<T> ? out.value >= out.lower_bound
                                            : scalar_value(out.value) >= scalar_value(out.lower_bound) - 1e-9;
    return out;
}

// --- Fooling bound for term combinations ---------------------------------------

// E_U[p] - E_D[p] <= (2/M) sum |alpha_C| |C| E_U[C] <= (2/M) weight maxdeg.
struct FoolingBoundReport {
    ExactProb eu;
    ExactProb ed;
    ExactProb gap;     // E_U - E_D
    ExactProb middle;  // (2/M) sum |alpha| |C| 2^-|C|
    ExactProb top;     // (2/M) weight maxdeg
    ExactProb weight;
    std::size_t degree = 0;
    bool pass = false;
};

inline ExactProb term_eu(const BitTerm& c) { return inverse_power(2, c.size()); }

inline ExactProb term_ed(const BitTerm& c, const Params& p) { return bit_term_pd_mixture(c, p); }

inline FoolingBoundReport check_fooling_bound(const TermCombination<ExactProb>& tc, const Params& p) {
    if (tc.n != p.n) throw EncodingError("term combination arity does not match n");
    FoolingBoundReport r;
    r.eu = 0;
    r.ed = 0;
    r.middle = 0;
    for (const auto& t : tc.terms) {
        const ExactProb eu = term_eu(t.term);
        r.eu += t.coeff * eu;
        r.ed += t.coeff * term_ed(t.term, p);
        r.middle += abs_value(t.coeff) * static_cast<unsigned long>(t.term.size()) * eu;
    }
    const ExactProb scale = make_rational(2, p.M);
    r.middle *= scale;
    r.weight = tc.weight();
    r.degree = tc.max_size();
    r.top = scale * r.weight * static_cast<unsigned long>(r.degree);
    r.gap = r.eu - r.ed;
    r.pass = r.gap <= r.middle && r.middle <= r.top;
    return r;
}

// E_D of the combination by summing word probabilities (m <= 2).
inline ExactProb ed_by_enumeration(const TermCombination<ExactProb>& tc, const WordProbs& table) {
    const Params& p = table.params;
    if (tc.n != p.n) throw EncodingError("term combination arity does not match n");
    const auto values = truth_of(tc);
    ExactProb s(0);
    for (std::uint64_t idx = 0; idx < table.pd.size(); ++idx) {
        // word index and big-endian point coincide
        if (table.pd[idx] != 0 && values[idx] != 0) s += table.pd[idx] * values[idx];
    }
    return s;
}

// --- Degree/fat tradeoff chain for f_surj ---------------------------------------

struct Approximation {
    std::string name;
    TermCombination<ExactProb> tc;
};

// E_U f - E_D f  <= (E_U p - E_D p) + |E_U D| + |E_D D|
//               <= (2/M) sum |alpha||C| E_U C + |E_U D| + |E_D D|
//               <= (2/M) weight deg + sqrt(E_U D^2) + sqrt(E_D D^2),   D = p - f.
struct TradeoffLine {
    std::string name;
    ExactProb lhs;
    ExactProb line1;
    ExactProb line2;
    double line3 = 0;
    ExactProb eu_delta;
    ExactProb ed_delta;
    ExactProb eu_delta_sq;
    ExactProb ed_delta_sq;
    ExactProb weight;
    std::size_t degree = 0;
    double slack1 = 0;
    double slack2 = 0;
    double slack3 = 0;
    bool holds = false;
};

inline TradeoffLine tradeoff_line(const Approximation& a, const WordProbs& table) {
    const Params& p = table.params;
    TradeoffLine line;
    line.name = a.name;
    const auto values = truth_of(a.tc);
    ExactProb eu_f(0), ed_f(0);
    line.eu_delta = 0;
    line.ed_delta = 0;
    line.eu_delta_sq = 0;
    line.ed_delta_sq = 0;
    for (std::uint64_t idx = 0; idx < table.pu.size(); ++idx) {
        const bool f = f_surj(table.words[idx], p);
        const ExactProb delta = values[idx] - (f ? 1 : 0);
        const ExactProb sq = delta * delta;
        if (f) {
            eu_f += table.pu[idx];
            ed_f += table.pd[idx];
        }
        line.eu_delta += table.pu[idx] * delta;
        line.eu_delta_sq += table.pu[idx] * sq;
        if (table.pd[idx] != 0) {
            line.ed_delta += table.pd[idx] * delta;
            line.ed_delta_sq += table.pd[idx] * sq;
        }
    }
    const FoolingBoundReport bound = check_fooling_bound(a.tc, p);
    line.weight = bound.weight;
    line.degree = bound.degree;
    line.lhs = eu_f - ed_f;
    const ExactProb abs_terms = abs_value(line.eu_delta) + abs_value(line.ed_delta);
    line.line1 = bound.gap + abs_terms;
    line.line2 = bound.middle + abs_terms;
    line.line3 = to_double(bound.top) + std::sqrt(to_double(line.eu_delta_sq)) +
                 std::sqrt(to_double(line.ed_delta_sq));
    // last step exactly: middle <= top and |E D| <= sqrt(E D^2) by squaring
    const bool step3 = bound.middle <= bound.top &&
                       line.eu_delta * line.eu_delta <= line.eu_delta_sq &&
                       line.ed_delta * line.ed_delta <= line.ed_delta_sq;
    line.slack1 = to_double(ExactProb(line.line1 - line.lhs));
    line.slack2 = to_double(ExactProb(line.line2 - line.line1));
    line.slack3 = line.line3 - to_double(line.line2);
    line.holds = line.lhs <= line.line1 && line.line1 <= line.line2 && step3;
    return line;
}

inline std::vector<TradeoffLine> lowfat_tradeoff_report(const WordProbs& table,
                                                        const std::vector<Approximation>& approximations) {
    std::vector<TradeoffLine> out;
    for (const auto& a : approximations) out.push_back(tradeoff_line(a, table));
    return out;
}

// f_surj truth vector (word index = point), and the standard approximations.
inline std::vector<ExactProb> surj_truth(const WordProbs& table) {
    std::vector<ExactProb> v(table.words.size());
    for (std::size_t idx = 0; idx < v.size(); ++idx) v[idx] = f_surj(table.words[idx], table.params) ? 1 : 0;
    return v;
}

inline std::vector<Approximation> standard_approximations(const WordProbs& table,
                                                          const std::vector<int>& degrees = {2, 4, 6}) {
    const auto truth = surj_truth(table);
    std::vector<Approximation> out;
    out.push_back({"monomial-expansion", from_monomial(monomial_from_truth(truth))});
    TermCombination<ExactProb> constant;
    constant.n = table.params.n;
    constant.terms.push_back({expectation(truth), BitTerm{}});
    out.push_back({"constant-mean", constant});
    const auto poly = fourier(truth);
    for (int d : degrees) {
        const auto cut = truncate_and_error(poly, d);
        out.push_back({"fourier-degree-" + std::to_string(d), from_monomial(monomial_from_parity(cut.poly))});
    }
    return out;
}

}  // namespace glnlab

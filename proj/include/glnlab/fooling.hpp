#pragma once

// Multiplicative fooling of terms and DNFs by D, adaptive DNF-query strategies,
// and the distinguishing power of predictors for the surjectivity function.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dist.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "terms.hpp"

namespace glnlab {

// floating: deterministic but computed in machine precision (large LPs)
enum class Mode { exact, sampled, floating };

inline const char* mode_name(Mode mode) {
    switch (mode) {
        case Mode::exact: return "exact";
        case Mode::sampled: return "sampled";
        case Mode::floating: return "floating";
    }
    return "unknown";
}

struct FoolingReport {
    std::string subject;
    Mode mode = Mode::exact;
    std::size_t k = 0;  // size/width the bounds were instantiated with
    ExactProb lower;    // bounds on Pr_D / Pr_U
    ExactProb upper;

    // exact mode
    ExactProb pu;
    ExactProb pd;
    ExactProb ratio;

    // sampled mode
    ProportionEstimate pu_est;
    ProportionEstimate pd_est;
    double ratio_est = 0.0;
    double ratio_half_width = 0.0;

    bool vacuous = false;        // Pr_U = 0: ratio undefined
    bool out_of_regime = false;  // k > M/2: bounds are not claimed
    bool pass = false;
};

// [1 - eps_low k/M, 1 + 2k/M]. Terms use eps_low = 2 (symmetric 2k/M-fooling),
// DNFs the one-sided 1 - k/M from the union bound.
inline std::pair<ExactProb, ExactProb> ratio_bounds(std::size_t k, const Params& p,
                                                    unsigned long low_factor) {
    const ExactProb step = make_rational(static_cast<long>(k), p.M);
    return {ExactProb(1) - low_factor * step, ExactProb(1) + 2 * step};
}

inline bool in_regime(std::size_t k, const Params& p) { return 2 * k <= p.M; }

inline FoolingReport make_exact_report(std::string subject, std::size_t k, const Params& p,
                                       ExactProb pu, ExactProb pd, unsigned long low_factor) {
    FoolingReport r;
    r.subject = std::move(subject);
    r.mode = Mode::exact;
    r.k = k;
    std::tie(r.lower, r.upper) = ratio_bounds(k, p, low_factor);
    r.pu = std::move(pu);
    r.pd = std::move(pd);
    r.out_of_regime = !in_regime(k, p);
    if (r.pu == 0) {
        r.vacuous = true;
        r.ratio = 0;
        r.pass = (r.pd == 0);
        return r;
    }
    r.ratio = r.pd / r.pu;
    r.pass = r.lower <= r.ratio && r.ratio <= r.upper;
    return r;
}

inline FoolingReport make_sampled_report(std::string subject, std::size_t k, const Params& p,
                                         ProportionEstimate pu, ProportionEstimate pd,
                                         unsigned long low_factor) {
    FoolingReport r;
    r.subject = std::move(subject);
    r.mode = Mode::sampled;
    r.k = k;
    std::tie(r.lower, r.upper) = ratio_bounds(k, p, low_factor);
    r.pu_est = pu;
    r.pd_est = pd;
    r.out_of_regime = !in_regime(k, p);
    if (pu.hits == 0) {
        r.vacuous = true;
        r.pass = true;
        return r;
    }
    r.ratio_est = pd.value() / pu.value();
    // Delta method on the quotient, with each proportion's 3-sigma/Hoeffding width.
    const double rel_u = pu.half_width() / pu.value();
    const double rel_d = pd.hits ? pd.half_width() / pd.value() : 0.0;
    r.ratio_half_width = r.ratio_est * std::sqrt(rel_u * rel_u + rel_d * rel_d);
    if (pd.hits == 0) r.ratio_half_width = std::max(r.ratio_half_width, pd.half_width() / pu.value());
    r.pass = r.ratio_est + r.ratio_half_width >= to_double(r.lower) &&
             r.ratio_est - r.ratio_half_width <= to_double(r.upper);
    return r;
}

// --- Exact event probabilities ---------------------------------------------------

// (Pr_U[event], Pr_D[event]) by summing the exact word table.
template <class Pred>
std::pair<ExactProb, ExactProb> event_probs(const WordProbs& table, Pred&& pred) {
    ExactProb pu(0), pd(0);
    for (std::size_t idx = 0; idx < table.words.size(); ++idx) {
        if (pred(table.words[idx])) {
            pu += table.pu[idx];
            pd += table.pd[idx];
        }
    }
    return {pu, pd};
}

inline std::size_t distinct_values(const ProperTerm& c) {
    std::vector<Value> ys;
    for (const auto& pr : c.pairs) ys.push_back(pr.second);
    std::sort(ys.begin(), ys.end());
    return static_cast<std::size_t>(std::unique(ys.begin(), ys.end()) - ys.begin());
}

// Pr_U[C] = M^-k and Pr_D[C] = (M - d) / (M (M-1)^k), d = #distinct y_j.
inline std::pair<ExactProb, ExactProb> proper_term_probs_closed(const ProperTerm& c,
                                                                 const Params& p) {
    validate(c, p);
    const std::size_t k = c.size();
    const std::size_t d = distinct_values(c);
    ExactProb pu = inverse_power(p.M, k);
    ExactProb pd(BigInt(static_cast<unsigned long>(p.M - d)),
                 BigInt(static_cast<unsigned long>(p.M)) * big_pow(p.M - 1, k));
    pd.canonicalize();
    return {pu, pd};
}

struct TermRatio {
    ExactProb pu;
    ExactProb pd;
    ExactProb ratio;
};

inline TermRatio make_ratio(std::pair<ExactProb, ExactProb> probs) {
    TermRatio r{probs.first, probs.second, ExactProb(0)};
    if (r.pu != 0) r.ratio = r.pd / r.pu;
    return r;
}

inline TermRatio proper_term_ratio_exact(const ProperTerm& c, const WordProbs& table) {
    validate(c, table.params);
    return make_ratio(event_probs(table, [&](const Word& x) { return eval_term(c, x); }));
}

inline TermRatio proper_term_ratio_closed(const ProperTerm& c, const Params& p) {
    return make_ratio(proper_term_probs_closed(c, p));
}

inline TermRatio bit_term_ratio_exact(const BitTerm& c, const WordProbs& table) {
    validate(c, table.params.n);
    const Params& p = table.params;
    return make_ratio(event_probs(table, [&](const Word& x) { return eval_term(c, x, p); }));
}

// Pr_U / Pr_D of a bit term as a sum over its lifted proper terms.
inline TermRatio bit_term_ratio_lifted(const BitTerm& c, const Params& p) {
    ExactProb pu(0), pd(0);
    for (const auto& t : lift_bit_term(c, p)) {
        auto [u, d] = proper_term_probs_closed(t, p);
        pu += u;
        pd += d;
    }
    return make_ratio({pu, pd});
}

// Pr_D of a bit term from the mixture form of D, coordinate by coordinate:
// averaging over y, prod_i |A_i \ {y}| / (M-1), A_i the values allowed on coord i.
inline ExactProb bit_term_pd_mixture(const BitTerm& c, const Params& p) {
    const auto patterns = coordinate_patterns(c, p);
    ExactProb total(0);
    for (Value y = 0; y < p.M; ++y) {
        BigInt num(1);
        for (const auto& [coord, allowed] : patterns) {
            const bool has_y = std::find(allowed.begin(), allowed.end(), y) != allowed.end();
            num *= static_cast<unsigned long>(allowed.size() - (has_y ? 1 : 0));
        }
        total += fraction(num, big_pow(p.M - 1, patterns.size()));
    }
    total /= ExactProb(static_cast<unsigned long>(p.M));
    total.canonicalize();
    return total;
}

// --- Almost k-wise independence ------------------------------------------------

struct AlmostKwiseResult {
    std::size_t k = 0;
    Mode mode = Mode::exact;
    std::vector<FoolingReport> reports;
    std::size_t worst = 0;  // index of the report with the largest |ratio - 1|
    bool out_of_regime = false;
    bool all_pass = true;
};

inline void finish_kwise(AlmostKwiseResult& out) {
    ExactProb worst_dev(-1);
    for (std::size_t i = 0; i < out.reports.size(); ++i) {
        const auto& r = out.reports[i];
        out.all_pass = out.all_pass && r.pass;
        const ExactProb dev = abs_value(r.ratio - 1);
        if (dev > worst_dev) {
            worst_dev = dev;
            out.worst = i;
        }
    }
}

// Calls visit(term) for every bit term with exactly k literals on n positions.
template <class Visit>
void for_each_bit_term(std::uint64_t n, std::size_t k, Visit&& visit) {
    if (k > n) return;
    std::vector<std::uint64_t> pos(k);
    for (std::size_t j = 0; j < k; ++j) pos[j] = j;
    for (;;) {
        for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << k); ++signs) {
            BitTerm t;
            for (std::size_t j = 0; j < k; ++j) {
                t.literals.emplace_back(pos[j], static_cast<std::uint8_t>((signs >> j) & 1u));
            }
            visit(t);
        }
        // next combination
        std::size_t j = k;
        while (j > 0 && pos[j - 1] == n - k + (j - 1)) --j;
        if (j == 0) return;
        ++pos[j - 1];
        for (std::size_t l = j; l < k; ++l) pos[l] = pos[l - 1] + 1;
    }
}

// Every bit k-term at the table's m, by enumeration; bounds 1 -/+ 2k/M.
inline AlmostKwiseResult check_almost_kwise_exact(const WordProbs& table, std::size_t k) {
    const Params& p = table.params;
    AlmostKwiseResult out;
    out.k = k;
    out.mode = Mode::exact;
    out.out_of_regime = !in_regime(k, p);
    for_each_bit_term(p.n, k, [&](const BitTerm& t) {
        auto r = bit_term_ratio_exact(t, table);
        out.reports.push_back(make_exact_report(describe(t), k, p, r.pu, r.pd, 2));
    });
    finish_kwise(out);
    return out;
}

// Random proper k-terms and random bit k-terms at any m, via the closed forms.
inline AlmostKwiseResult check_almost_kwise_closed(const Params& p, std::size_t k,
                                                   std::size_t count, Rng& rng) {
    if (k > p.N) throw ParameterError("k exceeds the number of coordinates");
    AlmostKwiseResult out;
    out.k = k;
    out.mode = Mode::exact;
    out.out_of_regime = !in_regime(k, p);
    for (std::size_t s = 0; s < count; ++s) {
        // proper k-term on k distinct coordinates, values drawn from a small pool so
        // both repeated and distinct values occur
        std::vector<std::uint64_t> coords;
        while (coords.size() < k) {
            const auto i = rng.below(p.N);
            if (std::find(coords.begin(), coords.end(), i) == coords.end()) coords.push_back(i);
        }
        const std::uint64_t pool = 1 + rng.below(std::min<std::uint64_t>(p.M, k + 1));
        std::vector<std::pair<std::uint64_t, Value>> pairs;
        for (auto i : coords) pairs.emplace_back(i, static_cast<Value>(rng.below(pool)));
        const ProperTerm c = make_proper_term(std::move(pairs));
        auto r = proper_term_ratio_closed(c, p);
        out.reports.push_back(make_exact_report(describe(c), k, p, r.pu, r.pd, 2));

        // bit k-term on k distinct positions
        std::vector<std::pair<std::uint64_t, std::uint8_t>> lits;
        while (lits.size() < k) {
            const auto pos = rng.below(p.n);
            const bool dup = std::any_of(lits.begin(), lits.end(),
                                         [&](const auto& l) { return l.first == pos; });
            if (!dup) lits.emplace_back(pos, static_cast<std::uint8_t>(rng.below(2)));
        }
        const BitTerm b = make_bit_term(std::move(lits));
        const ExactProb bu = inverse_power(2, k);
        out.reports.push_back(make_exact_report(describe(b), k, p, bu, bit_term_pd_mixture(b, p), 2));
    }
    finish_kwise(out);
    return out;
}

// --- DNFs ------------------------------------------------------------------------

inline FoolingReport dnf_fooling_check_exact(const Dnf& f, const WordProbs& table) {
    const Params& p = table.params;
    auto [pu, pd] = event_probs(table, [&](const Word& x) { return eval_dnf(f, x, p); });
    return make_exact_report(describe(f), f.width(), p, std::move(pu), std::move(pd), 1);
}

inline FoolingReport dnf_fooling_check_sampled(const Dnf& f, const Params& p,
                                               std::uint64_t samples, Rng& rng) {
    ProportionEstimate pu, pd;
    for (std::uint64_t s = 0; s < samples; ++s) {
        pu.hits += eval_dnf(f, sample_uniform(p, rng), p);
        pd.hits += eval_dnf(f, sample_d(p, rng), p);
    }
    pu.samples = pd.samples = samples;
    return make_sampled_report(describe(f), f.width(), p, pu, pd, 1);
}

// --- Adaptive query strategies ---------------------------------------------------

// Binary decision tree; internal nodes ask a DNF about X, leaves accept or reject.
class QueryStrategy {
public:
    struct Node {
        std::optional<Dnf> query;
        bool accept = false;
        int if_true = -1;
        int if_false = -1;
    };

    static QueryStrategy leaf(bool accept) {
        QueryStrategy s;
        s.nodes_.push_back(Node{std::nullopt, accept, -1, -1});
        return s;
    }

    static QueryStrategy ask(Dnf query, const QueryStrategy& if_true, const QueryStrategy& if_false) {
        QueryStrategy s;
        s.nodes_.push_back(Node{std::move(query), false, -1, -1});
        s.nodes_[0].if_true = s.graft(if_true);
        s.nodes_[0].if_false = s.graft(if_false);
        return s;
    }

    const std::vector<Node>& nodes() const { return nodes_; }

    bool evaluate(const Word& x, const Params& p) const {
        int at = 0;
        while (nodes_[at].query) at = eval_dnf(*nodes_[at].query, x, p) ? nodes_[at].if_true : nodes_[at].if_false;
        return nodes_[at].accept;
    }

    // T: the largest number of queries on a root-to-leaf path.
    std::size_t depth() const { return depth_from(0); }

    // w: the largest query width.
    std::size_t width() const {
        std::size_t w = 0;
        for (const auto& node : nodes_) {
            if (node.query) w = std::max(w, node.query->width());
        }
        return w;
    }

    // max over root-to-leaf paths of sum of per-query widths
    std::size_t path_width_sum() const { return path_sum_from(0); }

private:
    int graft(const QueryStrategy& sub) {
        const int offset = static_cast<int>(nodes_.size());
        for (Node node : sub.nodes_) {
            if (node.query) {
                node.if_true += offset;
                node.if_false += offset;
            }
            nodes_.push_back(std::move(node));
        }
        return offset;
    }

    std::size_t depth_from(int at) const {
        const Node& node = nodes_[at];
        if (!node.query) return 0;
        return 1 + std::max(depth_from(node.if_true), depth_from(node.if_false));
    }

    std::size_t path_sum_from(int at) const {
        const Node& node = nodes_[at];
        if (!node.query) return 0;
        return node.query->width() + std::max(path_sum_from(node.if_true), path_sum_from(node.if_false));
    }

    std::vector<Node> nodes_;
};

struct AdaptiveReport {
    Mode mode = Mode::exact;
    std::size_t depth = 0;
    std::size_t width = 0;
    ExactProb bound;       // 2 T w / M
    ExactProb path_bound;  // max over paths of sum_t 2 w_t / M, never above `bound`

    ExactProb pu_accept;
    ExactProb pd_accept;
    ExactProb bias;  // |Pr_D[acc] - Pr_U[acc]|

    ProportionEstimate pu_est;
    ProportionEstimate pd_est;
    double bias_est = 0.0;
    double bias_half_width = 0.0;

    bool pass = false;
};

inline void fill_adaptive_bounds(AdaptiveReport& r, const QueryStrategy& s, const Params& p) {
    r.depth = s.depth();
    r.width = s.width();
    r.bound = make_rational(static_cast<long>(2 * r.depth * r.width), p.M);
    r.path_bound = make_rational(static_cast<long>(2 * s.path_width_sum()), p.M);
}

inline AdaptiveReport adaptive_bias_exact(const QueryStrategy& s, const WordProbs& table) {
    const Params& p = table.params;
    AdaptiveReport r;
    r.mode = Mode::exact;
    fill_adaptive_bounds(r, s, p);
    std::tie(r.pu_accept, r.pd_accept) =
        event_probs(table, [&](const Word& x) { return s.evaluate(x, p); });
    r.bias = abs_value(r.pd_accept - r.pu_accept);
    r.pass = r.bias <= r.bound;
    return r;
}

inline AdaptiveReport adaptive_bias_sampled(const QueryStrategy& s, const Params& p,
                                            std::uint64_t samples, Rng& rng) {
    AdaptiveReport r;
    r.mode = Mode::sampled;
    fill_adaptive_bounds(r, s, p);
    for (std::uint64_t i = 0; i < samples; ++i) {
        r.pu_est.hits += s.evaluate(sample_uniform(p, rng), p);
        r.pd_est.hits += s.evaluate(sample_d(p, rng), p);
    }
    r.pu_est.samples = r.pd_est.samples = samples;
    r.bias_est = std::abs(r.pd_est.value() - r.pu_est.value());
    r.bias_half_width = r.pu_est.half_width() + r.pd_est.half_width();
    r.pass = r.bias_est - r.bias_half_width <= to_double(r.bound);
    return r;
}

// --- Random instances ------------------------------------------------------------

// Proper term on `size` distinct coordinates with uniform values.
inline ProperTerm random_proper_term(const Params& p, std::size_t size, Rng& rng) {
    if (size > p.N) throw ParameterError("term size exceeds the number of coordinates");
    std::vector<std::uint64_t> coords;
    while (coords.size() < size) {
        const auto i = rng.below(p.N);
        if (std::find(coords.begin(), coords.end(), i) == coords.end()) coords.push_back(i);
    }
    std::vector<std::pair<std::uint64_t, Value>> pairs;
    for (auto i : coords) pairs.emplace_back(i, static_cast<Value>(rng.below(p.M)));
    return make_proper_term(std::move(pairs));
}

// Between 1 and max_terms proper terms, each of size 1..width; the first has
// size exactly width so the DNF has that width.
inline Dnf random_proper_dnf(const Params& p, std::size_t width, std::size_t max_terms, Rng& rng) {
    if (width == 0 || max_terms == 0) throw ParameterError("DNF width and term count must be positive");
    const std::size_t count = 1 + rng.below(max_terms);
    std::vector<ProperTerm> terms;
    for (std::size_t t = 0; t < count; ++t) {
        const std::size_t size = t == 0 ? width : 1 + rng.below(width);
        terms.push_back(random_proper_term(p, size, rng));
    }
    return Dnf::of_proper(std::move(terms));
}

// Complete decision tree of the given depth with random proper-DNF queries.
inline QueryStrategy random_strategy(const Params& p, std::size_t depth, std::size_t width, Rng& rng,
                                     std::size_t max_terms = 3) {
    if (depth == 0) return QueryStrategy::leaf(rng.below(2) == 1);
    Dnf q = random_proper_dnf(p, width, max_terms, rng);
    const QueryStrategy yes = random_strategy(p, depth - 1, width, rng, max_terms);
    const QueryStrategy no = random_strategy(p, depth - 1, width, rng, max_terms);
    return QueryStrategy::ask(std::move(q), yes, no);
}

// --- Predictors for f_surj -------------------------------------------------------

using Predictor = std::function<bool(const Word&)>;

inline constexpr double kAgreementHypothesis = 0.92;

struct PredictorReport {
    Mode mode = Mode::exact;
    ExactProb agreement;  // Pr_U[P = f_surj]
    ExactProb pu;         // Pr_U[P]
    ExactProb pd;         // Pr_D[P]
    ExactProb gap;        // Pr_U[P] - Pr_D[P]

    ProportionEstimate agreement_est;
    ProportionEstimate pu_est;
    ProportionEstimate pd_est;
    double gap_est = 0.0;
    double gap_half_width = 0.0;

    bool in_hypothesis = false;  // agreement >= 0.92
};

inline PredictorReport predictor_bias_exact(const Predictor& pred, const WordProbs& table) {
    const Params& p = table.params;
    PredictorReport r;
    r.mode = Mode::exact;
    r.agreement = 0;
    r.pu = 0;
    r.pd = 0;
    for (std::size_t idx = 0; idx < table.words.size(); ++idx) {
        const Word& x = table.words[idx];
        const bool b = pred(x);
        if (b == f_surj(x, p)) r.agreement += table.pu[idx];
        if (b) {
            r.pu += table.pu[idx];
            r.pd += table.pd[idx];
        }
    }
    r.gap = r.pu - r.pd;
    r.in_hypothesis = to_double(r.agreement) >= kAgreementHypothesis;
    return r;
}

inline PredictorReport predictor_bias_sampled(const Predictor& pred, const Params& p,
                                              std::uint64_t samples, Rng& rng) {
    PredictorReport r;
    r.mode = Mode::sampled;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const Word x = sample_uniform(p, rng);
        const bool b = pred(x);
        r.pu_est.hits += b;
        r.agreement_est.hits += (b == f_surj(x, p));
        r.pd_est.hits += pred(sample_d(p, rng));
    }
    r.pu_est.samples = r.pd_est.samples = r.agreement_est.samples = samples;
    r.gap_est = r.pu_est.value() - r.pd_est.value();
    r.gap_half_width = r.pu_est.half_width() + r.pd_est.half_width();
    r.in_hypothesis = r.agreement_est.value() >= kAgreementHypothesis;
    return r;
}

// The predictor that answers f_surj except on the smallest-image non-surjective
// words, which it marks 1 until the error budget Pr_U[B != f_surj] is spent.
// Within the boundary class, words are taken in lexicographic order.
struct ExtremalPredictor {
    Params params;
    std::uint64_t full_from_k = 0;  // classes k >= full_from_k (k = M - |Im|) are all 1
    std::uint64_t partial_k = 0;    // boundary class, 0 if none
    // exact construction: include boundary-class words with index < partial_index_limit
    bool exact_threshold = false;
    std::uint64_t partial_index_limit = 0;
    // Monte Carlo construction: include boundary-class words whose lexicographic
    // position (as a base-M fraction) is below partial_fraction
    double partial_fraction = 0.0;
    double budget = 0.08;

    bool operator()(const Word& x) const { return decide(x, params.M - image_size(x, params)); }

    // Same decision with k = M - |Im_X| already known.
    bool decide(const Word& x, std::uint64_t k) const {
        if (k == 0 || k >= full_from_k) return true;
        if (k != partial_k) return false;
        if (exact_threshold) return word_index(x, params) < partial_index_limit;
        return lexicographic_fraction(x) < partial_fraction;
    }

    double lexicographic_fraction(const Word& x) const {
        double frac = 0.0, scale = 1.0;
        for (std::size_t i = 0; i < x.size() && scale > 1e-17; ++i) {
            scale /= static_cast<double>(params.M);
            frac += static_cast<double>(x[i]) * scale;
        }
        return frac;
    }
};

// Exact construction by enumeration (m <= 2): budget is floor(budget * M^N) words.
inline ExtremalPredictor build_extremal_predictor_exact(const Params& p, double budget = 0.08) {
    require_word_enumerable(p);
    const std::uint64_t total = word_count(p);
    std::uint64_t words_left = static_cast<std::uint64_t>(budget * static_cast<double>(total));
    std::vector<std::vector<std::uint64_t>> by_k(p.M + 1);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        by_k[p.M - image_size(word_from_index(idx, p), p)].push_back(idx);  // ascending = lex
    }
    ExtremalPredictor b;
    b.params = p;
    b.budget = budget;
    b.exact_threshold = true;
    b.full_from_k = p.M + 1;
    for (std::uint64_t k = p.M; k >= 1; --k) {
        const auto& cls = by_k[k];
        if (cls.size() <= words_left) {
            words_left -= cls.size();
            b.full_from_k = k;
            continue;
        }
        b.partial_k = k;
        b.partial_index_limit = words_left == 0 ? 0 : cls[words_left - 1] + 1;
        break;
    }
    return b;
}

// Construction for any m from the floating image-size law of U.
inline ExtremalPredictor build_extremal_predictor(const Params& p, double budget = 0.08) {
    const auto law = image_size_law_float(p).under_u;
    ExtremalPredictor b;
    b.params = p;
    b.budget = budget;
    b.full_from_k = p.M + 1;
    double left = budget;
    for (std::uint64_t k = p.M; k >= 1; --k) {
        if (law[k] <= left) {
            left -= law[k];
            b.full_from_k = k;
            continue;
        }
        b.partial_k = k;
        b.partial_fraction = left / law[k];
        break;
    }
    return b;
}

}  // namespace glnlab

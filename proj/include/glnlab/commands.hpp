#pragma once

// The glnlab subcommands as library functions returning reports.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "circuits.hpp"
#include "dist.hpp"
#include "errors.hpp"
#include "fooling.hpp"
#include "model.hpp"
#include "polylab.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "sensitivity.hpp"
#include "serialize.hpp"

namespace glnlab {

struct RunConfig {
    std::string command;
    int m = 2;
    int m_min = 4;  // trend: smallest m
    std::uint64_t seed = 1;
    bool seed_given = true;
    std::uint64_t samples = 100000;
    std::size_t k = 2;
    std::size_t width = 2;
    std::size_t depth = 2;
    std::size_t count = 0;  // random instances; 0 picks the command default
    std::uint64_t n = 4;
    std::size_t term_size = 0;  // fat: largest term size allowed, 0 = n
    std::string format = "json";
    std::string out;
    std::string target;
    std::string input;
    std::string strategy;
    bool tamper_skip_resample = false;  // test hook: D without its resampling step

    Json to_json() const {
        Json j = {{"command", command}, {"m", m}, {"m_min", m_min}, {"seed", seed},
                  {"seed_source", seed_given ? "flag" : "auto"}, {"samples", samples}, {"k", k},
                  {"width", width}, {"depth", depth}, {"count", count}, {"n", n}, {"term_size", term_size}, {"format", format},
                  {"out", out}, {"target", target}, {"input", input}, {"strategy", strategy}};
        if (tamper_skip_resample) j["tamper"] = "skip-resample";
        return j;
    }
};

// Fills unset seeds from the system entropy source; the value is then recorded.
inline void resolve_seed(RunConfig& cfg) {
    if (cfg.seed_given) return;
    std::random_device rd;
    cfg.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

inline Report start_report(const RunConfig& cfg) {
    Report r;
    r.command = cfg.command;
    r.config = cfg.to_json();
    return r;
}

inline std::size_t pick(std::size_t configured, std::size_t fallback) {
    return configured ? configured : fallback;
}

// --- verify -------------------------------------------------------------------------

inline void verify_inverse(Report& rep, const Params& p, PerturbProcedure procedure) {
    const WordLaw u = uniform_law(p);
    auto& rec = rep.add("inverse_identity", Mode::exact, false);
    try {
        const WordLaw d = perturb_law(u, p, procedure);
        const WordLaw back = inverse_perturb_law(d, p);
        ExactProb worst(0);
        for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, abs_value(ExactProb(back[i] - u[i])));
        rec.values = {{"words", u.size()}, {"max_abs_error", exact_json(worst)}};
        rec.bounds = {{"max_abs_error", "0/1"}};
        rec.pass = worst == 0;
    } catch (const PreconditionError& e) {
        rec.values = {{"error", e.what()}};
    }
}

inline void verify_pd_closed_form(Report& rep, const WordProbs& t) {
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < t.words.size(); ++i) {
        if (t.pd[i] != closed_form_pd(t.words[i], t.params)) ++mismatches;
    }
    auto& rec = rep.add("pd_closed_form", Mode::exact, mismatches == 0);
    rec.values = {{"words", t.words.size()}, {"mismatches", mismatches}, {"total_mass", exact_json(total_mass(t.pd))}};
}

inline void verify_kwise(Report& rep, const WordProbs& t, std::size_t kmax) {
    for (std::size_t k = 1; k <= kmax; ++k) {
        const auto res = check_almost_kwise_exact(t, k);
        auto& rec = rep.add("almost_kwise_bits_k" + std::to_string(k), Mode::exact, res.all_pass);
        rec.vacuous = res.out_of_regime;
        ExactProb lo(1), hi(1);
        for (const auto& r : res.reports) {
            if (r.vacuous) continue;
            lo = std::min(lo, r.ratio);
            hi = std::max(hi, r.ratio);
        }
        rec.values = {{"terms", res.reports.size()}, {"min_ratio", exact_json(lo)}, {"max_ratio", exact_json(hi)},
                      {"out_of_regime", res.out_of_regime}};
        if (!res.reports.empty()) {
            rec.bounds = {{"lower", exact_json(res.reports.front().lower)},
                          {"upper", exact_json(res.reports.front().upper)}};
        }
    }
}

inline void verify_proper_terms(Report& rep, const WordProbs& t) {
    const Params& p = t.params;
    bool one_ok = true;
    for (std::uint64_t i = 0; i < p.N; ++i) {
        for (Value y = 0; y < p.M; ++y) {
            const ProperTerm c = make_proper_term({{i, y}});
            one_ok = one_ok && proper_term_ratio_exact(c, t).ratio == 1 && proper_term_ratio_closed(c, p).ratio == 1;
        }
    }
    auto& one = rep.add("proper_1term_ratio", Mode::exact, one_ok);
    one.values = {{"terms", p.N * p.M}};
    one.bounds = {{"ratio", "1/1"}};

    if (p.N < 2) return;
    // (M - d)/M * (M/(M-1))^2 for d distinct values
    const ExactProb lift = make_rational(static_cast<long>(p.M * p.M), (p.M - 1) * (p.M - 1));
    const ExactProb distinct = make_rational(static_cast<long>(p.M - 2), p.M) * lift;
    const ExactProb repeated = make_rational(static_cast<long>(p.M - 1), p.M) * lift;
    bool two_ok = true;
    std::size_t terms = 0;
    for (std::uint64_t i = 0; i < p.N; ++i) {
        for (std::uint64_t j = i + 1; j < p.N; ++j) {
            for (Value a = 0; a < p.M; ++a) {
                for (Value b = 0; b < p.M; ++b) {
                    const ProperTerm c = make_proper_term({{i, a}, {j, b}});
                    const ExactProb want = a == b ? repeated : distinct;
                    two_ok = two_ok && proper_term_ratio_exact(c, t).ratio == want &&
                             proper_term_ratio_closed(c, p).ratio == want;
                    ++terms;
                }
            }
        }
    }
    auto& two = rep.add("proper_2term_ratio", Mode::exact, two_ok);
    two.values = {{"terms", terms}, {"distinct_values_ratio", exact_json(distinct)},
                  {"repeated_value_ratio", exact_json(repeated)}};
}

inline void verify_surj_bias(Report& rep, const WordProbs& t) {
    const Params& p = t.params;
    const auto [eu, ed] = event_probs(t, [&](const Word& x) { return f_surj(x, p); });
    const ExactProb want = fraction(surjection_count(p.N, p.M), big_pow(p.M, p.N));
    auto& rec = rep.add("surj_bias", Mode::exact, eu == want && ed == 0);
    rec.values = {{"eu", exact_json(eu)}, {"ed", exact_json(ed)}, {"bias", exact_json(ExactProb(eu - ed))}};
    rec.bounds = {{"eu", exact_json(want)}, {"ed", "0/1"}};
}

inline void verify_dnfs(Report& rep, const WordProbs& t, std::size_t width, std::size_t count, Rng& rng) {
    const Params& p = t.params;
    bool all = true;
    std::size_t vacuous = 0;
    ExactProb lo(1), hi(1);
    for (std::size_t s = 0; s < count; ++s) {
        const Dnf f = random_proper_dnf(p, width, 4, rng);
        const FoolingReport r = dnf_fooling_check_exact(f, t);
        all = all && r.pass;
        if (r.vacuous) {
            ++vacuous;
            continue;
        }
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
    }
    const auto [lower, upper] = ratio_bounds(width, p, 1);
    auto& rec = rep.add("dnf_fooling", Mode::exact, all);
    rec.values = {{"dnfs", count}, {"width", width}, {"vacuous", vacuous},
                  {"min_ratio", exact_json(lo)}, {"max_ratio", exact_json(hi)}};
    rec.bounds = {{"lower", exact_json(lower)}, {"upper", exact_json(upper)}};
}

inline void verify_adaptive(Report& rep, const WordProbs& t, std::size_t depth, std::size_t width,
                            std::size_t count, Rng& rng) {
    bool all = true;
    ExactProb worst(0), worst_bound(0);
    for (std::size_t s = 0; s < count; ++s) {
        const QueryStrategy st = random_strategy(t.params, depth, width, rng);
        const AdaptiveReport r = adaptive_bias_exact(st, t);
        all = all && r.pass;
        if (r.bias >= worst) {
            worst = r.bias;
            worst_bound = r.bound;
        }
    }
    auto& rec = rep.add("adaptive_bound", Mode::exact, all);
    rec.values = {{"strategies", count}, {"T", depth}, {"w", width}, {"max_bias", exact_json(worst)}};
    rec.bounds = {{"bias", exact_json(make_rational(static_cast<long>(2 * depth * width), t.params.M))}};
}

inline void verify_circuit(Report& rep, const WordProbs& t) {
    const Params& p = t.params;
    const Circuit c = build_surj_circuit(p);
    std::size_t disagree = 0;
    for (std::uint64_t idx = 0; idx < t.words.size(); ++idx) {
        if (c.evaluate_point(idx) != f_surj(t.words[idx], p)) ++disagree;
    }
    const CircuitStats s = c.stats();
    const std::size_t want_size = 1 + p.M + p.N * p.M;
    auto& rec = rep.add("surj_circuit", Mode::exact,
                        disagree == 0 && s.depth == 3 && s.size == want_size &&
                            s.bottom_fanin == static_cast<std::size_t>(p.m));
    rec.values = {{"inputs", t.words.size()}, {"disagreements", disagree}, {"size", s.size},
                  {"depth", s.depth}, {"bottom_fanin", s.bottom_fanin}};
    rec.bounds = {{"size", want_size}, {"depth", 3}, {"bottom_fanin", p.m}};
}

inline void verify_certificates(Report& rep, const WordProbs& t) {
    const BsAverageReport r = avg_bs_lower_bound_exact(t.params);
    auto& rec = rep.add("bs_certificates", Mode::exact, r.all_verified && r.ones_exact && r.pigeonhole_ok);
    rec.values = bs_average_json(r);
    rec.bounds = {{"one_input_blocks", t.params.M * static_cast<std::uint64_t>(t.params.m)},
                  {"zero_input_blocks_at_least", t.params.N >= t.params.M ? t.params.N - t.params.M : 0}};
}

inline TermCombination<ExactProb> random_term_combination(const Params& p, std::size_t terms,
                                                          std::size_t max_size, Rng& rng) {
    TermCombination<ExactProb> tc;
    tc.n = p.n;
    for (std::size_t s = 0; s < terms; ++s) {
        const std::size_t size = rng.below(max_size + 1);
        std::vector<std::pair<std::uint64_t, std::uint8_t>> lits;
        while (lits.size() < size) {
            const auto pos = rng.below(p.n);
            const bool dup = std::any_of(lits.begin(), lits.end(), [&](const auto& l) { return l.first == pos; });
            if (!dup) lits.emplace_back(pos, static_cast<std::uint8_t>(rng.below(2)));
        }
        const long num = static_cast<long>(rng.below(21)) - 10;
        tc.terms.push_back({make_rational(num == 0 ? 1 : num, 1 + rng.below(4)), make_bit_term(std::move(lits))});
    }
    return tc;
}

inline void verify_fooling_bounds(Report& rep, const WordProbs& t, std::size_t count, Rng& rng) {
    bool all = true, agree = true;
    for (std::size_t s = 0; s < count; ++s) {
        const auto tc = random_term_combination(t.params, 20, std::min<std::size_t>(6, t.params.n), rng);
        const FoolingBoundReport r = check_fooling_bound(tc, t.params);
        all = all && r.pass;
        agree = agree && ed_by_enumeration(tc, t) == r.ed;
    }
    auto& rec = rep.add("term_combination_fooling_bound", Mode::exact, all && agree);
    rec.values = {{"combinations", count}, {"terms_each", 20}, {"ed_two_ways_agree", agree}};
}

inline void verify_tradeoff(Report& rep, const WordProbs& t) {
    const auto lines = lowfat_tradeoff_report(t, standard_approximations(t));
    bool all = true;
    Json rows = Json::array();
    for (const auto& l : lines) {
        all = all && l.holds;
        rows.push_back(tradeoff_json(l));
    }
    auto& rec = rep.add("lowfat_tradeoff_chain", Mode::exact, all);
    rec.values = {{"approximations", rows}};
}

inline void verify_fourier(Report& rep, const WordProbs& t) {
    const auto truth = surj_truth(t);
    const auto poly = fourier(truth);
    const ExactProb energy = parseval_sum(poly);
    const ExactProb mean = expectation(truth);  // f^2 = f
    const bool roundtrip = to_truth(poly) == truth &&
                           truth_from_monomial(monomial_from_parity(poly)) == truth &&
                           parity_from_monomial(monomial_from_truth(truth)).coeffs == poly.coeffs;
    auto& rec = rep.add("fourier_parseval", Mode::exact, energy == mean && roundtrip);
    rec.values = {{"sum_squares", exact_json(energy)}, {"basis_roundtrip", roundtrip}, {"degree", poly.degree()}};
    rec.bounds = {{"sum_squares", exact_json(mean)}};
}

inline Report cmd_verify(const RunConfig& cfg) {
    const Params p = params_from_m(cfg.m);
    require_word_enumerable(p);
    Report rep = start_report(cfg);
    rep.details["params"] = params_json(p);
    const auto procedure = cfg.tamper_skip_resample ? PerturbProcedure::skip_resample : PerturbProcedure::literal;
    verify_inverse(rep, p, procedure);
    const WordProbs t = exact_word_probs(p, procedure);
    Rng rng(cfg.seed);
    verify_pd_closed_form(rep, t);
    verify_kwise(rep, t, cfg.k);
    verify_proper_terms(rep, t);
    verify_surj_bias(rep, t);
    verify_dnfs(rep, t, std::min<std::size_t>(cfg.width, p.N), pick(cfg.count, 200), rng);
    verify_adaptive(rep, t, cfg.depth, std::min<std::size_t>(cfg.width, p.N), pick(cfg.count, 50), rng);
    verify_circuit(rep, t);
    verify_certificates(rep, t);
    verify_fooling_bounds(rep, t, pick(cfg.count, 20), rng);
    verify_tradeoff(rep, t);
    verify_fourier(rep, t);
    return rep;
}

// --- trend ----------------------------------------------------------------------------

inline constexpr std::size_t kTrendClasses = 5;  // k = M - |Im| in 0..4
inline constexpr std::uint64_t kShardSize = 10000;
inline constexpr double kPredictorDelta = 0.02;

struct TrendSample {
    Params params;
    std::vector<ProportionEstimate> u_class;  // Pr_U[|Im| = M - k]
    std::vector<ProportionEstimate> d_class;  // Pr_D[|Im| = M - k]
    ProportionEstimate pu_b;
    ProportionEstimate pd_b;
    ExtremalPredictor predictor;
};

// U and D samples for one m; shard s uses the seed derive_seed(seed, m * 2^20 + s).
inline TrendSample run_trend_samples(const Params& p, std::uint64_t samples, std::uint64_t seed) {
    TrendSample out;
    out.params = p;
    out.u_class.assign(kTrendClasses, {});
    out.d_class.assign(kTrendClasses, {});
    out.predictor = build_extremal_predictor(p);
    const std::uint64_t shards = (samples + kShardSize - 1) / kShardSize;
    for (std::uint64_t s = 0; s < shards; ++s) {
        Rng rng(derive_seed(seed, (static_cast<std::uint64_t>(p.m) << 20) + s));
        const std::uint64_t count = std::min(kShardSize, samples - s * kShardSize);
        for (std::uint64_t i = 0; i < count; ++i) {
            const Word x = sample_uniform(p, rng);
            const Word z = perturb(x, p, rng);
            const std::uint64_t kx = p.M - image_size(x, p);
            const std::uint64_t kz = p.M - image_size(z, p);
            if (kx < kTrendClasses) ++out.u_class[kx].hits;
            if (kz < kTrendClasses) ++out.d_class[kz].hits;
            out.pu_b.hits += out.predictor.decide(x, kx);
            out.pd_b.hits += out.predictor.decide(z, kz);
        }
    }
    for (auto& e : out.u_class) e.samples = samples;
    for (auto& e : out.d_class) e.samples = samples;
    out.pu_b.samples = out.pd_b.samples = samples;
    return out;
}

// Finite-m prediction of Pr_U[B], Pr_D[B] from the class laws, taking the
// boundary-class share as the lexicographic fraction.
inline std::pair<double, double> predicted_predictor_probs(const ExtremalPredictor& b, const ImageSizeLawFloat& law) {
    double pu = law.under_u[0], pd = 0;
    for (std::uint64_t k = 1; k < law.under_u.size(); ++k) {
        if (k >= b.full_from_k) {
            pu += law.under_u[k];
            pd += law.under_d[k];
        } else if (k == b.partial_k) {
            pu += b.partial_fraction * law.under_u[k];
            pd += b.partial_fraction * law.under_d[k];
        }
    }
    return {pu, pd};
}

inline double factorial(unsigned k) {
    double f = 1;
    for (unsigned i = 2; i <= k; ++i) f *= i;
    return f;
}

inline Report cmd_trend(const RunConfig& cfg) {
    if (cfg.m < 4) throw ParameterError("trend needs m >= 4");
    const int m_min = std::min(std::max(cfg.m_min, 4), cfg.m);
    Report rep = start_report(cfg);
    const double inv_e = std::exp(-1.0);
    Json per_m = Json::array();
    std::vector<double> distances;
    for (int m = m_min; m <= cfg.m; ++m) {
        const Params p = params_from_m(m);
        const TrendSample ts = run_trend_samples(p, cfg.samples, cfg.seed);
        const ImageSizeLawFloat law = image_size_law_float(p);
        const std::string tag = "m" + std::to_string(m) + "_";

        // image-size classes against the finite-m law
        bool within = true;
        Json classes = Json::array();
        for (std::size_t k = 0; k < kTrendClasses; ++k) {
            const auto& eu = ts.u_class[k];
            const auto& ed = ts.d_class[k];
            const bool ok_u = std::abs(eu.value() - law.under_u[k]) <= eu.half_width();
            const bool ok_d = std::abs(ed.value() - law.under_d[k]) <= ed.half_width();
            within = within && ok_u && ok_d;
            Json row = {{"k", k},
                        {"u", estimate_json(eu)},
                        {"u_finite_m", law.under_u[k]},
                        {"u_limit", inv_e / factorial(static_cast<unsigned>(k))},
                        {"d", estimate_json(ed)},
                        {"d_finite_m", law.under_d[k]},
                        {"d_limit", k == 0 ? 0.0 : inv_e / factorial(static_cast<unsigned>(k - 1))}};
            if (m <= kMaxSymmetricM) {
                const auto exact = exact_symmetric_probs(p, k);
                row["u_exact"] = exact_json(exact.under_u);
                row["d_exact"] = exact_json(exact.under_d);
            }
            classes.push_back(std::move(row));
        }
        auto& rec = rep.add(tag + "image_size_law", Mode::sampled, within);
        rec.values = {{"classes", classes}};
        rec.bounds = {{"rule", "each estimate within its 3-sigma half-width of the finite-m law"}};

        const auto& surj = ts.u_class[0];
        auto& ci = rep.add(tag + "surj_ci_width", Mode::sampled, surj.half_width() < 0.005);
        ci.vacuous = cfg.samples < 100000;
        ci.values = {{"half_width", surj.half_width()}, {"samples", surj.samples}};
        ci.bounds = {{"half_width_below", 0.005}};
        distances.push_back(std::abs(surj.value() - inv_e));

        // extremal predictor
        const auto [pu_pred, pd_pred] = predicted_predictor_probs(ts.predictor, law);
        auto& pr = rep.note(tag + "extremal_predictor", Mode::sampled);
        pr.values = {{"pu", estimate_json(ts.pu_b)},
                     {"pd", estimate_json(ts.pd_b)},
                     {"pu_predicted", pu_pred},
                     {"pd_predicted", pd_pred},
                     {"gap", ts.pu_b.value() - ts.pd_b.value()},
                     {"full_from_k", ts.predictor.full_from_k},
                     {"partial_k", ts.predictor.partial_k},
                     {"partial_fraction", ts.predictor.partial_fraction}};
        pr.bounds = {{"pu_above", 0.287 - kPredictorDelta}, {"pd_below", 0.265 + kPredictorDelta}, {"gap_limit", 0.022}};
        per_m.push_back({{"m", m}, {"params", params_json(p)}, {"surj_u", estimate_json(surj)},
                         {"surj_u_finite_m", law.under_u[0]}, {"distance_to_inv_e", distances.back()}});
    }
    bool monotone = true;
    for (std::size_t i = 1; i < distances.size(); ++i) monotone = monotone && distances[i] < distances[i - 1];
    auto& sum = rep.note("trend_summary", Mode::sampled);
    sum.values = {{"per_m", per_m}, {"distance_decreasing", monotone}, {"limit", inv_e}};
    return rep;
}

// --- fat / fourier targets --------------------------------------------------------

template <class T>
std::vector<T> bit_target_truth(const std::string& target, std::uint64_t n, const std::string& input) {
    require_fourier_size(n);
    const std::size_t size = std::size_t{1} << n;
    std::vector<T> v(size, T(0));
    const auto bit = [n](std::uint64_t x, std::uint64_t pos) { return point_bit(x, n, pos); };
    if (target == "truth") {
        std::string digits;
        for (char c : input) {
            if (c == '0' || c == '1') digits += c;
            else if (c != ',' && c != ' ') throw EncodingError("truth vector must contain only 0/1");
        }
        if (digits.size() != size) throw EncodingError("truth vector needs 2^n entries");
        for (std::size_t x = 0; x < size; ++x) v[x] = digits[x] == '1' ? T(1) : T(0);
        return v;
    }
    for (std::uint64_t x = 0; x < size; ++x) {
        bool f = false;
        if (target == "parity2") {
            if (n < 2) throw ParameterError("parity2 needs n >= 2");
            f = bit(x, 0) != bit(x, 1);
        } else if (target == "parity") {
            f = std::popcount(x) % 2 == 1;
        } else if (target == "const1") {
            f = true;
        } else if (target == "and") {
            f = std::popcount(x) == static_cast<int>(n);
        } else if (target == "or") {
            f = x != 0;
        } else if (target == "majority") {
            f = 2 * static_cast<std::uint64_t>(std::popcount(x)) > n;
        } else if (target.rfind("term:", 0) == 0) {
            const std::uint64_t k = std::stoull(target.substr(5));
            if (k > n) throw ParameterError("term size exceeds n");
            f = true;
            for (std::uint64_t pos = 0; pos < k; ++pos) f = f && bit(x, pos);
        } else {
            throw ParameterError("unknown target '" + target + "'");
        }
        v[x] = f ? T(1) : T(0);
    }
    return v;
}

// Known fat contents used as oracles; empty when none is known.
inline std::optional<ExactProb> known_fat(const std::string& target, std::uint64_t n) {
    if (target == "const1") return ExactProb(1);
    if (target == "parity2") return make_rational(1, 2);
    if (target == "and") return inverse_power(2, n);
    if (target.rfind("term:", 0) == 0) return inverse_power(2, std::stoull(target.substr(5)));
    return std::nullopt;
}

template <class T>
void record_fat(Report& rep, const FatLpResult<T>& r, const std::optional<ExactProb>& expected) {
    auto& rec = rep.add("fat_lp", kExactScalar<T> ? Mode::exact : Mode::floating, r.ok());
    rec.values = {{"value", scalar_json(r.value)}, {"status", status_name(r.status)},
                  {"duality_gap", r.duality_gap}, {"reproduces", r.reproduces}};
    rec.bounds = {{"lower_bound", scalar_json(r.lower_bound)}, {"duality_gap_below", kMaxDualityGap}};
    if (expected) {
        bool match;
        if constexpr (kExactScalar<T>) {
            match = r.value == *expected;
        } else {
            match = std::abs(scalar_value(r.value) - to_double(*expected)) < 1e-9;
        }
        auto& e = rep.add("fat_expected", kExactScalar<T> ? Mode::exact : Mode::floating, match);
        e.values = {{"value", scalar_json(r.value)}};
        e.bounds = {{"expected", exact_json(*expected)}};
    }
    rep.details["lp"] = fat_json(r);
}

inline Report cmd_fat(const RunConfig& cfg) {
    Report rep = start_report(cfg);
    const std::string target = cfg.target.empty() ? "parity2" : cfg.target;
    if (cfg.n > kMaxFatBits) throw ScaleError("fat content LP needs n <= 8");
    const std::size_t max_size = cfg.term_size && cfg.term_size < cfg.n ? cfg.term_size : cfg.n;
    const auto expected = max_size == cfg.n ? known_fat(target, cfg.n) : std::nullopt;
    if (cfg.n <= kMaxExactFatBits) {
        record_fat(rep, fat_lp(bit_target_truth<ExactProb>(target, cfg.n, cfg.input), max_size), expected);
    } else {
        record_fat(rep, fat_lp(bit_target_truth<long double>(target, cfg.n, cfg.input), max_size), expected);
    }
    return rep;
}

inline Report cmd_fourier(const RunConfig& cfg) {
    Report rep = start_report(cfg);
    const std::string target = cfg.target.empty() ? "surj" : cfg.target;
    std::vector<ExactProb> truth;
    if (target == "surj") {
        const Params p = params_from_m(cfg.m);
        require_fourier_size(p.n);
        truth = truth_vector<ExactProb>(surj_function(p), p.n);
    } else {
        truth = bit_target_truth<ExactProb>(target, cfg.n, cfg.input);
    }
    const auto poly = fourier(truth);
    const ExactProb energy = parseval_sum(poly);
    ExactProb second(0);
    for (const auto& v : truth) second += v * v;
    second *= half_power<ExactProb>(poly.n);
    auto& par = rep.add("parseval", Mode::exact, energy == second);
    par.values = {{"sum_squares", exact_json(energy)}};
    par.bounds = {{"expectation_f_squared", exact_json(second)}};

    Json errors = Json::array();
    Json levels = Json::array();
    bool monotone = true;
    ExactProb previous(-1);
    for (int d = 0; d <= static_cast<int>(poly.n); ++d) {
        const auto cut = truncate_and_error(poly, d);
        if (previous >= 0 && cut.error > previous) monotone = false;
        previous = cut.error;
        errors.push_back(exact_json(cut.error));
        ExactProb level(0);
        for (std::uint64_t s = 0; s < poly.coeffs.size(); ++s) {
            if (subset_size(s) == d) level += poly.coeffs[s] * poly.coeffs[s];
        }
        levels.push_back(exact_json(level));
    }
    auto& err = rep.add("truncation_error_monotone", Mode::exact, monotone && previous == 0);
    err.values = {{"error_by_degree", errors}};
    const bool roundtrip = truth_from_monomial(monomial_from_parity(poly)) == truth &&
                           parity_from_monomial(monomial_from_truth(truth)).coeffs == poly.coeffs;
    rep.add("basis_roundtrip", Mode::exact, roundtrip);
    std::size_t nonzero = 0;
    for (const auto& c : poly.coeffs) nonzero += c != 0;
    rep.details = {{"n", poly.n}, {"degree", poly.degree()}, {"nonzero_coefficients", nonzero},
                   {"weight_by_level", levels}, {"mean", exact_json(poly.coeffs[0])}};
    return rep;
}

// --- bs -----------------------------------------------------------------------------

inline void bs_single_surj(Report& rep, const Word& x, const Params& p) {
    validate_word(x, p);
    const std::uint64_t im = image_size(x, p);
    const BitString b = encode(x, p);
    const std::uint64_t s = sensitivity_at(surj_function(p), b);
    if (im != p.M && im + 1 != p.M) {
        auto& rec = rep.add("certificate", Mode::exact, true);
        rec.vacuous = true;
        rec.values = {{"image_size", im}, {"certified_bs", 0}, {"sensitivity", s}};
        return;
    }
    const BlockFamily bf = im == p.M ? surj_one_input_blocks(x, p) : surj_zero_input_blocks(x, p);
    const BlockCheck check = verify_block_family(bf, surj_function(p));
    const std::uint64_t expected =
        im == p.M ? p.M * static_cast<std::uint64_t>(p.m) : repeated_coordinates(x, p).size();
    auto& rec = rep.add("certificate", Mode::exact, check.pass && bf.size() == expected && s <= bf.size());
    rec.values = {{"image_size", im}, {"blocks", bf.size()}, {"sensitivity", s}, {"check", block_check_json(check)}};
    rec.bounds = {{"blocks", expected}};
    rep.details["certificate"] = block_family_json(bf);
    rep.details["word"] = word_json(x);
}

inline void bs_tribes(Report& rep, const RunConfig& cfg) {
    const TribesParams t = tribes_params(cfg.n);
    const Params p = t.as_params();
    const TruthTable table = truth_table(tribes_function(t), p.n);
    const auto check_word = [&](const Word& x, bool& zero_ok, bool& one_ok, std::size_t& min_zero,
                                std::size_t& max_one) {
        if (!f_tribes(x, t)) {
            const BlockFamily bf = tribes_zero_input_blocks(x, t);
            zero_ok = zero_ok && bf.verified && bf.size() >= t.N;
            min_zero = std::min(min_zero, bf.size());
        } else {
            const BlockFamily best = max_block_family(table, point_from_bits(encode(x, p)), "tribes");
            one_ok = one_ok && verify_block_family(best, tribes_function(t)).pass &&
                     best.size() <= static_cast<std::size_t>(t.width);
            max_one = std::max(max_one, best.size());
        }
    };
    bool zero_ok = true, one_ok = true;
    std::size_t min_zero = SIZE_MAX, max_one = 0;
    if (!cfg.input.empty()) {
        check_word(parse_word_text(cfg.input), zero_ok, one_ok, min_zero, max_one);
    } else {
        for (std::uint64_t idx = 0; idx < word_count(p); ++idx) {
            check_word(word_from_index(idx, p), zero_ok, one_ok, min_zero, max_one);
        }
    }
    auto& z = rep.add("tribes_zero_inputs", Mode::exact, zero_ok);
    z.values = {{"min_blocks", min_zero == SIZE_MAX ? 0 : min_zero}};
    z.bounds = {{"blocks_at_least", t.N}};
    z.vacuous = min_zero == SIZE_MAX;
    auto& o = rep.add("tribes_one_inputs", Mode::exact, one_ok);
    o.values = {{"max_disjoint_family", max_one}};
    o.bounds = {{"at_most_width", t.width}};
    rep.details["tribes"] = {{"N", t.N}, {"width", t.width}, {"marked_value", t.marked}};
}

inline Report cmd_bs(const RunConfig& cfg) {
    Report rep = start_report(cfg);
    const std::string target = cfg.target.empty() ? "surj" : cfg.target;
    if (target == "tribes") {
        bs_tribes(rep, cfg);
        return rep;
    }
    if (target != "surj") throw ParameterError("bs target must be surj or tribes");
    const Params p = params_from_m(cfg.m);
    rep.details["params"] = params_json(p);
    if (!cfg.input.empty()) {
        bs_single_surj(rep, parse_word_text(cfg.input), p);
        return rep;
    }
    const bool exact = p.m <= kMaxExactWordM;
    Rng rng(cfg.seed);
    const BsAverageReport r = exact ? avg_bs_lower_bound_exact(p) : avg_bs_lower_bound(p, cfg.samples, rng);
    auto& rec = rep.add("certified_average_bs", r.mode, r.all_verified && r.ones_exact && r.pigeonhole_ok);
    rec.values = bs_average_json(r);
    rec.bounds = {{"one_input_blocks", p.M * static_cast<std::uint64_t>(p.m)},
                  {"zero_input_blocks_at_least", p.N >= p.M ? p.N - p.M : 0}};
    if (exact) {
        const AvgSensitivity s = avg_sensitivity_exact(surj_function(p), p.n);
        auto& sr = rep.add("avg_sensitivity_below_certified_bs", Mode::exact, s.overall <= r.bs_all);
        sr.values = avg_sensitivity_json(s);
        sr.bounds = {{"certified_bs_average", exact_json(r.bs_all)}};
    }
    return rep;
}

// --- adaptive -------------------------------------------------------------------------

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw EncodingError(path + ": " + e.what());
    }
}

inline AdaptiveReport run_adaptive(const QueryStrategy& s, const Params& p, const WordProbs* table,
                                   std::uint64_t samples, Rng& rng) {
    return table ? adaptive_bias_exact(s, *table) : adaptive_bias_sampled(s, p, samples, rng);
}

inline Report cmd_adaptive(const RunConfig& cfg) {
    Report rep = start_report(cfg);
    const Params p = params_from_m(cfg.m);
    const bool exact = p.m <= kMaxExactWordM;
    std::optional<WordProbs> table;
    if (exact) table = exact_word_probs(p);
    Rng rng(cfg.seed);
    const Mode mode = exact ? Mode::exact : Mode::sampled;
    if (!cfg.strategy.empty()) {
        const QueryStrategy s = strategy_from_json(load_json_file(cfg.strategy), p);
        const AdaptiveReport r = run_adaptive(s, p, table ? &*table : nullptr, cfg.samples, rng);
        auto& rec = rep.add("strategy", mode, r.pass);
        rec.values = adaptive_json(r);
        rec.bounds = {{"bias", exact_json(r.bound)}};
        rep.details["strategy"] = strategy_json(s);
        return rep;
    }
    const std::size_t count = pick(cfg.count, 50);
    const std::size_t width = std::min<std::size_t>(cfg.width, p.N);
    Json rows = Json::array();
    bool all = true;
    ExactProb max_exact = 0;
    double max_est = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const QueryStrategy s = random_strategy(p, cfg.depth, width, rng);
        const AdaptiveReport r = run_adaptive(s, p, table ? &*table : nullptr, cfg.samples, rng);
        all = all && r.pass;
        if (r.bias > max_exact) max_exact = r.bias;
        max_est = std::max(max_est, r.bias_est);
        rows.push_back(adaptive_json(r));
    }
    auto& rec = rep.add("random_strategies", mode, all);
    rec.values = {{"strategies", count}, {"T", cfg.depth}, {"w", width}};
    if (exact) {
        rec.values["max_bias"] = exact_json(max_exact);
    } else {
        rec.values["max_bias_estimate"] = max_est;
    }
    rec.bounds = {{"bias", exact_json(make_rational(static_cast<long>(2 * cfg.depth * width), p.M))}};
    rep.details["strategies"] = rows;
    return rep;
}

inline Report run_command(const RunConfig& cfg) {
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "trend") return cmd_trend(cfg);
    if (cfg.command == "fat") return cmd_fat(cfg);
    if (cfg.command == "fourier") return cmd_fourier(cfg);
    if (cfg.command == "bs") return cmd_bs(cfg);
    if (cfg.command == "adaptive") return cmd_adaptive(cfg);
    throw ParameterError("unknown command '" + cfg.command + "'");
}

inline std::string render(const Report& rep, const std::string& format) {
    if (format == "csv") return rep.to_csv();
    if (format != "json") throw ParameterError("format must be json or csv");
    return rep.to_json().dump(2) + "\n";
}

}  // namespace glnlab

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Seeds and tolerances are fixed here and are not tuned to the outcome.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "glnlab/circuits.hpp"
#include "glnlab/commands.hpp"
#include "glnlab/dist.hpp"
#include "glnlab/fooling.hpp"
#include "glnlab/polylab.hpp"
#include "glnlab/sensitivity.hpp"

using namespace glnlab;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr std::uint64_t kTrendSamples = 100000;
constexpr double kSigmas = 3.0;
constexpr double kPuFloor = 0.287 - 0.02;
constexpr double kPdCeiling = 0.265 + 0.02;

const WordProbs& m2() {
    static const WordProbs t = exact_word_probs(params_from_m(2));
    return t;
}

// Monte Carlo at m = 8 and m = 10, shared by criteria 3 and 5.
const TrendSample& trend(int m) {
    static const TrendSample t8 = run_trend_samples(params_from_m(8), kTrendSamples, kSeed);
    static const TrendSample t10 = run_trend_samples(params_from_m(10), kTrendSamples, kSeed);
    return m == 8 ? t8 : t10;
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void info(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Outcome inverse_identity() {
    Outcome o;
    const Params p = params_from_m(2);
    const WordLaw back = inverse_perturb_law(m2().pd, p);
    const WordLaw u = uniform_law(p);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < u.size(); ++i) mismatches += back[i] != u[i];
    o.require(back.size() == 4096, "4096 words");
    o.require(mismatches == 0, std::to_string(mismatches) + " words differ from U");
    o.info("D^inv(D(U)) = U on " + std::to_string(u.size() - mismatches) + "/4096 words");
    return o;
}

Outcome almost_kwise() {
    Outcome o;
    const auto& t = m2();
    for (std::size_t k : {1u, 2u}) {
        const auto res = check_almost_kwise_exact(t, k);
        const ExactProb lo = 1 - make_rational(static_cast<long>(2 * k), t.params.M);
        const ExactProb hi = 1 + make_rational(static_cast<long>(2 * k), t.params.M);
        std::size_t bad = 0;
        for (const auto& r : res.reports) bad += r.ratio < lo || r.ratio > hi;
        o.require(bad == 0 && res.all_pass, std::to_string(bad) + " bit " + std::to_string(k) + "-terms out of range");
        o.info(std::to_string(res.reports.size()) + " bit " + std::to_string(k) + "-terms in range");
    }
    std::size_t ones = 0;
    for (std::uint64_t i = 0; i < t.params.N; ++i) {
        for (Value y = 0; y < t.params.M; ++y) {
            const ProperTerm c = make_proper_term({{i, y}});
            ones += proper_term_ratio_exact(c, t).ratio == 1 && proper_term_ratio_closed(c, t.params).ratio == 1;
        }
    }
    o.require(ones == t.params.N * t.params.M, "proper 1-term ratio != 1");
    std::size_t distinct_ok = 0, repeated_ok = 0, pairs = 0;
    for (std::uint64_t i = 0; i < t.params.N; ++i) {
        for (std::uint64_t j = i + 1; j < t.params.N; ++j) {
            for (Value a = 0; a < t.params.M; ++a) {
                for (Value b = 0; b < t.params.M; ++b) {
                    const ProperTerm c = make_proper_term({{i, a}, {j, b}});
                    const ExactProb want = a == b ? make_rational(4, 3) : make_rational(8, 9);
                    const bool ok = proper_term_ratio_exact(c, t).ratio == want &&
                                    proper_term_ratio_closed(c, t.params).ratio == want;
                    (a == b ? repeated_ok : distinct_ok) += ok;
                    ++pairs;
                }
            }
        }
    }
    o.require(distinct_ok + repeated_ok == pairs, "proper 2-term ratios");
    o.info(std::to_string(distinct_ok) + " distinct-value 2-terms at 8/9, " + std::to_string(repeated_ok) +
           " repeated-value at 4/3 (enumeration and closed form)");
    return o;
}

Outcome distinguishing_bias() {
    Outcome o;
    const auto& t = m2();
    const auto [eu, ed] = event_probs(t, [&](const Word& x) { return f_surj(x, t.params); });
    o.require(eu == make_rational(1560, 4096), "E_U[f] != 1560/4096");
    o.require(ed == 0, "E_D[f] != 0");
    const double inv_e = std::exp(-1.0);
    const double p4 = to_double(exact_symmetric_probs(params_from_m(4), 0).under_u);
    o.info("E_U = " + rational_string(eu) + ", E_D = " + rational_string(ed));
    o.info(fmt("exact P(m=4) = %.6f", p4));
    double previous = 1.0;
    for (int m : {8, 10}) {
        const ProportionEstimate& e = trend(m).u_class[0];
        const double sigma = e.std_error();
        const double dist = std::abs(e.value() - inv_e);
        o.require(e.value() >= inv_e - kSigmas * sigma && e.value() <= p4 + kSigmas * sigma,
                  "m=" + std::to_string(m) + " outside 3 sigma of [1/e, P(m=4)]");
        o.require(dist < previous, "|estimate - 1/e| not decreasing at m=" + std::to_string(m));
        o.info("m=" + std::to_string(m) + fmt(": Pr_U = %.5f", e.value()) + fmt(" +- %.5f", sigma) +
               fmt(", |est-1/e| = %.2e", dist));
        previous = dist;
    }
    return o;
}

Outcome dnf_fooling() {
    Outcome o;
    const auto& t = m2();
    Rng rng(derive_seed(kSeed, 4));
    const std::size_t k = 2;
    const ExactProb lo = 1 - make_rational(static_cast<long>(k), t.params.M);
    const ExactProb hi = 1 + make_rational(static_cast<long>(2 * k), t.params.M);
    ExactProb min_ratio(2), max_ratio(0);
    std::size_t dnf_ok = 0;
    for (int s = 0; s < 200; ++s) {
        const Dnf f = random_proper_dnf(t.params, k, 4, rng);
        const FoolingReport r = dnf_fooling_check_exact(f, t);
        const bool ok = f.width() == k && r.pu > 0 && r.ratio >= lo && r.ratio <= hi;
        dnf_ok += ok;
        if (r.ratio < min_ratio) min_ratio = r.ratio;
        if (r.ratio > max_ratio) max_ratio = r.ratio;
    }
    o.require(dnf_ok == 200, std::to_string(200 - dnf_ok) + " DNFs out of [1-k/M, 1+2k/M]");
    o.info("200 DNFs, ratios in [" + rational_string(min_ratio) + ", " + rational_string(max_ratio) + "]");
    std::size_t strat_ok = 0;
    ExactProb worst(0);
    for (int s = 0; s < 50; ++s) {
        const QueryStrategy st = random_strategy(t.params, 2, 2, rng);
        const AdaptiveReport r = adaptive_bias_exact(st, t);
        const ExactProb bound = make_rational(static_cast<long>(2 * st.depth() * st.width()), t.params.M);
        strat_ok += abs_value(ExactProb(r.pd_accept - r.pu_accept)) <= bound;
        if (r.bias > worst) worst = r.bias;
    }
    o.require(strat_ok == 50, std::to_string(50 - strat_ok) + " strategies exceed 2Tw/M");
    o.info("50 strategies (T=2, w=2), max bias " + rational_string(worst) + " <= 2");
    return o;
}

Outcome predictor_gap() {
    Outcome o;
    const TrendSample& s = trend(10);
    o.require(s.pu_b.value() > kPuFloor, fmt("Pr_U[B] = %.4f", s.pu_b.value()));
    o.require(s.pd_b.value() < kPdCeiling, fmt("Pr_D[B] = %.4f", s.pd_b.value()));
    o.info(fmt("m=10: Pr_U[B] = %.4f", s.pu_b.value()) + fmt(" > %.3f", kPuFloor) +
           fmt(", Pr_D[B] = %.4f", s.pd_b.value()) + fmt(" < %.3f", kPdCeiling) +
           fmt(", gap %.4f", s.pu_b.value() - s.pd_b.value()));
    const PredictorReport r = predictor_bias_exact(build_extremal_predictor_exact(params_from_m(2)), m2());
    o.info("m=2 exact (reported only): Pr_U[B] = " + rational_string(r.pu) + ", Pr_D[B] = " + rational_string(r.pd));
    return o;
}

Outcome certificates() {
    Outcome o;
    const Params p = params_from_m(2);
    const BoolFn f = surj_function(p);
    std::size_t ones = 0, ones_ok = 0, threes = 0, threes_ok = 0;
    for (std::uint64_t idx = 0; idx < 4096; ++idx) {
        const Word x = word_from_index(idx, p);
        const std::uint64_t im = image_size(x, p);
        if (im == 4) {
            const BlockFamily bf = surj_one_input_blocks(x, p);
            ++ones;
            ones_ok += bf.size() == 8 && verify_block_family(bf, f).pass;
        } else if (im == 3) {
            const BlockFamily bf = surj_zero_input_blocks(x, p);
            std::size_t a = 0;
            for (std::size_t i = 0; i < p.N; ++i) a += std::count(x.coords.begin(), x.coords.end(), x[i]) >= 2;
            ++threes;
            threes_ok += bf.size() == a && bf.size() >= p.N - p.M && verify_block_family(bf, f).pass;
        }
    }
    o.require(ones == 1560 && ones_ok == ones, "surjective inputs with 8 verified blocks");
    o.require(threes == 2160 && threes_ok == threes, "|Im|=3 certificates");
    o.info(std::to_string(ones_ok) + "/1560 surjective inputs with 8 blocks, " + std::to_string(threes_ok) +
           "/2160 |Im|=3 inputs with |A(X)| >= 2 blocks");
    const TribesParams tp = tribes_params(4);
    const Params q = tp.as_params();
    const BoolFn g = tribes_function(tp);
    const TruthTable table = truth_table(g, q.n);
    std::size_t zeros = 0, zeros_ok = 0, one_inputs = 0, ones_small = 0;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << q.n); ++idx) {
        const Word x = word_from_index(idx, q);
        if (!f_tribes(x, tp)) {
            const BlockFamily bf = tribes_zero_input_blocks(x, tp);
            ++zeros;
            zeros_ok += bf.size() >= 4 && verify_block_family(bf, g).pass;
        } else {
            ++one_inputs;
            ones_small += block_sensitivity(table, idx) <= 2;
        }
    }
    o.require(zeros_ok == zeros && ones_small == one_inputs, "Tribes N=4");
    o.info("Tribes N=4: " + std::to_string(zeros_ok) + "/" + std::to_string(zeros) + " 0-inputs with >= 4 blocks, " +
           std::to_string(ones_small) + "/" + std::to_string(one_inputs) + " 1-inputs with bs <= 2");
    return o;
}

Outcome fat_content() {
    Outcome o;
    std::size_t lps = 0, above = 0;
    const auto check = [&](const std::vector<ExactProb>& truth, const std::optional<ExactProb>& want,
                           const std::string& what) {
        const std::uint64_t n = size_to_bits(truth.size());
        const FatLpResult<ExactProb> r = fat_lp(truth, n);
        ++lps;
        const ExactProb eu = abs_value(expectation(truth));
        above += r.ok() && r.value >= eu;
        if (want) o.require(r.ok() && r.value == *want, what + " = " + rational_string(r.value));
    };
    for (std::uint64_t k = 1; k <= 4; ++k) {
        check(bit_target_truth<ExactProb>("term:" + std::to_string(k), 4, ""), inverse_power(2, k),
              "fat(" + std::to_string(k) + "-term)");
    }
    check(bit_target_truth<ExactProb>("parity2", 2, ""), make_rational(1, 2), "fat(parity2)");
    for (const char* name : {"majority", "or", "parity", "const1"}) {
        check(bit_target_truth<ExactProb>(name, 3, ""), std::nullopt, name);
    }
    Rng rng(derive_seed(kSeed, 7));
    for (int s = 0; s < 10; ++s) {
        std::vector<ExactProb> truth(8);
        for (auto& v : truth) v = make_rational(static_cast<long>(rng.below(7)) - 3, 1 + rng.below(3));
        check(truth, std::nullopt, "random");
    }
    o.require(above == lps, std::to_string(lps - above) + " LP results below |E_U[p]|");
    o.info("2^-k for k<=4 and parity2 = 1/2 exact; " + std::to_string(above) + "/" + std::to_string(lps) +
           " LPs >= |E_U[p]|");

    const auto& t = m2();
    std::vector<Approximation> approx = standard_approximations(t);
    for (int s = 0; s < 30; ++s) {
        approx.push_back({"random-" + std::to_string(s), random_term_combination(t.params, 20, 6, rng)});
    }
    std::size_t holds = 0, bound_ok = 0;
    for (const auto& l : lowfat_tradeoff_report(t, approx)) {
        holds += l.holds && l.slack1 >= 0 && l.slack2 >= 0 && l.slack3 >= 0;
    }
    for (std::size_t s = 0; s < approx.size(); ++s) {
        const auto r = check_fooling_bound(approx[s].tc, t.params);
        bound_ok += r.pass && ed_by_enumeration(approx[s].tc, t) == r.ed;
    }
    o.require(holds == approx.size(), "tradeoff chain");
    o.require(bound_ok == approx.size(), "term-combination fooling bound");
    o.info("inequality chain holds with nonnegative slack for " + std::to_string(holds) + "/" +
           std::to_string(approx.size()) + " combinations");
    return o;
}

Outcome circuit_fidelity() {
    Outcome o;
    for (int m : {2, 4}) {
        const Params p = params_from_m(m);
        const CircuitStats s = build_surj_circuit(p).stats();
        o.require(s.depth == 3 && s.bottom_fanin == static_cast<std::size_t>(m) && s.size == 1 + p.M + p.N * p.M,
                  "shape at m=" + std::to_string(m));
    }
    const Params p2 = params_from_m(2);
    const Circuit c2 = build_surj_circuit(p2);
    std::size_t agree2 = 0;
    for (std::uint64_t point = 0; point < 4096; ++point) {
        agree2 += c2.evaluate_point(point) == f_surj(word_from_index(point, p2), p2);
    }
    o.require(agree2 == 4096, "m=2 disagreement");
    const Params p4 = params_from_m(4);
    const Circuit c4 = build_surj_circuit(p4);
    Rng rng(derive_seed(kSeed, 8));
    std::size_t agree4 = 0, surj = 0;
    for (int s = 0; s < 100000; ++s) {
        const Word x = sample_uniform(p4, rng);
        const bool want = f_surj(x, p4);
        agree4 += c4.evaluate(encode(x, p4)) == want;
        surj += want;
    }
    o.require(agree4 == 100000, "m=4 disagreement");
    o.info("depth 3, fan-in m, size 1+M+NM; agrees on 4096/4096 (m=2) and " + std::to_string(agree4) +
           "/100000 (m=4, " + std::to_string(surj) + " surjective)");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "exact inverse identity", 60, inverse_identity},
        {2, "almost k-wise independence", 120, almost_kwise},
        {3, "constant distinguishing bias", 300, distinguishing_bias},
        {4, "DNF and adaptive fooling", 300, dnf_fooling},
        {5, "predictor gap", 300, predictor_gap},
        {6, "block-sensitivity certificates", 120, certificates},
        {7, "fat-content LP and tradeoff chain", 300, fat_content},
        {8, "circuit fidelity", 120, circuit_fidelity},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_s) o.require(false, fmt("runtime over %.0f s", c.limit_s));
        failures += !o.pass;
        std::printf("%s criterion %d: %s (%.1f s) | %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures ? 1 : 0;
}

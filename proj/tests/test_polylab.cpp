#include <gtest/gtest.h>

#include <bit>

#include "glnlab/polylab.hpp"

using namespace glnlab;

namespace {

using Q = ExactProb;

std::vector<Q> table_of(std::uint64_t n, const std::function<bool(std::uint64_t)>& f) {
    std::vector<Q> v(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < v.size(); ++x) v[x] = f(x) ? 1 : 0;
    return v;
}

std::vector<Q> random_table(std::uint64_t n, Rng& rng) {
    std::vector<Q> v(std::size_t{1} << n);
    for (auto& q : v) q = make_rational(static_cast<long>(rng.below(9)) - 4, 1 + rng.below(3));
    return v;
}

std::vector<long double> to_float(const std::vector<Q>& v) {
    std::vector<long double> out;
    for (const auto& q : v) out.push_back(static_cast<long double>(q.get_d()));
    return out;
}

const WordProbs& m2_table() {
    static const WordProbs t = exact_word_probs(params_from_m(2));
    return t;
}

}  // namespace

TEST(Simplex, UniqueOptimumByHand) {
    // x1 + 2 x2 = 4, 3 x1 + x2 = 6 has the single solution (8/5, 6/5)
    LpProblem<Q> lp(2, 2);
    lp.at(0, 0) = 1;
    lp.at(0, 1) = 2;
    lp.at(1, 0) = 3;
    lp.at(1, 1) = 1;
    lp.b = {4, 6};
    lp.c = {1, 1};
    const auto sol = solve_lp(lp);
    ASSERT_EQ(sol.status, LpStatus::optimal);
    EXPECT_EQ(sol.x[0], make_rational(8, 5));
    EXPECT_EQ(sol.x[1], make_rational(6, 5));
    EXPECT_EQ(sol.objective, make_rational(14, 5));
    EXPECT_EQ(sol.duality_gap, 0.0);
}

TEST(Simplex, NegativeRightHandSideAndDuals) {
    // -x1 - x2 = -3 with costs (1, 2): optimum x = (3, 0), dual y = -1
    LpProblem<Q> lp(1, 2);
    lp.at(0, 0) = -1;
    lp.at(0, 1) = -1;
    lp.b = {-3};
    lp.c = {1, 2};
    const auto sol = solve_lp(lp);
    ASSERT_EQ(sol.status, LpStatus::optimal);
    EXPECT_EQ(sol.objective, 3);
    EXPECT_EQ(sol.y[0], -1);
    EXPECT_EQ(sol.dual_objective, 3);
}

TEST(Simplex, InfeasibleAndUnbounded) {
    LpProblem<Q> bad(1, 2);
    bad.at(0, 0) = 1;
    bad.at(0, 1) = 1;
    bad.b = {-1};
    EXPECT_EQ(solve_lp(bad).status, LpStatus::infeasible);

    LpProblem<double> open(1, 2);
    open.at(0, 0) = 1;
    open.at(0, 1) = -1;
    open.c = {-1, 0};
    EXPECT_EQ(solve_lp(open).status, LpStatus::unbounded);
}

TEST(Fourier, ConstantAndSingleBit) {
    const auto one = fourier(table_of(3, [](std::uint64_t) { return true; }));
    EXPECT_EQ(one.coeffs[0], 1);
    for (std::size_t s = 1; s < 8; ++s) EXPECT_EQ(one.coeffs[s], 0);
    EXPECT_EQ(one.degree(), 0);

    const auto bit = fourier(table_of(3, [](std::uint64_t x) { return point_bit(x, 3, 0); }));
    EXPECT_EQ(bit.coeffs[0], make_rational(1, 2));
    const std::uint64_t s0 = position_mask(3, 0);
    EXPECT_EQ(abs_value(bit.coeffs[s0]), make_rational(1, 2));
    for (std::uint64_t s = 1; s < 8; ++s) {
        if (s != s0) {
            EXPECT_EQ(bit.coeffs[s], 0);
        }
    }
}

TEST(Fourier, ParsevalForSurjAtMTwo) {
    const auto truth = surj_truth(m2_table());
    const auto poly = fourier(truth);
    EXPECT_EQ(parseval_sum(poly), make_rational(1560, 4096));
}

TEST(Fourier, TruncationErrorEndpointsAndMonotone) {
    const auto truth = surj_truth(m2_table());
    const auto poly = fourier(truth);
    const Q mean = make_rational(1560, 4096);
    EXPECT_EQ(truncate_and_error(poly, 12).error, 0);
    EXPECT_EQ(truncate_and_error(poly, 0).error, mean - mean * mean);
    Q previous = 1;
    for (int d = 0; d <= 12; ++d) {
        const Q e = truncate_and_error(poly, d).error;
        EXPECT_LE(e, previous) << d;
        previous = e;
    }
}

TEST(Fourier, TruncationErrorIsSquaredDistance) {
    Rng rng(3);
    const auto truth = random_table(4, rng);
    const auto poly = fourier(truth);
    for (int d = 0; d <= 4; ++d) {
        const auto cut = truncate_and_error(poly, d);
        const auto approx = to_truth(cut.poly);
        Q sq(0);
        for (std::size_t x = 0; x < 16; ++x) sq += (approx[x] - truth[x]) * (approx[x] - truth[x]);
        EXPECT_EQ(sq / 16, cut.error) << d;
    }
}

TEST(Fourier, FloatParsevalWithinTolerance) {
    Rng rng(9);
    const auto truth = to_float(random_table(6, rng));
    const auto poly = fourier(truth);
    long double mean_sq = 0;
    for (auto v : truth) mean_sq += v * v / 64;
    EXPECT_NEAR(static_cast<double>(parseval_sum(poly)), static_cast<double>(mean_sq), 1e-12);
}

TEST(Bases, RoundTripsAreExact) {
    Rng rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        const auto truth = random_table(4, rng);
        const auto mono = monomial_from_truth(truth);
        EXPECT_EQ(truth_from_monomial(mono), truth);
        const auto poly = fourier(truth);
        EXPECT_EQ(to_truth(poly), truth);
        EXPECT_EQ(monomial_from_parity(poly), mono);
        EXPECT_EQ(parity_from_monomial(mono).coeffs, poly.coeffs);
        EXPECT_EQ(truth_of(from_monomial(mono)), truth);
    }
}

TEST(Bases, XorMonomialExpansion) {
    // x0 + x1 - 2 x0 x1
    const auto mono = monomial_from_truth(table_of(2, [](std::uint64_t x) { return std::popcount(x) == 1; }));
    EXPECT_EQ(mono[0], 0);
    EXPECT_EQ(mono[1], 1);
    EXPECT_EQ(mono[2], 1);
    EXPECT_EQ(mono[3], -2);
}

TEST(Fat, SingleTermIsTwoToMinusK) {
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto truth = table_of(5, [k](std::uint64_t x) {
            for (std::uint64_t pos = 0; pos < k; ++pos) {
                if (point_bit(x, 5, pos) != (pos % 2 == 0)) return false;
            }
            return true;
        });
        const auto r = fat_lp(truth, 5);
        ASSERT_TRUE(r.ok()) << k;
        EXPECT_EQ(r.value, inverse_power(2, k)) << k;
    }
}

TEST(Fat, ParityAndConstant) {
    const auto xor2 = table_of(2, [](std::uint64_t x) { return std::popcount(x) == 1; });
    const auto r = fat_lp(xor2, 2);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.value, make_rational(1, 2));
    EXPECT_EQ(r.lower_bound, make_rational(1, 2));
    EXPECT_EQ(fat_lp(table_of(3, [](std::uint64_t) { return true; }), 3).value, 1);
}

TEST(Fat, FullParityInFloatingMode) {
    // the 2^(n-1) odd full terms give weight 1/2, which meets E_U
    const auto truth = to_float(table_of(6, [](std::uint64_t x) { return std::popcount(x) % 2 == 1; }));
    const auto r = fat_lp(truth, 6);
    ASSERT_TRUE(r.ok());
    EXPECT_NEAR(static_cast<double>(r.value), 0.5, 1e-9);
    EXPECT_LT(r.duality_gap, kMaxDualityGap);
}

TEST(Fat, ExactAndFloatAgree) {
    Rng rng(15);
    for (int trial = 0; trial < 4; ++trial) {
        const auto truth = random_table(3, rng);
        const auto e = fat_lp(truth, 3);
        const auto f = fat_lp(to_float(truth), 3);
        ASSERT_TRUE(e.ok());
        ASSERT_TRUE(f.ok());
        EXPECT_NEAR(static_cast<double>(f.value), to_double(e.value), 1e-9);
    }
}

TEST(Fat, NeverBelowMeanAndSubadditive) {
    Rng rng(27);
    for (int trial = 0; trial < 6; ++trial) {
        const auto p = random_table(3, rng);
        const auto q = random_table(3, rng);
        std::vector<Q> sum(p.size());
        for (std::size_t x = 0; x < p.size(); ++x) sum[x] = p[x] + q[x];
        const auto fp = fat_lp(p, 3), fq = fat_lp(q, 3), fs = fat_lp(sum, 3);
        ASSERT_TRUE(fp.ok() && fq.ok() && fs.ok());
        EXPECT_GE(fp.value, abs_value(expectation(p)));
        EXPECT_LE(fs.value, fp.value + fq.value);
    }
}

TEST(Fat, RestrictedTermSizeCanBeInfeasible) {
    const auto and3 = table_of(3, [](std::uint64_t x) { return x == 7; });
    EXPECT_EQ(fat_lp(and3, 2).status, LpStatus::infeasible);
    EXPECT_THROW(fat_lp(std::vector<Q>(64, Q(0)), 6), ScaleError);
}

TEST(FoolingBound, SingleOneTermHasNoGap) {
    const Params p = params_from_m(2);
    TermCombination<Q> tc;
    tc.n = p.n;
    tc.terms.push_back({Q(1), make_bit_term({{5, 1}})});
    const auto r = check_fooling_bound(tc, p);
    EXPECT_EQ(r.gap, 0);
    EXPECT_TRUE(r.pass);
}

TEST(FoolingBound, FourBitTermFromProperTwoTerm) {
    // Delta(x0,0) Delta(x1,1): Pr_U = 1/16, Pr_D = 1/18, bound (2*4/4)(1/16)
    const Params p = params_from_m(2);
    TermCombination<Q> tc;
    tc.n = p.n;
    tc.terms.push_back({Q(1), to_bit_term(make_proper_term({{0, 0}, {1, 1}}), p)});
    const auto r = check_fooling_bound(tc, p);
    EXPECT_EQ(r.gap, make_rational(1, 144));
    EXPECT_EQ(r.middle, make_rational(1, 8));
    EXPECT_EQ(r.top, make_rational(1, 8));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(ed_by_enumeration(tc, m2_table()), make_rational(1, 18));
}

TEST(FoolingBound, RandomCombinationsTwoWays) {
    const auto& t = m2_table();
    Rng rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        TermCombination<Q> tc;
        tc.n = t.params.n;
        for (int j = 0; j < 20; ++j) {
            std::vector<std::pair<std::uint64_t, std::uint8_t>> lits;
            const std::size_t size = rng.below(6);
            while (lits.size() < size) {
                const auto pos = rng.below(12);
                if (std::none_of(lits.begin(), lits.end(), [&](const auto& l) { return l.first == pos; })) {
                    lits.emplace_back(pos, static_cast<std::uint8_t>(rng.below(2)));
                }
            }
            tc.terms.push_back({make_rational(static_cast<long>(rng.below(11)) - 5, 1 + rng.below(3)),
                                make_bit_term(std::move(lits))});
        }
        const auto r = check_fooling_bound(tc, t.params);
        EXPECT_TRUE(r.pass) << trial;
        EXPECT_EQ(ed_by_enumeration(tc, t), r.ed) << trial;
        Q eu(0);
        for (const auto& v : truth_of(tc)) eu += v;
        EXPECT_EQ(eu / 4096, r.eu);
    }
}

TEST(Tradeoff, StandardApproximationsHold) {
    const auto& t = m2_table();
    const auto lines = lowfat_tradeoff_report(t, standard_approximations(t));
    ASSERT_EQ(lines.size(), 5u);
    for (const auto& l : lines) {
        EXPECT_TRUE(l.holds) << l.name;
        EXPECT_EQ(l.lhs, make_rational(1560, 4096));
        EXPECT_GE(l.slack1, 0.0);
        EXPECT_GE(l.slack2, 0.0);
        EXPECT_GE(l.slack3, 0.0);
    }
    const auto& exact = lines[0];
    EXPECT_EQ(exact.name, "monomial-expansion");
    EXPECT_EQ(exact.eu_delta_sq, 0);
    EXPECT_EQ(exact.ed_delta_sq, 0);
    const auto& constant = lines[1];
    EXPECT_EQ(constant.degree, 0u);
    EXPECT_EQ(constant.weight, make_rational(1560, 4096));
    EXPECT_EQ(constant.eu_delta, 0);
}

#include <gtest/gtest.h>

#include "glnlab/circuits.hpp"
#include "glnlab/dist.hpp"

using namespace glnlab;

TEST(SurjCircuit, ShapeAtMTwo) {
    const Circuit c = build_surj_circuit(params_from_m(2));
    const CircuitStats s = c.stats();
    EXPECT_EQ(s.size, 29u);  // 1 + 4 + 6 * 4
    EXPECT_EQ(s.depth, 3u);
    EXPECT_EQ(s.bottom_fanin, 2u);
}

TEST(SurjCircuit, ShapeFollowsFormula) {
    for (int m : {1, 3, 4, 5}) {
        const Params p = params_from_m(m);
        const CircuitStats s = build_surj_circuit(p).stats();
        EXPECT_EQ(s.size, 1 + p.M + p.N * p.M) << m;
        EXPECT_EQ(s.depth, 3u) << m;
        EXPECT_EQ(s.bottom_fanin, static_cast<std::size_t>(m)) << m;
    }
}

TEST(SurjCircuit, AgreesOnAllInputsAtMTwo) {
    const Params p = params_from_m(2);
    const Circuit c = build_surj_circuit(p);
    std::uint64_t ones = 0;
    for (std::uint64_t point = 0; point < 4096; ++point) {
        const bool want = f_surj(word_from_index(point, p), p);
        ASSERT_EQ(c.evaluate_point(point), want) << point;
        ASSERT_EQ(c.evaluate(bits_from_point(point, p.n)), want);
        ones += want;
    }
    EXPECT_EQ(ones, 1560u);
}

TEST(SurjCircuit, AgreesOnSampledInputsAtMFour) {
    const Params p = params_from_m(4);
    const Circuit c = build_surj_circuit(p);
    Rng rng(6);
    int surj = 0;
    for (int s = 0; s < 3000; ++s) {
        // mix U and D so both values occur often
        const Word x = s % 2 ? sample_uniform(p, rng) : sample_d(p, rng);
        const bool want = f_surj(x, p);
        ASSERT_EQ(c.evaluate(encode(x, p)), want);
        surj += want;
    }
    EXPECT_GT(surj, 300);
}

TEST(Circuit, DepthCountsAlternations) {
    Circuit c(4);
    const int a = c.add_and({c.add_input(0), c.add_input(1)});
    const int b = c.add_and({a, c.add_input(2)});  // merges with a
    c.set_output(c.add_or({b, c.add_input(3)}));
    EXPECT_EQ(c.stats().depth, 2u);
    EXPECT_EQ(c.stats().size, 3u);
}

TEST(Circuit, NormalizationPushesNegationsToInputs) {
    // NOT(AND(x0, OR(x1, NOT x2), NOT(AND(x3, x0))))
    Circuit c(4);
    const int inner = c.add_and({c.add_input(3), c.add_input(0)});
    const int mid = c.add_or({c.add_input(1), c.add_not(c.add_input(2))});
    c.set_output(c.add_not(c.add_and({c.add_input(0), mid, c.add_not(inner)})));
    const Circuit n = c.normalized();
    for (std::uint64_t point = 0; point < 16; ++point) EXPECT_EQ(n.evaluate_point(point), c.evaluate_point(point));
    for (const auto& g : n.gates()) {
        if (g.kind == Circuit::Kind::negation) {
            EXPECT_EQ(n.gates()[g.children[0]].kind, Circuit::Kind::input);
        }
    }
}

TEST(Circuit, InputsAndNegationsAreShared) {
    Circuit c(3);
    EXPECT_EQ(c.add_input(1), c.add_input(1));
    EXPECT_EQ(c.add_literal(2, false), c.add_literal(2, false));
    EXPECT_THROW(c.add_input(3), EncodingError);
    EXPECT_THROW(c.add_and({7}), EncodingError);
    EXPECT_THROW(c.stats(), PreconditionError);
}

TEST(Circuit, UnreachableGatesDoNotCount) {
    Circuit c(2);
    c.add_and({c.add_input(0), c.add_input(1)});
    c.set_output(c.add_or({c.add_input(0), c.add_input(1)}));
    EXPECT_EQ(c.stats().size, 1u);
}

TEST(DnfCircuit, MatchesDnfSemantics) {
    const Params p = params_from_m(2);
    const Dnf f = Dnf::of_proper({make_proper_term({{0, 1}, {3, 2}}), make_proper_term({{5, 0}})});
    const Circuit c = build_dnf_circuit(f, p);
    EXPECT_EQ(c.stats().depth, 2u);
    for (std::uint64_t point = 0; point < 4096; point += 3) {
        EXPECT_EQ(c.evaluate_point(point), eval_dnf(f, word_from_index(point, p), p));
    }
    const Circuit empty = build_dnf_circuit(Dnf::of_proper({}), p);
    EXPECT_FALSE(empty.evaluate_point(0));
}

TEST(Tribes, ParametersRequirePowerOfTwo) {
    EXPECT_THROW(tribes_params(3), ParameterError);
    EXPECT_THROW(tribes_params(1), ParameterError);
    EXPECT_THROW(tribes_params(4, 4), ParameterError);
    const TribesParams t = tribes_params(8);
    EXPECT_EQ(t.width, 3);
    EXPECT_EQ(t.as_params().n, 24u);
}

TEST(Tribes, CircuitMatchesDefinitionExhaustively) {
    for (Value marked : {0u, 3u}) {
        const TribesParams t = tribes_params(4, marked);
        const Params p = t.as_params();
        const Circuit c = build_tribes_circuit(t);
        EXPECT_EQ(c.stats().depth, 2u);
        EXPECT_EQ(c.stats().bottom_fanin, 2u);
        for (std::uint64_t point = 0; point < 256; ++point) {
            const Word x = word_from_index(point, p);
            const bool want = std::find(x.coords.begin(), x.coords.end(), marked) != x.coords.end();
            EXPECT_EQ(f_tribes(x, t), want);
            EXPECT_EQ(c.evaluate_point(point), want);
        }
    }
}

TEST(Names, GateKinds) {
    EXPECT_STREQ(kind_name(Circuit::Kind::conjunction), "AND");
    EXPECT_STREQ(kind_name(Circuit::Kind::negation), "NOT");
}

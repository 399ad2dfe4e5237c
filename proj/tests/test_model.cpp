#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "glnlab/errors.hpp"
#include "glnlab/model.hpp"
#include "glnlab/rng.hpp"

using namespace glnlab;

TEST(Params, CoordinateCountsMatchTable) {
    const std::pair<int, std::uint64_t> table[] = {{2, 6}, {3, 17}, {4, 45}, {8, 1420}, {10, 7098}};
    for (const auto& [m, N] : table) {
        const Params p = params_from_m(m);
        EXPECT_EQ(p.N, N) << "m = " << m;
        EXPECT_EQ(p.M, std::uint64_t{1} << m);
        EXPECT_EQ(p.n, N * static_cast<std::uint64_t>(m));
    }
}

TEST(Params, CeilingSitsJustAboveProduct) {
    // N - 1 < M m ln 2 <= N, checked in long double for every supported m
    for (int m = 1; m <= 16; ++m) {
        const Params p = params_from_m(m);
        const long double product = static_cast<long double>(p.M) * m * std::log(2.0L);
        EXPECT_LT(static_cast<long double>(p.N - 1), product) << m;
        EXPECT_GE(static_cast<long double>(p.N), product) << m;
    }
}

TEST(Params, RejectsOutOfRange) {
    EXPECT_THROW(params_from_m(0), ParameterError);
    EXPECT_THROW(params_from_m(-3), ParameterError);
    EXPECT_THROW(params_from_m(kMaxM + 1), ParameterError);
}

TEST(Encoding, MostSignificantBitFirst) {
    const Params p = params_from_m(2);
    const Word x{0, 1, 2, 3, 0, 1};
    EXPECT_EQ(to_bit_text(encode(x, p)), "000110110001");
}

TEST(Encoding, RoundTripsRandomWords) {
    Rng rng(11);
    for (int m : {1, 2, 3, 5, 8}) {
        const Params p = params_from_m(m);
        for (int t = 0; t < 20; ++t) {
            Word x;
            for (std::uint64_t i = 0; i < p.N; ++i) x.coords.push_back(static_cast<Value>(rng.below(p.M)));
            EXPECT_EQ(decode(encode(x, p), p), x);
        }
    }
}

TEST(Encoding, RejectsBadShapes) {
    const Params p = params_from_m(2);
    EXPECT_THROW(encode(Word{0, 1, 2}, p), EncodingError);
    EXPECT_THROW(encode(Word{0, 1, 2, 3, 4, 0}, p), EncodingError);
    EXPECT_THROW(decode(BitString(std::vector<std::uint8_t>(11, 0)), p), EncodingError);
    EXPECT_THROW(decode(BitString(std::vector<std::uint8_t>(12, 2)), p), EncodingError);
    EXPECT_THROW(from_bit_text("01x"), EncodingError);
}

TEST(Indexing, WordIndexEqualsBigEndianPoint) {
    const Params p = params_from_m(2);
    for (std::uint64_t idx = 0; idx < word_count(p); idx += 37) {
        const Word x = word_from_index(idx, p);
        EXPECT_EQ(word_index(x, p), idx);
        EXPECT_EQ(point_from_bits(encode(x, p)), idx);
        const BitString b = bits_from_point(idx, p.n);
        for (std::uint64_t pos = 0; pos < p.n; ++pos) EXPECT_EQ(point_bit(idx, p.n, pos), b[pos] == 1);
    }
}

TEST(Surjectivity, CountAtMTwoIs1560) {
    const Params p = params_from_m(2);
    std::uint64_t count = 0;
    for (std::uint64_t idx = 0; idx < word_count(p); ++idx) count += f_surj(word_from_index(idx, p), p);
    EXPECT_EQ(count, 1560u);  // 4! * S(6,4) = 24 * 65
}

TEST(Surjectivity, ImageHistogramAndMissingAgree) {
    const Params p = params_from_m(2);
    for (std::uint64_t idx = 0; idx < word_count(p); idx += 13) {
        const Word x = word_from_index(idx, p);
        const Histogram h = histogram(x, p);
        EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), std::uint64_t{0}), p.N);
        const auto present = static_cast<std::uint64_t>(std::count_if(h.counts.begin(), h.counts.end(),
                                                                      [](auto c) { return c > 0; }));
        EXPECT_EQ(image_size(x, p), present);
        EXPECT_EQ(image(x).size(), present);
        EXPECT_EQ(missing_values(x, p).size(), p.M - present);
        EXPECT_EQ(f_surj_bits(encode(x, p), p), present == p.M);
    }
}

TEST(Rng, SameSeedSameStream) {
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.below(1000);
        EXPECT_EQ(x, b.below(1000));
        differs = differs || x != c.below(1000);
    }
    EXPECT_TRUE(differs);
}

TEST(Rng, BoundedDrawIsUnbiasedOnSmallRange) {
    Rng rng(5);
    std::vector<int> counts(3, 0);
    for (int i = 0; i < 30000; ++i) ++counts[rng.below(3)];
    for (int c : counts) EXPECT_NEAR(c, 10000, 450);  // about 5 sigma
}

TEST(Rng, DerivedSeedsDiffer) {
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(9, 4), derive_seed(9, 4));
}

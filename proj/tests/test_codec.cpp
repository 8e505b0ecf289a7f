#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace udm;

namespace {

UdmFamily example2()
{
    Field f3(3, 1);
    return {f3, 3, oracle::example2_matrices(f3)};
}

Vector nth_vector(const Field& f, std::size_t n, std::uint32_t idx)
{
    Vector u(f, n);
    for (std::size_t t = 0; t < n; ++t, idx /= f.order()) u[t] = Element{idx % f.order()};
    return u;
}

}  // namespace

TEST(Encode, Examples)
{
    const auto fam = example2();
    const Field& f = fam.field();
    for (const auto& x : encode(fam, Vector(f, 3))) EXPECT_TRUE(x.is_zero());
    const auto x = encode(fam, Vector::from_values(f, {1, 0, 0}));
    EXPECT_EQ(x[0], Vector::from_values(f, {1, 0, 0}));
    EXPECT_EQ(x[1], Vector::from_values(f, {0, 0, 1}));
    EXPECT_EQ(x[2], Vector::from_values(f, {1, 0, 0}));
    EXPECT_EQ(x[3], Vector::from_values(f, {1, 0, 0}));
    std::mt19937_64 rng(31);
    for (int r = 0; r < 20; ++r) {
        const auto u = oracle::random_vector(f, 3, rng);
        const auto y = encode(fam, u)[1];
        for (std::size_t t = 0; t < 3; ++t) ASSERT_EQ(y[t], u[2 - t]);
    }
    EXPECT_THROW((void)encode(fam, Vector(f, 2)), Error);
}

TEST(Erase, KeepsPrefixes)
{
    const auto fam = example2();
    const Field& f = fam.field();
    const auto x = encode(fam, Vector::from_values(f, {2, 1, 1}));
    const auto full = erase(x, {{3, 3, 3, 3}});
    for (std::size_t l = 0; l < 4; ++l)
        EXPECT_EQ(full.channels[l].symbols, std::vector<Element>(x[l].entries().begin(), x[l].entries().end()));
    for (const auto& c : erase(x, {{0, 0, 0, 0}}).channels) EXPECT_TRUE(c.symbols.empty());
    for (const auto& k : enumerate_superset_tuples(4, 3)) {
        const auto obs = erase(x, k);
        ASSERT_EQ(obs.tuple(), k);
        for (std::size_t l = 0; l < 4; ++l)
            for (std::size_t r = 0; r < k.ks[l]; ++r) ASSERT_EQ(obs.channels[l].symbols[r], x[l][r]);
    }
    EXPECT_THROW((void)erase(x, {{4, 0, 0, 0}}), Error);
    EXPECT_THROW((void)erase(x, {{1, 0, 0}}), Error);
}

TEST(Decode, ExhaustiveRoundTripExample2)
{
    const auto fam = example2();
    std::size_t checked = 0;
    for (std::uint32_t idx = 0; idx < 27; ++idx) {
        const auto u = nth_vector(fam.field(), 3, idx);
        const auto x = encode(fam, u);
        for (const auto& k : enumerate_exact_tuples(4, 3)) {
            ASSERT_EQ(decode(fam, erase(x, k)), u) << to_string(k);
            ++checked;
        }
    }
    EXPECT_EQ(checked, 540u);
}

TEST(Decode, InsufficientSymbols)
{
    const auto fam = example2();
    const auto x = encode(fam, Vector::from_values(fam.field(), {1, 2, 0}));
    for (std::size_t w = 0; w < 3; ++w)
        for (const auto& k : enumerate_exact_tuples(4, w)) {
            try {
                (void)decode(fam, erase(x, k));
                FAIL() << to_string(k);
            } catch (const Error& e) {
                ASSERT_EQ(e.code(), Errc::InsufficientSymbols);
            }
        }
}

TEST(Decode, PerfectRecoveryOnSmallFields)
{
    // Exhaustive over q <= 3, n <= 3, every k with sum >= n.
    for (std::uint32_t q : {2u, 3u}) {
        const Field f(q, 1);
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto fam = construct(f, q + 1, n);
            std::uint32_t vectors = 1;
            for (std::size_t t = 0; t < n; ++t) vectors *= q;
            for (std::uint32_t idx = 0; idx < vectors; ++idx) {
                const auto u = nth_vector(f, n, idx);
                const auto x = encode(fam, u);
                for (const auto& k : enumerate_superset_tuples(fam.L(), n)) ASSERT_EQ(decode(fam, erase(x, k)), u);
            }
        }
    }
    // Randomized on larger fields.
    std::mt19937_64 rng(32);
    for (std::int64_t q : {4, 5, 7, 8, 9}) {
        const Field f = Field::from_order(q);
        const auto fam = construct(f, f.order() + 1, 5);
        for (int r = 0; r < 200; ++r) {
            const auto u = oracle::random_vector(f, 5, rng);
            ErasureTuple k{std::vector<std::size_t>(fam.L(), 0)};
            while (k.weight() < 5) k.ks[rng() % fam.L()] = rng() % 6;
            ASSERT_EQ(decode(fam, erase(encode(fam, u), k)), u);
        }
    }
}

TEST(Decode, FullFirstChannelReadsOff)
{
    const auto fam = example2();
    const auto u = Vector::from_values(fam.field(), {2, 0, 1});
    auto obs = erase(encode(fam, u), {{3, 0, 0, 0}});
    EXPECT_EQ(decode(fam, obs), u);
    EXPECT_EQ(obs.channels[0].symbols, std::vector<Element>(u.entries().begin(), u.entries().end()));
}

TEST(Decode, ErrorsOnMalformedOrInconsistentInput)
{
    const auto fam = example2();
    auto obs = erase(encode(fam, Vector::from_values(fam.field(), {1, 1, 1})), {{3, 1, 0, 0}});
    obs.channels[1].symbols[0] = Element{0};
    try {
        (void)decode(fam, obs);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Inconsistent);
    }
    obs.channels.pop_back();
    EXPECT_THROW((void)decode(fam, obs), Error);

    const Field& f = fam.field();
    auto mats = oracle::example2_matrices(f);
    for (std::size_t c = 0; c < 3; ++c) mats[2](0, c) = f.zero();
    const UdmFamily bad(f, 3, mats);
    try {
        (void)decode(bad, erase(encode(bad, Vector::from_values(f, {1, 2, 0})), {{0, 0, 3, 0}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::RankDeficient);
    }
}

TEST(Simulate, SufficientPatternsAlwaysDecode)
{
    const auto fam = example2();
    const auto stats = simulate(fam, 2000, uniform_exact_patterns(), 7);
    EXPECT_EQ(stats.trials, 2000u);
    EXPECT_EQ(stats.successes, 2000u);
    EXPECT_DOUBLE_EQ(stats.success_rate(), 1.0);
    EXPECT_EQ(stats.weight_histogram[3], 2000u);
    EXPECT_DOUBLE_EQ(stats.mean_weight(), 3.0);
}

TEST(Simulate, InsufficientPatternsNeverDecode)
{
    const auto fam = example2();
    const PatternSource short_patterns = [](TrialRng& rng, std::size_t L, std::size_t n) {
        ErasureTuple k{std::vector<std::size_t>(L, 0)};
        k.ks[rng.below(L)] = static_cast<std::size_t>(rng.below(n));
        return k;
    };
    const auto stats = simulate(fam, 1000, short_patterns, 8);
    EXPECT_EQ(stats.successes, 0u);
    EXPECT_EQ(stats.failures_insufficient, 1000u);
    EXPECT_DOUBLE_EQ(stats.success_rate(), 0.0);
}

TEST(Simulate, UniformBoxMatchesCountedFraction)
{
    const auto fam = example2();
    const std::uint64_t trials = 10000, seed = 99;
    const auto stats = simulate(fam, trials, uniform_box_patterns(), seed);
    // Replay the pattern draws alone and count sum >= n without decoding.
    const auto patterns = uniform_box_patterns();
    std::uint64_t sufficient = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        TrialRng rng(seed, t);
        if (patterns(rng, 4, 3).weight() >= 3) ++sufficient;
    }
    EXPECT_EQ(stats.successes, sufficient);
    EXPECT_EQ(stats.successes + stats.failures_insufficient, trials);
    EXPECT_EQ(stats.wrong_decodes, 0u);
    EXPECT_EQ(stats.failures_rank_deficient, 0u);
    // Sums 0, 1, 2 of four uniform {0..3} draws: 1 + 4 + 10 of 256 outcomes.
    EXPECT_NEAR(stats.success_rate(), 1.0 - 15.0 / 256.0, 0.01);
}

TEST(Simulate, ReproducibleAndWorkerIndependent)
{
    const auto fam = construct(Field::from_order(4), 5, 3);
    const auto a = simulate(fam, 3000, truncated_geometric_patterns(0.3), 5);
    const auto b = simulate(fam, 3000, truncated_geometric_patterns(0.3), 5);
    EXPECT_EQ(a, b);
    for (unsigned w : {2u, 3u, 8u}) EXPECT_EQ(simulate(fam, 3000, truncated_geometric_patterns(0.3), 5, w), a);
    EXPECT_NE(simulate(fam, 3000, truncated_geometric_patterns(0.3), 6), a);
    EXPECT_EQ(a.wrong_decodes, 0u);
    EXPECT_EQ(a.successes + a.failures_insufficient, a.trials);
}

TEST(Simulate, ExactPatternsAreUniform)
{
    // Every one of the 20 tuples appears with frequency near 1/20.
    const auto patterns = uniform_exact_patterns();
    std::map<std::vector<std::size_t>, int> freq;
    const int draws = 40000;
    for (int t = 0; t < draws; ++t) {
        TrialRng rng(1, static_cast<std::uint64_t>(t));
        freq[patterns(rng, 4, 3).ks]++;
    }
    EXPECT_EQ(freq.size(), 20u);
    for (const auto& [k, c] : freq) EXPECT_NEAR(c / double(draws), 0.05, 0.01);
}

TEST(TrialRng, BelowStaysInRange)
{
    TrialRng rng(3, 4);
    for (int r = 0; r < 10000; ++r) ASSERT_LT(rng.below(7), 7u);
    for (int r = 0; r < 1000; ++r) {
        const double u = rng.unit();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

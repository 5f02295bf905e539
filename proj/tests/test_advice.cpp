#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gptlab;

namespace {

AdviceState uniform_coins(std::size_t ports) {
    const unsigned n = static_cast<unsigned>(ports);
    return {ports, Behavior::from_function(n, [&](std::uint64_t, std::uint64_t) { return inverse_power_of_two(n); })};
}

/// Independent fair coins on gbits, expressed as a product state on the
/// d-fold gbit composite.
AdviceState uniform_gbit_coins(std::size_t ports) {
    RVector v = gbit_maximally_mixed().vec;
    SystemType s = gbit_system();
    for (std::size_t j = 1; j < ports; ++j) {
        v = tensor(v, gbit_maximally_mixed().vec);
        s = composite(s, gbit_system());
    }
    const auto g = gbit_theory();
    return {ports, TheoryAdvice{State(s, v), gbit_system(), g.measurements_on("gbit")}};
}

}  // namespace

TEST(Advice, SinglePartySlice) {
    const LanguageSlice slice{TruthTable::parse("01")};
    const auto [adv, fam] = build_boxworld_advice(slice);
    EXPECT_EQ(adv.ports, 1U);
    EXPECT_EQ(acceptance_probability(fam.circuit(0), adv), 0);
    EXPECT_EQ(acceptance_probability(fam.circuit(1), adv), 1);
    const auto r = decide_slice(slice);
    EXPECT_EQ(r.agreement, 2U);
    EXPECT_EQ(r.total, 2U);
    EXPECT_EQ(r.gap, 1);
}

TEST(Advice, RandomSliceAtEightIsExact) {
    Rng rng(10);
    const LanguageSlice slice{TruthTable::random(8, rng)};
    const auto [adv, fam] = build_boxworld_advice(slice);
    EXPECT_EQ(adv.ports, 8U);
    EXPECT_EQ(fam.ports, 8U);
    for (std::uint64_t x = 0; x < 256; ++x) {
        EXPECT_EQ(acceptance_probability(fam.circuit(x), adv), slice.contains(x) ? 1 : 0);
    }
    const auto r = decide_slice(slice);
    EXPECT_EQ(r.agreement, 256U);
    EXPECT_EQ(r.invalid, 0U);
    EXPECT_TRUE(r.deterministic);
    EXPECT_EQ(r.advice_ports, 8U);
}

TEST(Advice, EmptyAndFullLanguages) {
    const auto empty = decide_slice({TruthTable::parse("0000")});
    EXPECT_EQ(empty.agreement, 4U);
    EXPECT_EQ(empty.gap, 1);
    const auto full = decide_slice({TruthTable::parse("1111")});
    EXPECT_EQ(full.agreement, 4U);
    EXPECT_EQ(full.gap, 1);
    const auto [adv, fam] = build_boxworld_advice({TruthTable::parse("0000")});
    for (std::uint64_t x = 0; x < 4; ++x) {
        EXPECT_EQ(classify(acceptance_probability(fam.circuit(x), adv), {}), Verdict::reject);
    }
}

TEST(Advice, UniformCoinsGiveOneHalf) {
    for (std::size_t d = 1; d <= 4; ++d) {
        const CircuitFamily fam{static_cast<unsigned>(d), d, "", ""};
        for (std::uint64_t x = 0; x < (1U << d); ++x) {
            EXPECT_EQ(acceptance_probability(fam.circuit(x), uniform_coins(d)), Rational(1, 2));
            EXPECT_EQ(acceptance_probability(fam.circuit(x), uniform_gbit_coins(d)), Rational(1, 2));
        }
    }
}

TEST(Advice, TheoryAdviceMatchesBehaviorAdviceProperty) {
    Rng rng(12);
    for (unsigned n = 1; n <= 4; ++n) {
        const LanguageSlice slice{TruthTable::random(n, rng)};
        const auto [adv, fam] = build_boxworld_advice(slice);
        const auto &box = std::get<Behavior>(adv.payload);
        const AdviceState as_state{adv.ports, TheoryAdvice{behavior_to_vector(box), gbit_system(),
                                                           gbit_theory().measurements_on("gbit")}};
        for (std::uint64_t x = 0; x < (1U << n); ++x) {
            EXPECT_EQ(acceptance_probability(fam.circuit(x), as_state), acceptance_probability(fam.circuit(x), adv));
        }
    }
}

TEST(Advice, SyntheticHalfAdviceIsAllInvalid) {
    const LanguageSlice slice{TruthTable::parse("01101001")};
    const CircuitFamily fam{3, 3, "", ""};
    const auto r = evaluate_slice(slice, uniform_coins(3), fam);
    EXPECT_EQ(r.invalid, 8U);
    EXPECT_EQ(r.agreement, 0U);
    EXPECT_FALSE(r.deterministic);
    EXPECT_EQ(r.gap, 0);
}

TEST(Advice, ThresholdClassification) {
    const AcceptanceThresholds th;
    EXPECT_EQ(classify(Rational(2, 3), th), Verdict::accept);
    EXPECT_EQ(classify(Rational(1, 3), th), Verdict::reject);
    EXPECT_EQ(classify(Rational(1, 2), th), Verdict::invalid);
    const AcceptanceThresholds loose{Rational(3, 5), Rational(2, 5)};
    EXPECT_EQ(classify(Rational(5, 8), loose), Verdict::accept);
}

TEST(Advice, AffineInTheAdviceProperty) {
    Rng rng(15);
    for (unsigned n = 1; n <= 5; ++n) {
        const LanguageSlice s1{TruthTable::random(n, rng)};
        const LanguageSlice s2{TruthTable::random(n, rng)};
        const auto [a1, fam] = build_boxworld_advice(s1);
        const auto [a2, fam2] = build_boxworld_advice(s2);
        const auto coins = uniform_coins(n);
        for (const Rational p : {Rational(0), Rational(1, 3), Rational(3, 4), Rational(1)}) {
            const AdviceState mixed{n, Behavior::mix(p, std::get<Behavior>(a1.payload), std::get<Behavior>(a2.payload))};
            const AdviceState with_coins{n, Behavior::mix(p, std::get<Behavior>(a1.payload),
                                                          std::get<Behavior>(coins.payload))};
            for (std::uint64_t x = 0; x < (1U << n); ++x) {
                const auto c = fam.circuit(x);
                EXPECT_EQ(acceptance_probability(c, mixed),
                          p * acceptance_probability(c, a1) + (1 - p) * acceptance_probability(c, a2));
                EXPECT_EQ(acceptance_probability(c, with_coins),
                          p * acceptance_probability(c, a1) + (1 - p) * Rational(1, 2));
            }
        }
    }
}

TEST(Advice, SampledAcceptanceWithinFiveSigma) {
    Rng rng(16);
    const LanguageSlice slice{TruthTable::random(6, rng)};
    const auto [adv, fam] = build_boxworld_advice(slice);
    const auto &pr = std::get<Behavior>(adv.payload);
    const Behavior noisy = Behavior::mix(Rational(3, 5), pr, std::get<Behavior>(uniform_coins(6).payload));
    const AdviceState noisy_adv{6, noisy};
    const int samples = 10000;
    for (std::uint64_t x : {0ULL, 17ULL, 63ULL}) {
        const auto c = fam.circuit(x);
        const Rational exact = acceptance_probability(c, noisy_adv);
        int accepted = 0;
        for (int i = 0; i < samples; ++i) {
            accepted += c.postprocess.accepts(sample_local_measurement(noisy, x, mix_seed(x, i)));
        }
        const double p = exact.convert_to<double>();
        const double sigma = std::sqrt(samples * p * (1 - p));
        EXPECT_LT(std::abs(accepted - samples * p), 5 * sigma) << x;
    }
}

TEST(Advice, RegisterMismatch) {
    const auto [adv, fam] = build_boxworld_advice({TruthTable::parse("0110")});
    const CircuitFamily wider{3, 3, "", ""};
    EXPECT_THROW(acceptance_probability(wider.circuit(1), adv), RegisterMismatch);
    const AdviceState lying{3, std::get<Behavior>(adv.payload)};
    EXPECT_THROW(acceptance_probability(wider.circuit(1), lying), RegisterMismatch);
    auto state_adv = uniform_gbit_coins(2);
    state_adv.ports = 3;
    EXPECT_THROW(acceptance_probability(wider.circuit(1), state_adv), RegisterMismatch);
    EXPECT_THROW(fam.circuit(4), std::invalid_argument);
    EXPECT_THROW(build_boxworld_advice({TruthTable(13, std::vector<bool>(1U << 13))}), SizeCapExceeded);
}

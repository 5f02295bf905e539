#include <gptlab/principles.hpp>
#include <gptlab/zoo.hpp>

#include <gtest/gtest.h>

using namespace gptlab;

TEST(Zoo, RationalCirclePointsLieOnTheCircle) {
    for (int p = -5; p <= 5; ++p) {
        for (int q = 1; q <= 6; ++q) {
            const auto [x, y] = rational_circle_point(Rational(p, q));
            EXPECT_EQ(x * x + y * y, 1);
        }
    }
    EXPECT_EQ(rational_circle_point(Rational(1, 2)), std::make_pair(Rational(3, 5), Rational(4, 5)));
}

TEST(Zoo, ClassicalBitShape) {
    const auto t = classical_bit_theory();
    EXPECT_EQ(t.pure("cbit").size(), 2U);
    EXPECT_EQ(t.measurements_on("cbit").size(), 1U);
    EXPECT_EQ(t.group("cbit").size(), 2U);
    EXPECT_EQ(t.composite_dim(t.systems[0], t.systems[0]), 4U);
}

TEST(Zoo, RebitShapes) {
    const auto r4 = rebit_theory(4);
    EXPECT_EQ(r4.pure("rebit").size(), 4U);
    EXPECT_EQ(r4.group("rebit").size(), 8U);
    EXPECT_EQ(r4.measurements_on("rebit").size(), 2U);
    EXPECT_EQ(r4.composite_dim(r4.systems[0], r4.systems[0]), 10U);
    const auto r8 = rebit_theory(8);
    EXPECT_EQ(r8.pure("rebit").size(), 8U);
    EXPECT_EQ(r8.measurements_on("rebit").size(), 4U);
    for (const auto &s : r8.pure("rebit")) {
        EXPECT_EQ(s.vec[0] * s.vec[0] + s.vec[1] * s.vec[1], 1);
    }
    EXPECT_THROW(rebit_theory(6), std::invalid_argument);
    EXPECT_THROW(rebit_theory(3), std::invalid_argument);
}

TEST(Zoo, RebitAntipodalPairsOnlyAreDistinguishable) {
    const auto r = rebit_theory(8);
    const auto pairs = distinguishable_pure_pairs(r, r.systems[0]);
    EXPECT_EQ(pairs.size(), 8U);
    for (const auto &[i, j] : pairs) {
        EXPECT_EQ(r.pure("rebit")[i].vec[0], -r.pure("rebit")[j].vec[0]);
        EXPECT_EQ(r.pure("rebit")[i].vec[1], -r.pure("rebit")[j].vec[1]);
    }
}

TEST(Zoo, QubitSampleShapes) {
    const auto q6 = qubit_sampled_theory(6, 1);
    EXPECT_TRUE(q6.sampled);
    EXPECT_EQ(q6.pure("qubit").size(), 6U);
    EXPECT_EQ(q6.group("qubit").size(), 24U);
    for (std::uint64_t seed : {1, 2, 9, 1234}) {
        const auto q = qubit_sampled_theory(24, seed);
        EXPECT_EQ(q.pure("qubit").size(), 24U);
        EXPECT_EQ(q.measurements_on("qubit").size(), 12U);
        for (const auto &s : q.pure("qubit")) {
            EXPECT_EQ(s.vec[0] * s.vec[0] + s.vec[1] * s.vec[1] + s.vec[2] * s.vec[2], 1);
        }
    }
    EXPECT_THROW(qubit_sampled_theory(5, 1), std::invalid_argument);
    EXPECT_THROW(qubit_sampled_theory(25, 1), std::invalid_argument);
}

TEST(Zoo, QubitAntipodalMeasurementIsDelta) {
    const auto q = qubit_sampled_theory(24, 2);
    const auto &pure = q.pure("qubit");
    for (const auto &m : q.measurements_on("qubit")) {
        int matched = 0;
        for (const auto &s : pure) {
            const Rational p0 = pairing(m.effects[0], s), p1 = pairing(m.effects[1], s);
            EXPECT_EQ(p0 + p1, 1);
            matched += (p0 == 1) + (p1 == 1);
        }
        EXPECT_EQ(matched, 2);
    }
}

TEST(Zoo, QubitTomographicallyLocalAtEveryResolution) {
    for (unsigned k : {6U, 12U, 24U}) {
        const auto q = qubit_sampled_theory(k, 4);
        EXPECT_TRUE(check_tomographic_locality(q, q.systems[0], q.systems[0]).holds) << k;
    }
}

TEST(Zoo, SampledQubitVerdictIsEvidence) {
    const auto v = check_principles(qubit_sampled_theory(24, 1));
    EXPECT_TRUE(v.causality.holds);
    EXPECT_TRUE(v.tomographic_locality.holds);
    EXPECT_TRUE(v.bit_symmetry.holds);
    EXPECT_EQ(v.mode, "sampled-evidence");
}

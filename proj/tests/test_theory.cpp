#include <gptlab/boxworld.hpp>
#include <gptlab/theory.hpp>
#include <gptlab/zoo.hpp>

#include <gtest/gtest.h>

using namespace gptlab;

namespace {

std::vector<TheoryInstance> shipped() {
    return {classical_bit_theory(), gbit_theory(), rebit_theory(4), rebit_theory(8), qubit_sampled_theory(6, 1),
            qubit_sampled_theory(24, 3)};
}

}  // namespace

TEST(Pairing, UnitEffectOnNormalizedStates) {
    for (const auto &t : shipped()) {
        for (const auto &sys : t.systems) {
            for (const auto &s : t.pure(sys.label)) {
                EXPECT_EQ(pairing(t.unit(sys.label), s), 1) << t.name;
            }
        }
    }
}

TEST(Pairing, GbitFiducialValues) {
    EXPECT_EQ(pairing(gbit_effect(0, 0), gbit_vertex(0, 1)), 1);
    EXPECT_EQ(pairing(gbit_effect(0, 0), gbit_maximally_mixed()), Rational(1, 2));
    EXPECT_EQ(pairing(gbit_effect(1, 1), gbit_vertex(0, 1)), 1);
    EXPECT_EQ(pairing(gbit_effect(1, 0), gbit_vertex(0, 1)), 0);
}

TEST(Pairing, SystemMismatchThrows) {
    const auto c = classical_bit_theory();
    EXPECT_THROW(pairing(gbit_effect(0, 0), c.pure("cbit")[0]), SystemMismatch);
    EXPECT_THROW(State(gbit_system(), RVector{1, 0}), std::invalid_argument);
}

TEST(Compose, ClassicalPointMasses) {
    const auto c = classical_bit_theory();
    const State joint = compose(c.pure("cbit")[0], c.pure("cbit")[1]);
    EXPECT_EQ(joint.vec, (RVector{0, 1, 0, 0}));
    EXPECT_EQ(joint.system.label, "cbit*cbit");
    EXPECT_EQ(pairing(compose(c.unit("cbit"), c.unit("cbit")), joint), 1);
}

TEST(Compose, PairingFactorizesOnProductsProperty) {
    for (const auto &t : shipped()) {
        for (const auto &sys : t.systems) {
            const auto &gens = t.generators(sys.label);
            const auto &pure = t.pure(sys.label);
            for (std::size_t i = 0; i < gens.size(); i += 2) {
                for (std::size_t j = 0; j < gens.size(); j += 3) {
                    for (std::size_t a = 0; a < pure.size(); a += 2) {
                        for (std::size_t b = 1; b < pure.size(); b += 3) {
                            EXPECT_EQ(pairing(compose(gens[i], gens[j]), compose(pure[a], pure[b])),
                                      pairing(gens[i], pure[a]) * pairing(gens[j], pure[b]));
                        }
                    }
                }
            }
        }
    }
}

TEST(CoarseGrain, SingletonsAreIdentity) {
    const auto t = gbit_theory();
    const Measurement m = t.measurements_on("gbit")[0];
    const std::vector<std::vector<std::size_t>> singletons{{0}, {1}};
    const auto out = coarse_grain(m, singletons);
    EXPECT_EQ(out.effects, m.effects);
}

TEST(CoarseGrain, FullMergeGivesUnit) {
    const auto t = gbit_theory();
    const std::vector<std::vector<std::size_t>> all{{0, 1}};
    const auto out = coarse_grain(t.measurements_on("gbit")[1], all);
    ASSERT_EQ(out.outcomes(), 1U);
    EXPECT_EQ(out.effects[0], t.unit("gbit"));
}

TEST(CoarseGrain, MergeTwoOfFour) {
    const SystemType s{"four", 4};
    Measurement m;
    for (std::size_t i = 0; i < 4; ++i) {
        m.effects.emplace_back(s, RVector::basis(4, i));
    }
    const std::vector<std::vector<std::size_t>> p{{0, 1}, {2}, {3}};
    const auto out = coarse_grain(m, p);
    ASSERT_EQ(out.outcomes(), 3U);
    EXPECT_EQ(out.effects[0].vec, (RVector{1, 1, 0, 0}));
}

TEST(CoarseGrain, PreservesTotalProperty) {
    const SystemType s{"five", 5};
    Measurement m;
    for (std::size_t i = 0; i < 5; ++i) {
        m.effects.emplace_back(s, RVector{Rational(i + 1, 7), Rational(1, 5), 0, Rational(i, 3), 1});
    }
    // Every set partition of five outcomes, via restricted growth strings.
    std::vector<std::size_t> rgs(5, 0);
    int count = 0;
    while (true) {
        std::size_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<std::size_t>> p(blocks);
        for (std::size_t i = 0; i < 5; ++i) {
            p[rgs[i]].push_back(i);
        }
        const auto out = coarse_grain(m, p);
        EXPECT_EQ(out.total(), m.total());
        EXPECT_EQ(out.outcomes(), blocks);
        ++count;
        int k = 4;
        for (; k > 0; --k) {
            const std::size_t prefix_max = *std::max_element(rgs.begin(), rgs.begin() + k);
            if (rgs[k] <= prefix_max) {
                ++rgs[k];
                std::fill(rgs.begin() + k + 1, rgs.end(), 0);
                break;
            }
        }
        if (k == 0) {
            break;
        }
    }
    EXPECT_EQ(count, 52);
}

TEST(CoarseGrain, InvalidPartitions) {
    const auto m = gbit_theory().measurements_on("gbit")[0];
    const std::vector<std::vector<std::size_t>> missing{{0}};
    const std::vector<std::vector<std::size_t>> twice{{0, 1}, {1}};
    const std::vector<std::vector<std::size_t>> empty{{0, 1}, {}};
    const std::vector<std::vector<std::size_t>> range{{0, 1, 2}};
    EXPECT_THROW(coarse_grain(m, missing), InvalidPartition);
    EXPECT_THROW(coarse_grain(m, twice), InvalidPartition);
    EXPECT_THROW(coarse_grain(m, empty), InvalidPartition);
    EXPECT_THROW(coarse_grain(m, range), InvalidPartition);
}

TEST(TheoryInstance, ShippedTheoriesAreValid) {
    for (const auto &t : shipped()) {
        EXPECT_TRUE(validate(t).empty()) << t.name << ": " << (validate(t).empty() ? "" : validate(t).front());
        for (const auto &sys : t.systems) {
            for (const auto &m : t.measurements_on(sys.label)) {
                EXPECT_EQ(m.total(), t.unit(sys.label));
            }
            for (const auto &e : t.generators(sys.label)) {
                for (const auto &s : t.pure(sys.label)) {
                    EXPECT_TRUE(is_probability(pairing(e, s)));
                }
            }
        }
    }
}

TEST(TheoryInstance, ValidationCatchesBrokenInvariants) {
    auto t = gbit_theory();
    t.pure_states["gbit"].push_back(State(gbit_system(), RVector{1, 1, 2}));
    EXPECT_FALSE(validate(t).empty());
    EXPECT_THROW(checked(t), InvalidTheory);

    auto g = gbit_theory();
    g.reversible_group["gbit"].pop_back();
    EXPECT_FALSE(validate(g).empty());

    auto c = classical_bit_theory();
    c.composite_dims["cbit*nothing"] = 4;
    EXPECT_FALSE(validate(c).empty());
}

TEST(TheoryInstance, GroupGenerationClosesUnderProducts) {
    const SystemType s{"cbit", 2};
    const RMatrix swap{{0, 1}, {1, 0}};
    const std::vector<RMatrix> gens{swap};
    const auto g = generate_group(s, gens);
    EXPECT_EQ(g.size(), 2U);
    EXPECT_TRUE(group_problems(g, s).empty());
    const std::vector<Transformation> partial{g.back()};
    EXPECT_FALSE(group_problems(partial, s).empty());
}

TEST(Transformation, ApplyChecksSystem) {
    const auto t = gbit_theory();
    const auto &g = t.group("gbit");
    for (const auto &tr : g) {
        EXPECT_TRUE(tr.reversible);
        EXPECT_EQ(pairing(t.unit("gbit"), tr.apply(gbit_vertex(0, 0))), 1);
    }
    const auto c = classical_bit_theory();
    EXPECT_THROW(g[0].apply(c.pure("cbit")[0]), SystemMismatch);
}

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace gptlab;

namespace {

CommTask from_matrix(unsigned n, const std::vector<std::vector<bool>> &m) {
    return {n, TruthTable::from_function(2 * n, [&](std::uint64_t xy) { return m[xy >> n][xy & ((1U << n) - 1)]; })};
}

}  // namespace

TEST(CommTask, ConstructionAndParsing) {
    const auto ip = CommTask::inner_product(2);
    EXPECT_TRUE(ip(0b11, 0b01));
    EXPECT_FALSE(ip(0b11, 0b11));
    const auto eq = CommTask::equality(2);
    EXPECT_TRUE(eq(2, 2));
    EXPECT_FALSE(eq(2, 1));
    const auto parsed = CommTask::parse("1\n0001\n");
    EXPECT_EQ(parsed.n(), 1U);
    EXPECT_TRUE(parsed(1, 1));
    EXPECT_EQ(CommTask::parse(parsed.str()).table().str(), "0001");
    EXPECT_THROW(CommTask::parse("1\n00010\n"), std::invalid_argument);
    EXPECT_THROW(CommTask::parse("2\n0001\n"), std::invalid_argument);
    EXPECT_THROW(CommTask::parse("x\n0001\n"), std::invalid_argument);
    EXPECT_THROW(CommTask::parse("0001"), std::invalid_argument);
}

TEST(VanDam, PrBoxAnd) {
    const CommTask task(1, TruthTable::parse("0001"));
    for (std::uint64_t x = 0; x < 2; ++x) {
        for (std::uint64_t y = 0; y < 2; ++y) {
            const auto t = van_dam_run(task, x, y, 42);
            EXPECT_EQ(t.output, (x & y) != 0);
            ASSERT_EQ(t.messages.size(), 1U);
            EXPECT_EQ(t.messages[0].sender, Party::alice);
            EXPECT_EQ(t.messages[0].bit, parity(t.alice_outcomes));
            EXPECT_EQ(t.output, t.messages[0].bit != parity(t.bob_outcomes));
            EXPECT_EQ(t.seed, 42U);
        }
    }
}

TEST(VanDam, InnerProductAndEqualityExhaustive) {
    const auto ip2 = verify_van_dam_all(CommTask::inner_product(2), 1);
    EXPECT_EQ(ip2.correct, 16U);
    EXPECT_EQ(ip2.total, 16U);
    EXPECT_EQ(ip2.max_messages, 1U);
    const auto ip3 = verify_van_dam_all(CommTask::inner_product(3), 1);
    EXPECT_EQ(ip3.correct, 64U);
    EXPECT_EQ(ip3.one_way_cc, 3U);
    const auto eq2 = verify_van_dam_all(CommTask::equality(2), 3);
    EXPECT_EQ(eq2.correct, 16U);
    EXPECT_EQ(eq2.max_messages, 1U);
}

TEST(VanDam, SeedIndependenceProperty) {
    Rng rng(8);
    for (int trial = 0; trial < 4; ++trial) {
        const CommTask task(2, TruthTable::random(4, rng));
        const auto box = shared_box(task);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto r = verify_van_dam_all(task, seed);
            EXPECT_EQ(r.correct, r.total);
            EXPECT_EQ(r.max_messages, 1U);
            for (std::uint64_t x = 0; x < 4; ++x) {
                for (std::uint64_t y = 0; y < 4; ++y) {
                    EXPECT_EQ(van_dam_run(box, task, x, y, seed).output, task(x, y));
                }
            }
        }
    }
}

TEST(VanDam, InputErrors) {
    const auto task = CommTask::inner_product(2);
    EXPECT_THROW(van_dam_run(task, 4, 0, 0), std::invalid_argument);
    EXPECT_THROW(van_dam_run(make_f_box(TruthTable::parse("01")), task, 0, 0, 0), std::invalid_argument);
    EXPECT_THROW(verify_van_dam_all(CommTask::inner_product(7), 0), SizeCapExceeded);
}

TEST(OneWay, KnownValues) {
    EXPECT_EQ(one_way_cc(CommTask(1, TruthTable::parse("0000"))), 0U);
    EXPECT_EQ(one_way_cc(CommTask::inner_product(2)), 2U);
    EXPECT_EQ(one_way_cc(CommTask::inner_product(3)), 3U);
    EXPECT_EQ(one_way_cc(CommTask::equality(3)), 3U);
    // Three distinct rows still need two bits.
    EXPECT_EQ(one_way_cc(from_matrix(2, {{0, 0, 0, 0}, {1, 1, 1, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}})), 2U);
}

TEST(OneWay, InnerProductRows) {
    const auto m = oracle::matrix_of(CommTask::inner_product(2));
    EXPECT_EQ(m[0], (std::vector<bool>{0, 0, 0, 0}));
    EXPECT_EQ(m[1], (std::vector<bool>{0, 1, 0, 1}));
    EXPECT_EQ(m[2], (std::vector<bool>{0, 0, 1, 1}));
    EXPECT_EQ(m[3], (std::vector<bool>{0, 1, 1, 0}));
}

TEST(OneWay, MatchesRowEnumerationAndIsPermutationInvariantProperty) {
    Rng rng(19);
    for (unsigned n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            // Bias towards repeated rows so small values occur.
            const auto pool = 1 + uniform_below(rng, 1ULL << n);
            std::vector<std::vector<bool>> rows(pool, std::vector<bool>(1U << n));
            for (auto &r : rows) {
                for (std::size_t y = 0; y < r.size(); ++y) {
                    r[y] = random_bit(rng);
                }
            }
            std::vector<std::vector<bool>> m(1U << n);
            for (auto &r : m) {
                r = rows[uniform_below(rng, pool)];
            }
            const auto task = from_matrix(n, m);
            const unsigned base = one_way_cc(task);
            EXPECT_EQ(base, oracle::one_way_by_row_enumeration(task));
            EXPECT_LE(base, n);

            std::vector<std::size_t> px(m.size()), py(m.size());
            std::iota(px.begin(), px.end(), 0);
            std::iota(py.begin(), py.end(), 0);
            std::shuffle(px.begin(), px.end(), rng);
            std::shuffle(py.begin(), py.end(), rng);
            auto permuted = m;
            for (std::size_t x = 0; x < m.size(); ++x) {
                for (std::size_t y = 0; y < m.size(); ++y) {
                    permuted[x][y] = m[px[x]][py[y]];
                }
            }
            EXPECT_EQ(one_way_cc(from_matrix(n, permuted)), base);
        }
    }
}

TEST(DetCc, HandValues) {
    EXPECT_EQ(det_cc(CommTask(1, TruthTable::parse("0000"))), 0U);
    EXPECT_EQ(det_cc(CommTask(1, TruthTable::parse("1111"))), 0U);
    // f = x: Bob needs Alice's bit.
    EXPECT_EQ(det_cc(CommTask(1, TruthTable::parse("0011"))), 1U);
    // f = y: Bob already knows.
    EXPECT_EQ(det_cc(CommTask(1, TruthTable::parse("0101"))), 0U);
    EXPECT_EQ(det_cc(CommTask::equality(1)), 1U);
    EXPECT_EQ(det_cc(CommTask::equality(2)), 2U);
    EXPECT_EQ(det_cc(CommTask::inner_product(2)), 2U);
    EXPECT_THROW(det_cc(CommTask::inner_product(4)), SizeCapExceeded);
}

TEST(DetCc, AllTwoByTwoAgainstProtocolTrees) {
    for (std::uint64_t idx = 0; idx < 16; ++idx) {
        const auto task = oracle::task_from_index(1, idx);
        const auto m = oracle::matrix_of(task);
        const unsigned d = det_cc(task);
        EXPECT_EQ(d, oracle::ProtocolTree(m).cost()) << idx;
        // Hand rule for 2x2: Bob knows iff both columns are constant; else
        // one bit from Alice suffices.
        const bool bob_knows = m[0][0] == m[1][0] && m[0][1] == m[1][1];
        EXPECT_EQ(d, bob_knows ? 0U : 1U) << idx;
    }
}

TEST(DetCc, BoundsAndRectangleMonotonicityProperty) {
    Rng rng(23);
    for (unsigned n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < (n == 3 ? 6 : 40); ++trial) {
            const CommTask task(n, TruthTable::random(2 * n, rng));
            const unsigned d = det_cc(task);
            const unsigned ow = one_way_cc(task);
            EXPECT_LE(d, ow);
            EXPECT_LE(ow, n);
            const auto m = oracle::matrix_of(task);
            bool some_column_varies = false;
            for (std::size_t y = 0; y < m.size(); ++y) {
                for (std::size_t x = 1; x < m.size(); ++x) {
                    some_column_varies = some_column_varies || m[x][y] != m[0][y];
                }
            }
            EXPECT_EQ(d >= 1, some_column_varies);
            if (n >= 2) {
                // Restrict to the top-left quadrant, embedded as an n-1 task.
                const unsigned h = n - 1;
                std::vector<std::vector<bool>> sub(1U << h, std::vector<bool>(1U << h));
                for (std::size_t x = 0; x < sub.size(); ++x) {
                    for (std::size_t y = 0; y < sub.size(); ++y) {
                        sub[x][y] = m[x][y];
                    }
                }
                EXPECT_LE(det_cc(from_matrix(h, sub)), d);
                EXPECT_LE(oracle::ProtocolTree(sub).cost(), d);
            }
        }
    }
}

TEST(DetCc, AgreesWithProtocolTreesOnSampledFourByFour) {
    Rng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const auto task = oracle::task_from_index(2, uniform_below(rng, 65536));
        EXPECT_EQ(det_cc(task), oracle::ProtocolTree(oracle::matrix_of(task)).cost());
    }
}

#pragma once

// Two-party communication tasks f(x, y): the one-bit protocol over a shared
// f-box, and exact deterministic classical costs for contrast.

#include <gptlab/boxworld.hpp>
#include <gptlab/random.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gptlab {

/// f(x, y) with x the first n bits (Alice) and y the last n bits (Bob) of a
/// 2n-input truth table.
class CommTask {
  public:
    CommTask(unsigned n, TruthTable f) : n_(n), f_(std::move(f)) {
        if (n_ == 0 || f_.n() != 2 * n_) {
            throw std::invalid_argument("communication task on n=" + std::to_string(n_) +
                                        " needs a truth table on " + std::to_string(2 * n_) + " inputs");
        }
    }

    static CommTask inner_product(unsigned n) {
        return {n, TruthTable::from_function(2 * n, [n](std::uint64_t xy) { return parity((xy >> n) & xy); })};
    }

    static CommTask equality(unsigned n) {
        const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
        return {n, TruthTable::from_function(2 * n, [n, mask](std::uint64_t xy) { return (xy >> n) == (xy & mask); })};
    }

    /// File format: first line n, second line the 2^(2n)-character table,
    /// row-major in (x, y).
    static CommTask parse(std::string_view text) {
        const auto nl = text.find('\n');
        if (nl == std::string_view::npos) {
            throw std::invalid_argument("task file needs two lines: n and the truth table");
        }
        std::string first(text.substr(0, nl));
        std::string_view rest = text.substr(nl + 1);
        while (!rest.empty() && (rest.back() == '\n' || rest.back() == '\r' || rest.back() == ' ')) {
            rest.remove_suffix(1);
        }
        while (!first.empty() && (first.back() == '\r' || first.back() == ' ')) {
            first.pop_back();
        }
        unsigned n = 0;
        try {
            std::size_t used = 0;
            n = static_cast<unsigned>(std::stoul(first, &used));
            if (used != first.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception &) {
            throw std::invalid_argument("task file: first line must be the integer n");
        }
        return {n, TruthTable::parse(rest)};
    }

    std::string str() const { return std::to_string(n_) + "\n" + f_.str() + "\n"; }

    unsigned n() const { return n_; }
    const TruthTable &table() const { return f_; }
    bool operator()(std::uint64_t x, std::uint64_t y) const { return f_((x << n_) | y); }
    std::uint64_t inputs_per_party() const { return std::uint64_t{1} << n_; }

  private:
    unsigned n_;
    TruthTable f_;
};

enum class Party { alice, bob };

struct Message {
    Party sender;
    bool bit;
};

struct ProtocolTranscript {
    std::uint64_t alice_settings = 0;
    std::uint64_t bob_settings = 0;
    std::uint64_t alice_outcomes = 0;
    std::uint64_t bob_outcomes = 0;
    std::vector<Message> messages;
    bool output = false;
    std::uint64_t seed = 0;
};

/// One run over a pre-shared 2n-party f-box for g(x||y) = f(x, y). Alice
/// holds parties 0..n-1, Bob n..2n-1. Alice sends the parity of her
/// outcomes; Bob outputs it XOR the parity of his.
inline ProtocolTranscript van_dam_run(const Behavior &shared, const CommTask &task, std::uint64_t x,
                                      std::uint64_t y, std::uint64_t seed) {
    const unsigned n = task.n();
    if (shared.parties() != 2 * n) {
        throw std::invalid_argument("shared box has " + std::to_string(shared.parties()) + " parties, task needs " +
                                    std::to_string(2 * n));
    }
    if (x >= task.inputs_per_party() || y >= task.inputs_per_party()) {
        throw std::invalid_argument("input longer than n bits");
    }
    ProtocolTranscript t;
    t.alice_settings = x;
    t.bob_settings = y;
    t.seed = seed;
    const std::uint64_t a = sample_local_measurement(shared, (x << n) | y, seed);
    t.alice_outcomes = a >> n;
    t.bob_outcomes = a & (task.inputs_per_party() - 1);
    const bool sent = parity(t.alice_outcomes);
    t.messages.push_back({Party::alice, sent});
    t.output = sent != parity(t.bob_outcomes);
    return t;
}

inline Behavior shared_box(const CommTask &task) { return make_f_box(task.table()); }

inline ProtocolTranscript van_dam_run(const CommTask &task, std::uint64_t x, std::uint64_t y, std::uint64_t seed) {
    return van_dam_run(shared_box(task), task, x, y, seed);
}

/// Deterministic one-way cost: ceil(log2(number of distinct rows)).
inline unsigned one_way_cc(const CommTask &task) {
    std::set<std::vector<bool>> rows;
    const std::uint64_t side = task.inputs_per_party();
    for (std::uint64_t x = 0; x < side; ++x) {
        std::vector<bool> row(side);
        for (std::uint64_t y = 0; y < side; ++y) {
            row[y] = task(x, y);
        }
        rows.insert(std::move(row));
    }
    return static_cast<unsigned>(std::bit_width(rows.size() - 1));
}

inline constexpr unsigned kMaxDetCcInputBits = 3;

/// Exact deterministic two-way communication complexity. Communication stops
/// once Bob knows f(x, y), i.e. every live column is constant over the live
/// rows; the answer bit itself is not charged. Memoized min-max over
/// sub-rectangles keyed by (row mask, column mask).
inline unsigned det_cc(const CommTask &task) {
    const unsigned n = task.n();
    if (n > kMaxDetCcInputBits) {
        throw SizeCapExceeded("det_cc: n=" + std::to_string(n) + " exceeds the exhaustive cap of " +
                              std::to_string(kMaxDetCcInputBits));
    }
    const unsigned side = 1U << n;
    // ones_in_column[y]: mask of rows x with f(x, y) = 1.
    std::vector<std::uint32_t> ones_in_column(side, 0);
    for (unsigned x = 0; x < side; ++x) {
        for (unsigned y = 0; y < side; ++y) {
            if (task(x, y)) {
                ones_in_column[y] |= 1U << x;
            }
        }
    }
    constexpr std::uint8_t unknown = 0xFF;
    std::vector<std::uint8_t> memo(std::size_t{1} << (2 * side), unknown);

    auto bob_knows = [&](std::uint32_t rows, std::uint32_t cols) {
        for (unsigned y = 0; y < side; ++y) {
            if (cols >> y & 1U) {
                const std::uint32_t ones = ones_in_column[y] & rows;
                if (ones != 0 && ones != rows) {
                    return false;
                }
            }
        }
        return true;
    };

    auto solve = [&](auto &self, std::uint32_t rows, std::uint32_t cols) -> unsigned {
        auto &slot = memo[(std::size_t{rows} << side) | cols];
        if (slot != unknown) {
            return slot;
        }
        unsigned best;
        if (bob_knows(rows, cols)) {
            best = 0;
        } else {
            best = 2 * n + 1;
            // Each split is counted once: the first half keeps the lowest live index.
            auto try_splits = [&](std::uint32_t live, bool alice) {
                const std::uint32_t low = live & (~live + 1);
                for (std::uint32_t part = (live - 1) & live; part != 0; part = (part - 1) & live) {
                    if (!(part & low)) {
                        continue;
                    }
                    const std::uint32_t other = live ^ part;
                    const unsigned cost =
                        alice ? 1 + std::max(self(self, part, cols), self(self, other, cols))
                              : 1 + std::max(self(self, rows, part), self(self, rows, other));
                    best = std::min(best, cost);
                }
            };
            try_splits(rows, true);
            try_splits(cols, false);
        }
        slot = static_cast<std::uint8_t>(best);
        return best;
    };
    const std::uint32_t full = (side == 32) ? 0xFFFFFFFFU : ((1U << side) - 1);
    return solve(solve, full, full);
}

struct VanDamReport {
    std::uint64_t correct = 0;
    std::uint64_t total = 0;
    std::size_t max_messages = 0;
    unsigned one_way_cc = 0;
    std::optional<unsigned> det_cc;
};

/// Protocol-level cap: the shared box has 2n parties.
inline constexpr unsigned kMaxVanDamInputBits = kMaxParties / 2;

/// Runs the protocol on every (x, y) with per-cell seeds derived from
/// `seed`, and attaches the classical costs.
inline VanDamReport verify_van_dam_all(const CommTask &task, std::uint64_t seed) {
    require_parties(task.n(), kMaxVanDamInputBits);
    const Behavior box = shared_box(task);
    VanDamReport r;
    const std::uint64_t side = task.inputs_per_party();
    for (std::uint64_t x = 0; x < side; ++x) {
        for (std::uint64_t y = 0; y < side; ++y) {
            const auto t = van_dam_run(box, task, x, y, mix_seed(seed, (x << task.n()) | y));
            r.correct += t.output == task(x, y);
            ++r.total;
            r.max_messages = std::max(r.max_messages, t.messages.size());
        }
    }
    r.one_way_cc = one_way_cc(task);
    if (task.n() <= kMaxDetCcInputBits) {
        r.det_cc = det_cc(task);
    }
    return r;
}

}  // namespace gptlab

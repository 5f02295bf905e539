#pragma once

// Boxworld: the gbit theory, n-party no-signalling behaviors, the f-box whose
// outcome parity equals a chosen Boolean function of the settings, seeded
// local sampling, and the fiducial-coordinate embedding of behaviors as
// vectors of dimension 3^n.
//
// Bit strings are big-endian integers: party 0 owns the most significant of
// the n bits.

#include <gptlab/random.hpp>
#include <gptlab/theory.hpp>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gptlab {

/// Behavior tables hold 4^n entries; beyond this they stop fitting in memory.
inline constexpr unsigned kMaxParties = 12;

class SizeCapExceeded : public std::length_error {
  public:
    using std::length_error::length_error;
};

inline void require_parties(unsigned n, unsigned cap = kMaxParties) {
    if (n > cap) {
        throw SizeCapExceeded("size cap exceeded: " + std::to_string(n) + " > " + std::to_string(cap));
    }
}

/// Bit of party j (0-based) in an n-bit big-endian string.
constexpr bool party_bit(std::uint64_t bits, unsigned n, unsigned j) { return ((bits >> (n - 1 - j)) & 1U) != 0; }

constexpr bool parity(std::uint64_t bits) { return (std::popcount(bits) & 1) != 0; }

inline std::string bit_string(std::uint64_t bits, unsigned n) {
    std::string s(n, '0');
    for (unsigned j = 0; j < n; ++j) {
        if (party_bit(bits, n, j)) {
            s[j] = '1';
        }
    }
    return s;
}

inline std::uint64_t parse_bit_string(std::string_view s) {
    if (s.size() > 64) {
        throw std::invalid_argument("bit string longer than 64");
    }
    std::uint64_t v = 0;
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit string may contain only '0' and '1'");
        }
        v = (v << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return v;
}

/// A Boolean function f : {0,1}^n -> {0,1}, bit x at index x (big-endian).
class TruthTable {
  public:
    TruthTable() = default;
    TruthTable(unsigned n, std::vector<bool> bits) : n_(n), bits_(std::move(bits)) {
        if (n_ >= 64 || bits_.size() != (std::size_t{1} << n_)) {
            throw std::invalid_argument("truth table on " + std::to_string(n_) + " inputs needs " +
                                        std::to_string(std::size_t{1} << std::min(n_, 63U)) + " bits, got " +
                                        std::to_string(bits_.size()));
        }
    }

    template <typename F>
    static TruthTable from_function(unsigned n, F &&f) {
        std::vector<bool> bits(std::size_t{1} << n);
        for (std::uint64_t x = 0; x < bits.size(); ++x) {
            bits[x] = static_cast<bool>(f(x));
        }
        return TruthTable(n, std::move(bits));
    }

    /// Parses a string of 2^n '0'/'1' characters.
    static TruthTable parse(std::string_view s) {
        if (s.empty() || !std::has_single_bit(s.size())) {
            throw std::invalid_argument("truth table length must be a power of two, got " + std::to_string(s.size()));
        }
        std::vector<bool> bits(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] != '0' && s[i] != '1') {
                throw std::invalid_argument("truth table may contain only '0' and '1'");
            }
            bits[i] = s[i] == '1';
        }
        return TruthTable(static_cast<unsigned>(std::countr_zero(s.size())), std::move(bits));
    }

    static TruthTable random(unsigned n, Rng &rng) {
        return from_function(n, [&](std::uint64_t) { return random_bit(rng); });
    }

    unsigned n() const { return n_; }
    std::size_t size() const { return bits_.size(); }
    bool operator()(std::uint64_t x) const { return bits_.at(x); }
    bool is_constant() const {
        for (std::size_t i = 1; i < bits_.size(); ++i) {
            if (bits_[i] != bits_[0]) {
                return false;
            }
        }
        return true;
    }

    std::string str() const {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            if (bits_[i]) {
                s[i] = '1';
            }
        }
        return s;
    }

    friend bool operator==(const TruthTable &, const TruthTable &) = default;

  private:
    unsigned n_ = 0;
    std::vector<bool> bits_;
};

/// An n-party conditional table P(a|x) over binary settings and outcomes.
///
/// Entries are dictionary-encoded: each cell stores an index into a small
/// palette of distinct Rational values. A scaled integer copy of the palette
/// over a common denominator backs the exact sums used by checks and
/// sampling.
class Behavior {
  public:
    Behavior() = default;

    Behavior(unsigned n, std::vector<Rational> palette, std::vector<std::uint32_t> codes)
        : n_(n), palette_(std::move(palette)), codes_(std::move(codes)) {
        require_parties(n_);
        if (codes_.size() != cells(n_)) {
            throw std::invalid_argument("behavior on " + std::to_string(n_) + " parties needs " +
                                        std::to_string(cells(n_)) + " cells");
        }
        for (auto c : codes_) {
            if (c >= palette_.size()) {
                throw std::invalid_argument("behavior cell refers past the end of its palette");
            }
        }
        rescale();
    }

    /// Builds the table from f(x, a) -> Rational.
    template <typename F>
    static Behavior from_function(unsigned n, F &&f) {
        require_parties(n);
        std::vector<Rational> palette;
        std::map<Rational, std::uint32_t> index;
        std::vector<std::uint32_t> codes(cells(n));
        const std::uint64_t side = std::uint64_t{1} << n;
        for (std::uint64_t x = 0; x < side; ++x) {
            for (std::uint64_t a = 0; a < side; ++a) {
                Rational v = f(x, a);
                auto [it, inserted] = index.try_emplace(v, static_cast<std::uint32_t>(palette.size()));
                if (inserted) {
                    palette.push_back(std::move(v));
                }
                codes[(x << n) | a] = it->second;
            }
        }
        return Behavior(n, std::move(palette), std::move(codes));
    }

    static constexpr std::size_t cells(unsigned n) { return std::size_t{1} << (2 * n); }

    unsigned parties() const { return n_; }
    std::uint64_t settings_count() const { return std::uint64_t{1} << n_; }

    const Rational &operator()(std::uint64_t x, std::uint64_t a) const { return palette_[codes_[(x << n_) | a]]; }

    /// p*first + (1-p)*second.
    static Behavior mix(const Rational &p, const Behavior &first, const Behavior &second) {
        if (first.n_ != second.n_) {
            throw std::invalid_argument("mix: behaviors have different party counts");
        }
        return from_function(first.n_,
                             [&](std::uint64_t x, std::uint64_t a) { return p * first(x, a) + (1 - p) * second(x, a); });
    }

    /// Parties of `first` followed by parties of `second`, independent.
    static Behavior product(const Behavior &first, const Behavior &second) {
        const unsigned n2 = second.n_;
        const std::uint64_t mask = (std::uint64_t{1} << n2) - 1;
        return from_function(first.n_ + n2, [&](std::uint64_t x, std::uint64_t a) {
            return first(x >> n2, a >> n2) * second(x & mask, a & mask);
        });
    }

    /// Exact sum of P(a|x) over outcomes a accepted by `pred`.
    template <typename Pred>
    Rational sum_row(std::uint64_t x, Pred &&pred) const {
        const std::uint64_t side = settings_count();
        const std::uint32_t *row = codes_.data() + (x << n_);
        if (small_) {
            std::int64_t acc = 0;
            for (std::uint64_t a = 0; a < side; ++a) {
                if (pred(a)) {
                    acc += small_scaled_[row[a]];
                }
            }
            return Rational(BigInt(acc), common_denominator_);
        }
        BigInt acc = 0;
        for (std::uint64_t a = 0; a < side; ++a) {
            if (pred(a)) {
                acc += scaled_[row[a]];
            }
        }
        return Rational(acc, common_denominator_);
    }

    /// Draws an outcome string from P(.|x). The row must be a probability
    /// distribution.
    std::uint64_t sample(std::uint64_t x, Rng &rng) const {
        const std::uint64_t side = settings_count();
        const std::uint32_t *row = codes_.data() + (x << n_);
        if (small_) {
            const auto target = static_cast<std::int64_t>(
                uniform_below(rng, static_cast<std::uint64_t>(common_denominator_)));
            std::int64_t acc = 0;
            for (std::uint64_t a = 0; a < side; ++a) {
                acc += small_scaled_[row[a]];
                if (target < acc) {
                    return a;
                }
            }
        } else {
            const BigInt target = uniform_below(rng, common_denominator_);
            BigInt acc = 0;
            for (std::uint64_t a = 0; a < side; ++a) {
                acc += scaled_[row[a]];
                if (target < acc) {
                    return a;
                }
            }
        }
        throw std::domain_error("sample: row " + bit_string(x, n_) + " is not normalized");
    }

    std::size_t nonzero_count() const {
        std::size_t k = 0;
        for (auto c : codes_) {
            k += palette_[c] != 0;
        }
        return k;
    }

    /// Distinct values appearing in the table.
    const std::vector<Rational> &palette() const { return palette_; }

    friend bool operator==(const Behavior &l, const Behavior &r) {
        if (l.n_ != r.n_) {
            return false;
        }
        for (std::size_t i = 0; i < l.codes_.size(); ++i) {
            if (l.palette_[l.codes_[i]] != r.palette_[r.codes_[i]]) {
                return false;
            }
        }
        return true;
    }

  private:
    void rescale() {
        common_denominator_ = 1;
        for (const auto &v : palette_) {
            common_denominator_ = boost::multiprecision::lcm(common_denominator_, denom(v));
        }
        scaled_.clear();
        small_scaled_.clear();
        // Sums of up to 2^kMaxParties entries below 2^40 stay inside int64.
        const BigInt small_limit = BigInt(1) << 40;
        small_ = common_denominator_ < small_limit;
        for (const auto &v : palette_) {
            BigInt s = numer(v) * (common_denominator_ / denom(v));
            if (s >= small_limit || s <= -small_limit) {
                small_ = false;
            }
            scaled_.push_back(std::move(s));
        }
        if (small_) {
            for (const auto &s : scaled_) {
                small_scaled_.push_back(static_cast<std::int64_t>(s));
            }
        }
    }

    unsigned n_ = 0;
    std::vector<Rational> palette_;
    std::vector<std::uint32_t> codes_;
    BigInt common_denominator_ = 1;
    std::vector<BigInt> scaled_;
    std::vector<std::int64_t> small_scaled_;
    bool small_ = false;
};

/// P(a|x) = 1/2^(n-1) when the outcome parity equals f(x), else 0.
inline Behavior make_f_box(const TruthTable &f) {
    const unsigned n = f.n();
    if (n < 1) {
        throw std::invalid_argument("make_f_box needs at least one party");
    }
    require_parties(n);
    std::vector<Rational> palette{Rational(0), inverse_power_of_two(n - 1)};
    std::vector<std::uint32_t> codes(Behavior::cells(n));
    const std::uint64_t side = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < side; ++x) {
        const bool fx = f(x);
        for (std::uint64_t a = 0; a < side; ++a) {
            codes[(x << n) | a] = parity(a) == fx ? 1U : 0U;
        }
    }
    return Behavior(n, std::move(palette), std::move(codes));
}

/// Every entry non-negative and every row summing to one.
inline CheckResult is_normalized(const Behavior &b) {
    for (const auto &v : b.palette()) {
        if (v < 0) {
            return {false, "negative entry " + to_string(v)};
        }
    }
    for (std::uint64_t x = 0; x < b.settings_count(); ++x) {
        const Rational s = b.sum_row(x, [](std::uint64_t) { return true; });
        if (s != 1) {
            return {false, "row x=" + bit_string(x, b.parties()) + " sums to " + to_string(s)};
        }
    }
    return {true, "all rows sum to 1"};
}

/// Exact no-signalling check. For each party j, the marginal of the other
/// parties must not depend on x_j. Marginalizing parties one at a time
/// preserves this property, so it implies setting-independence of every
/// subset marginal. The certificate names the first violating marginal.
inline CheckResult is_no_signalling(const Behavior &b) {
    const unsigned n = b.parties();
    const std::uint64_t side = b.settings_count();
    for (unsigned j = 0; j < n; ++j) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - j);
        for (std::uint64_t x = 0; x < side; ++x) {
            if (x & bit) {
                continue;
            }
            for (std::uint64_t a = 0; a < side; ++a) {
                if (a & bit) {
                    continue;
                }
                const Rational m0 = b(x, a) + b(x, a | bit);
                const Rational m1 = b(x | bit, a) + b(x | bit, a | bit);
                if (m0 != m1) {
                    return {false, "marginal of parties other than " + std::to_string(j) + " at outcomes " +
                                       bit_string(a, n) + " (party " + std::to_string(j) +
                                       " summed out) changes with x_" + std::to_string(j) + ": x=" +
                                       bit_string(x, n) + " gives " + to_string(m0) + ", x=" +
                                       bit_string(x | bit, n) + " gives " + to_string(m1)};
                }
            }
        }
    }
    return {true, "every single-party removal is setting-independent"};
}

/// Draws one joint outcome string for settings x from a fresh generator
/// seeded with `seed`.
inline std::uint64_t sample_local_measurement(const Behavior &b, std::uint64_t x, std::uint64_t seed) {
    if (x >= b.settings_count()) {
        throw std::invalid_argument("settings string longer than the party count");
    }
    Rng rng(seed);
    return b.sample(x, rng);
}

// ---------------------------------------------------------------------------
// Single gbit.

inline SystemType gbit_system() { return {"gbit", 3}; }

/// Fiducial effect (x_a| in coordinates (P(0|x=0), P(0|x=1), 1).
inline Effect gbit_effect(unsigned setting, unsigned outcome) {
    RVector v(3);
    const std::size_t c = setting == 0 ? 0 : 1;
    if (outcome == 0) {
        v[c] = 1;
    } else {
        v[c] = -1;
        v[2] = 1;
    }
    return {gbit_system(), std::move(v)};
}

/// Deterministic vertex giving outcome a0 for setting 0 and a1 for setting 1.
inline State gbit_vertex(unsigned a0, unsigned a1) {
    return {gbit_system(), RVector{Rational(a0 == 0 ? 1 : 0), Rational(a1 == 0 ? 1 : 0), Rational(1)}};
}

inline State gbit_maximally_mixed() {
    return {gbit_system(), RVector{Rational(1, 2), Rational(1, 2), Rational(1)}};
}

/// Single-system Boxworld: the square of no-signalling single-party
/// behaviors, its four facet effects, the two fiducial measurements and the
/// eight symmetries of the square.
inline TheoryInstance gbit_theory() {
    const SystemType g = gbit_system();
    TheoryInstance t;
    t.name = "boxworld";
    t.systems = {g};
    t.pure_states[g.label] = {gbit_vertex(0, 0), gbit_vertex(0, 1), gbit_vertex(1, 0), gbit_vertex(1, 1)};
    t.unit_effect.emplace(g.label, Effect(g, RVector{0, 0, 1}));
    t.effect_generators[g.label] = {gbit_effect(0, 0), gbit_effect(0, 1), gbit_effect(1, 0), gbit_effect(1, 1)};
    t.measurements[g.label] = {Measurement{{gbit_effect(0, 0), gbit_effect(0, 1)}},
                               Measurement{{gbit_effect(1, 0), gbit_effect(1, 1)}}};
    const RMatrix flip_first{{-1, 0, 1}, {0, 1, 0}, {0, 0, 1}};
    const RMatrix swap_settings{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
    const RMatrix gens[] = {flip_first, swap_settings};
    t.reversible_group[g.label] = generate_group(g, gens);
    t.composite_dims["gbit*gbit"] = 9;
    return checked(std::move(t));
}

// ---------------------------------------------------------------------------
// Behavior <-> fiducial vector.

namespace detail {

inline std::size_t pow_size(std::size_t base, unsigned e) {
    std::size_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= base;
    }
    return r;
}

/// Applies an (out x in) matrix along one axis of a row-major tensor.
inline std::vector<Rational> apply_axis(const std::vector<Rational> &data, std::vector<std::size_t> &shape,
                                        std::size_t axis, const RMatrix &m) {
    std::size_t inner = 1;
    for (std::size_t k = axis + 1; k < shape.size(); ++k) {
        inner *= shape[k];
    }
    const std::size_t outer = data.size() / (inner * shape[axis]);
    std::vector<Rational> out(outer * m.rows() * inner);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (m(r, c) == 0) {
                    continue;
                }
                for (std::size_t i = 0; i < inner; ++i) {
                    out[(o * m.rows() + r) * inner + i] += m(r, c) * data[(o * m.cols() + c) * inner + i];
                }
            }
        }
    }
    shape[axis] = m.rows();
    return out;
}

/// Per-party map from the 4 cells (x_j a_j) = 00,01,10,11 to fiducial
/// coordinates (P(0|0), P(0|1), total).
inline RMatrix cells_to_fiducial() { return RMatrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {1, 1, 0, 0}}; }

/// Inverse direction; rows are the fiducial effects (x_a|.
inline RMatrix fiducial_to_cells() { return RMatrix{{1, 0, 0}, {-1, 0, 1}, {0, 1, 0}, {0, -1, 1}}; }

/// Index of cell (x, a) in the per-party digit layout (digit_j = 2 x_j + a_j).
inline std::size_t digit_index(std::uint64_t x, std::uint64_t a, unsigned n) {
    std::size_t idx = 0;
    for (unsigned j = 0; j < n; ++j) {
        idx = idx * 4 + 2 * static_cast<std::size_t>(party_bit(x, n, j)) + static_cast<std::size_t>(party_bit(a, n, j));
    }
    return idx;
}

inline SystemType gbit_power(unsigned n) {
    SystemType s = gbit_system();
    for (unsigned j = 1; j < n; ++j) {
        s = composite(s, gbit_system());
    }
    return s;
}

}  // namespace detail

/// Fiducial coordinates of a behavior: a vector of dimension 3^n, party 0
/// most significant, per-party coordinates (P(0|0), P(0|1), marginal).
inline State behavior_to_vector(const Behavior &b) {
    const unsigned n = b.parties();
    std::vector<Rational> data(detail::pow_size(4, n));
    const std::uint64_t side = b.settings_count();
    for (std::uint64_t x = 0; x < side; ++x) {
        for (std::uint64_t a = 0; a < side; ++a) {
            data[detail::digit_index(x, a, n)] = b(x, a);
        }
    }
    std::vector<std::size_t> shape(n, 4);
    const RMatrix m = detail::cells_to_fiducial();
    for (unsigned j = 0; j < n; ++j) {
        data = detail::apply_axis(data, shape, j, m);
    }
    return {detail::gbit_power(n), RVector(std::move(data))};
}

class OutsideEmbedding : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Inverse of behavior_to_vector. Throws OutsideEmbedding unless the vector
/// describes a normalized, non-negative behavior.
inline Behavior vector_to_behavior(const State &s) {
    unsigned n = 0;
    std::size_t d = s.vec.dim();
    while (d > 1 && d % 3 == 0) {
        d /= 3;
        ++n;
    }
    if (d != 1 || n == 0) {
        throw OutsideEmbedding("vector dimension " + std::to_string(s.vec.dim()) + " is not a power of 3");
    }
    require_parties(n);
    std::vector<Rational> data(s.vec.begin(), s.vec.end());
    std::vector<std::size_t> shape(n, 3);
    const RMatrix m = detail::fiducial_to_cells();
    for (unsigned j = 0; j < n; ++j) {
        data = detail::apply_axis(data, shape, j, m);
    }
    Behavior b = Behavior::from_function(
        n, [&](std::uint64_t x, std::uint64_t a) { return data[detail::digit_index(x, a, n)]; });
    if (auto r = is_normalized(b); !r.holds) {
        throw OutsideEmbedding("vector is not a valid behavior: " + r.certificate);
    }
    return b;
}

}  // namespace gptlab

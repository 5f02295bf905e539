#pragma once

// Circuits that take advice, at bounded input length. A circuit C_x fixes
// measurement settings on the auxiliary register from x, measures the advice
// state plugged into it, and accepts according to a parity test on the
// pointer outcomes.

#include <gptlab/boxworld.hpp>
#include <gptlab/theory.hpp>

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gptlab {

/// L restricted to {0,1}^n: x is in L iff membership(x) is set.
struct LanguageSlice {
    TruthTable membership;

    unsigned n() const { return membership.n(); }
    bool contains(std::uint64_t x) const { return membership(x); }
};

/// Accept iff the parity of the outcomes selected by `mask` equals
/// `accept_parity`. This is the whole of the classical post-processing.
struct ParityPostprocess {
    std::uint64_t mask = 0;
    bool accept_parity = true;

    bool accepts(std::uint64_t outcomes) const { return parity(outcomes & mask) == accept_parity; }
};

/// Advice given as a state of some other theory: `state` lives on the
/// d-fold composite of `port`, and setting s on a port selects
/// `setting_measurements[s]`, whose two effects are outcomes 0 and 1.
struct TheoryAdvice {
    State state;
    SystemType port;
    std::vector<Measurement> setting_measurements;
};

struct AdviceState {
    std::size_t ports = 0;
    std::variant<Behavior, TheoryAdvice> payload;
};

struct AdviceCircuit {
    std::uint64_t instance = 0;
    /// One setting bit per auxiliary port, big-endian.
    std::uint64_t settings = 0;
    std::size_t ports = 0;
    ParityPostprocess postprocess;
};

/// Description of the uniform family {C_x}: which port receives which input
/// bit and how outcomes are post-processed.
struct CircuitFamily {
    unsigned n = 0;
    std::size_t ports = 0;
    std::string settings_rule;
    std::string postprocess_rule;

    /// Port j is measured with setting x_j; accept iff the outcome parity is 1.
    AdviceCircuit circuit(std::uint64_t x) const {
        if (x >> n) {
            throw std::invalid_argument("instance longer than n bits");
        }
        return {x, x, ports, {(std::uint64_t{1} << ports) - 1, true}};
    }
};

class RegisterMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Advice is the f-box of the membership function on d(n) = n ports.
inline std::pair<AdviceState, CircuitFamily> build_boxworld_advice(const LanguageSlice &slice) {
    require_parties(slice.n());
    const unsigned n = slice.n();
    AdviceState adv{n, make_f_box(slice.membership)};
    CircuitFamily fam{n, n, "port j measured with setting x_j", "accept iff parity of all outcomes is 1"};
    return {std::move(adv), std::move(fam)};
}

namespace detail {

inline Rational theory_acceptance(const AdviceCircuit &c, const TheoryAdvice &adv, std::size_t ports) {
    for (const auto &m : adv.setting_measurements) {
        if (m.outcomes() != 2) {
            throw std::invalid_argument("advice measurements must have two outcomes");
        }
    }
    Rational total = 0;
    const std::uint64_t strings = std::uint64_t{1} << ports;
    for (std::uint64_t a = 0; a < strings; ++a) {
        if (!c.postprocess.accepts(a)) {
            continue;
        }
        RVector eff{Rational(1)};
        for (std::size_t j = 0; j < ports; ++j) {
            const bool s = party_bit(c.settings, static_cast<unsigned>(ports), static_cast<unsigned>(j));
            const bool o = party_bit(a, static_cast<unsigned>(ports), static_cast<unsigned>(j));
            if (s >= adv.setting_measurements.size()) {
                throw std::invalid_argument("setting has no measurement on this port");
            }
            eff = tensor(eff, adv.setting_measurements[s].effects[o].vec);
        }
        total += dot(eff, adv.state.vec);
    }
    return total;
}

}  // namespace detail

/// Exact probability that C_x accepts with `adv` on its auxiliary register.
inline Rational acceptance_probability(const AdviceCircuit &c, const AdviceState &adv) {
    if (c.ports != adv.ports) {
        throw RegisterMismatch("circuit has " + std::to_string(c.ports) + " auxiliary ports, advice has " +
                               std::to_string(adv.ports));
    }
    if (const auto *b = std::get_if<Behavior>(&adv.payload)) {
        if (b->parties() != adv.ports) {
            throw RegisterMismatch("advice behavior has " + std::to_string(b->parties()) + " parties, register has " +
                                   std::to_string(adv.ports) + " ports");
        }
        return b->sum_row(c.settings, [&](std::uint64_t a) { return c.postprocess.accepts(a); });
    }
    const auto &t = std::get<TheoryAdvice>(adv.payload);
    std::size_t expected = 1;
    for (std::size_t j = 0; j < adv.ports; ++j) {
        expected *= t.port.dim;
    }
    if (t.state.vec.dim() != expected) {
        throw RegisterMismatch("advice state dimension does not match " + std::to_string(adv.ports) + " ports of '" +
                               t.port.label + "'");
    }
    return detail::theory_acceptance(c, t, adv.ports);
}

struct AcceptanceThresholds {
    Rational accept = Rational(2, 3);
    Rational reject = Rational(1, 3);
};

enum class Verdict { accept, reject, invalid };

inline Verdict classify(const Rational &p, const AcceptanceThresholds &th) {
    if (p >= th.accept) {
        return Verdict::accept;
    }
    if (p <= th.reject) {
        return Verdict::reject;
    }
    return Verdict::invalid;
}

struct SliceReport {
    unsigned n = 0;
    std::uint64_t agreement = 0;
    std::uint64_t total = 0;
    std::uint64_t invalid = 0;
    /// min acceptance over L minus max acceptance over the complement; an
    /// empty side contributes 1 (min) or 0 (max).
    Rational gap;
    std::size_t advice_ports = 0;
    /// Every acceptance probability was exactly 0 or 1.
    bool deterministic = true;
};

/// Evaluates every C_x on the given advice and scores it against the slice.
inline SliceReport evaluate_slice(const LanguageSlice &slice, const AdviceState &adv, const CircuitFamily &family,
                                  const AcceptanceThresholds &th = {}) {
    SliceReport r;
    r.n = slice.n();
    r.advice_ports = adv.ports;
    Rational min_in = 1;
    Rational max_out = 0;
    const std::uint64_t side = std::uint64_t{1} << slice.n();
    for (std::uint64_t x = 0; x < side; ++x) {
        const Rational p = acceptance_probability(family.circuit(x), adv);
        const Verdict v = classify(p, th);
        const bool member = slice.contains(x);
        ++r.total;
        if (v == Verdict::invalid) {
            ++r.invalid;
        } else if ((v == Verdict::accept) == member) {
            ++r.agreement;
        }
        if (p != 0 && p != 1) {
            r.deterministic = false;
        }
        if (member) {
            min_in = std::min(min_in, p);
        } else {
            max_out = std::max(max_out, p);
        }
    }
    r.gap = min_in - max_out;
    return r;
}

/// Builds Boxworld advice for the slice and decides every x of length n.
inline SliceReport decide_slice(const LanguageSlice &slice, const AcceptanceThresholds &th = {}) {
    const auto [adv, family] = build_boxworld_advice(slice);
    return evaluate_slice(slice, adv, family, th);
}

}  // namespace gptlab

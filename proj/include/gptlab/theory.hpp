#pragma once

// Finitely-generated operational theories: systems, states, effects,
// measurements, reversible transformations, and the pairing that turns a
// closed circuit into a probability.

#include <gptlab/linalg.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gptlab {

struct CheckResult {
    bool holds = false;
    /// Names the first violation found, or summarizes the evidence.
    std::string certificate;
};

struct SystemType {
    std::string label;
    std::size_t dim = 1;

    friend bool operator==(const SystemType &, const SystemType &) = default;
};

/// Joint system of `a` and `b` in the product embedding.
inline SystemType composite(const SystemType &a, const SystemType &b) {
    return {a.label + "*" + b.label, a.dim * b.dim};
}

class SystemMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {
inline void require_dim(const SystemType &s, const RVector &v, const char *what) {
    if (v.dim() != s.dim) {
        throw std::invalid_argument(std::string(what) + " on system '" + s.label + "' needs dimension " +
                                    std::to_string(s.dim) + ", got " + std::to_string(v.dim()));
    }
}
}  // namespace detail

struct State {
    SystemType system;
    RVector vec;

    State() = default;
    State(SystemType s, RVector v) : system(std::move(s)), vec(std::move(v)) { detail::require_dim(system, vec, "state"); }
    friend bool operator==(const State &, const State &) = default;
};

struct Effect {
    SystemType system;
    RVector vec;

    Effect() = default;
    Effect(SystemType s, RVector v) : system(std::move(s)), vec(std::move(v)) { detail::require_dim(system, vec, "effect"); }
    friend bool operator==(const Effect &, const Effect &) = default;
};

/// One effect per classical-pointer outcome.
struct Measurement {
    std::vector<Effect> effects;

    std::size_t outcomes() const { return effects.size(); }

    /// Sum of all effects. Throws if the effects live on different systems.
    Effect total() const {
        if (effects.empty()) {
            throw std::invalid_argument("measurement has no outcomes");
        }
        RVector s(effects[0].system.dim);
        for (const auto &e : effects) {
            if (e.system != effects[0].system) {
                throw SystemMismatch("measurement mixes systems '" + effects[0].system.label + "' and '" +
                                     e.system.label + "'");
            }
            s += e.vec;
        }
        return {effects[0].system, std::move(s)};
    }
};

struct Transformation {
    SystemType system_in;
    SystemType system_out;
    RMatrix matrix;
    bool reversible = false;

    State apply(const State &s) const {
        if (s.system != system_in) {
            throw SystemMismatch("transformation expects '" + system_in.label + "', got '" + s.system.label + "'");
        }
        return {system_out, matrix * s.vec};
    }
};

/// (e|s): the probability of the effect's outcome on the state.
inline Rational pairing(const Effect &e, const State &s) {
    if (e.system != s.system) {
        throw SystemMismatch("pairing effect on '" + e.system.label + "' with state on '" + s.system.label + "'");
    }
    return dot(e.vec, s.vec);
}

inline State compose(const State &a, const State &b) { return {composite(a.system, b.system), tensor(a.vec, b.vec)}; }
inline Effect compose(const Effect &a, const Effect &b) { return {composite(a.system, b.system), tensor(a.vec, b.vec)}; }

class InvalidPartition : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Joins outcomes: the j-th effect of the result is the sum of the effects in
/// block j. Every outcome index must appear in exactly one non-empty block.
inline Measurement coarse_grain(const Measurement &m, std::span<const std::vector<std::size_t>> partition) {
    std::vector<int> seen(m.outcomes(), 0);
    Measurement out;
    for (const auto &block : partition) {
        if (block.empty()) {
            throw InvalidPartition("coarse_grain: empty block");
        }
        RVector sum(m.effects.at(0).system.dim);
        for (std::size_t i : block) {
            if (i >= m.outcomes()) {
                throw InvalidPartition("coarse_grain: outcome " + std::to_string(i) + " out of range");
            }
            if (seen[i]++) {
                throw InvalidPartition("coarse_grain: outcome " + std::to_string(i) + " appears twice");
            }
            sum += m.effects[i].vec;
        }
        out.effects.emplace_back(m.effects[0].system, std::move(sum));
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            throw InvalidPartition("coarse_grain: outcome " + std::to_string(i) + " not covered");
        }
    }
    return out;
}

/// A theory given by finite lists: pure states, effect-cone generators,
/// allowed complete measurements and a finite reversible group per system.
struct TheoryInstance {
    std::string name;
    std::vector<SystemType> systems;
    std::map<std::string, std::vector<State>> pure_states;
    std::map<std::string, Effect> unit_effect;
    std::map<std::string, std::vector<Effect>> effect_generators;
    std::map<std::string, std::vector<Measurement>> measurements;
    std::map<std::string, std::vector<Transformation>> reversible_group;
    /// Keyed "A*B". The joint space dimension is a property of the theory.
    std::map<std::string, std::size_t> composite_dims;
    /// Pure states are a finite sample of a continuum; passing checks are
    /// evidence, failing checks are definitive.
    bool sampled = false;

    const SystemType &system(const std::string &label) const {
        for (const auto &s : systems) {
            if (s.label == label) {
                return s;
            }
        }
        throw std::out_of_range("theory '" + name + "' has no system '" + label + "'");
    }

    std::optional<std::size_t> composite_dim(const SystemType &a, const SystemType &b) const {
        auto it = composite_dims.find(a.label + "*" + b.label);
        if (it == composite_dims.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    template <typename T>
    static const std::vector<T> &list_or_empty(const std::map<std::string, std::vector<T>> &m, const std::string &k) {
        static const std::vector<T> empty;
        auto it = m.find(k);
        return it == m.end() ? empty : it->second;
    }

    const std::vector<State> &pure(const std::string &label) const { return list_or_empty(pure_states, label); }
    const std::vector<Effect> &generators(const std::string &label) const {
        return list_or_empty(effect_generators, label);
    }
    const std::vector<Measurement> &measurements_on(const std::string &label) const {
        return list_or_empty(measurements, label);
    }
    const std::vector<Transformation> &group(const std::string &label) const {
        return list_or_empty(reversible_group, label);
    }
    const Effect &unit(const std::string &label) const {
        auto it = unit_effect.find(label);
        if (it == unit_effect.end()) {
            throw std::out_of_range("theory '" + name + "' declares no unit effect for '" + label + "'");
        }
        return it->second;
    }
};

/// Checks closure of a listed transformation group: identity present,
/// products and inverses in the list.
inline std::vector<std::string> group_problems(const std::vector<Transformation> &group, const SystemType &sys) {
    std::vector<std::string> problems;
    if (group.empty()) {
        problems.push_back(sys.label + ": reversible group is empty");
        return problems;
    }
    auto contains = [&](const RMatrix &m) {
        for (const auto &g : group) {
            if (g.matrix == m) {
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < group.size(); ++i) {
        const auto &g = group[i];
        if (g.system_in != sys || g.system_out != sys || g.matrix.rows() != sys.dim || g.matrix.cols() != sys.dim) {
            problems.push_back(sys.label + ": group element " + std::to_string(i) + " has the wrong shape");
            return problems;
        }
    }
    if (!contains(RMatrix::identity(sys.dim))) {
        problems.push_back(sys.label + ": group lacks the identity");
    }
    for (std::size_t i = 0; i < group.size(); ++i) {
        auto inv = inverse(group[i].matrix);
        if (!inv || !contains(*inv)) {
            problems.push_back(sys.label + ": inverse of group element " + std::to_string(i) + " missing");
        }
        for (std::size_t j = 0; j < group.size(); ++j) {
            if (!contains(group[i].matrix * group[j].matrix)) {
                problems.push_back(sys.label + ": group not closed (element " + std::to_string(i) + " * element " +
                                   std::to_string(j) + ")");
                return problems;
            }
        }
    }
    return problems;
}

/// Construction-time invariants. Empty result means the instance is valid.
inline std::vector<std::string> validate(const TheoryInstance &t) {
    std::vector<std::string> problems;
    std::set<std::string> labels;
    for (const auto &sys : t.systems) {
        if (sys.dim < 1) {
            problems.push_back(sys.label + ": dimension must be positive");
            continue;
        }
        if (!labels.insert(sys.label).second) {
            problems.push_back(sys.label + ": duplicate system label");
        }
        auto uit = t.unit_effect.find(sys.label);
        if (uit == t.unit_effect.end()) {
            problems.push_back(sys.label + ": no unit effect");
            continue;
        }
        const Effect &u = uit->second;
        for (std::size_t i = 0; i < t.pure(sys.label).size(); ++i) {
            const auto &s = t.pure(sys.label)[i];
            if (s.system != sys) {
                problems.push_back(sys.label + ": pure state " + std::to_string(i) + " on wrong system");
            } else if (pairing(u, s) != 1) {
                problems.push_back(sys.label + ": pure state " + std::to_string(i) + " is not normalized");
            }
        }
        for (std::size_t k = 0; k < t.generators(sys.label).size(); ++k) {
            const auto &e = t.generators(sys.label)[k];
            if (e.system != sys) {
                problems.push_back(sys.label + ": effect generator " + std::to_string(k) + " on wrong system");
                continue;
            }
            for (std::size_t i = 0; i < t.pure(sys.label).size(); ++i) {
                if (!is_probability(pairing(e, t.pure(sys.label)[i]))) {
                    problems.push_back(sys.label + ": effect generator " + std::to_string(k) +
                                       " gives a non-probability on pure state " + std::to_string(i));
                }
            }
        }
        for (std::size_t k = 0; k < t.measurements_on(sys.label).size(); ++k) {
            try {
                if (t.measurements_on(sys.label)[k].total() != u) {
                    problems.push_back(sys.label + ": measurement " + std::to_string(k) +
                                       " does not sum to the unit effect");
                }
            } catch (const std::invalid_argument &e) {
                problems.push_back(sys.label + ": measurement " + std::to_string(k) + ": " + e.what());
            }
        }
        if (!t.group(sys.label).empty()) {
            auto gp = group_problems(t.group(sys.label), sys);
            if (gp.empty()) {
                // Reversible maps must permute the pure states.
                const auto &pure = t.pure(sys.label);
                for (std::size_t g = 0; g < t.group(sys.label).size(); ++g) {
                    for (std::size_t i = 0; i < pure.size(); ++i) {
                        RVector img = t.group(sys.label)[g].matrix * pure[i].vec;
                        bool found = false;
                        for (const auto &p : pure) {
                            if (p.vec == img) {
                                found = true;
                                break;
                            }
                        }
                        if (!found) {
                            gp.push_back(sys.label + ": group element " + std::to_string(g) + " maps pure state " +
                                         std::to_string(i) + " outside the pure-state list");
                        }
                    }
                }
            }
            for (auto &p : gp) {
                problems.push_back(std::move(p));
            }
        }
    }
    for (const auto &[key, d] : t.composite_dims) {
        const auto star = key.find('*');
        if (star == std::string::npos || !labels.count(key.substr(0, star)) || !labels.count(key.substr(star + 1))) {
            problems.push_back("composite dimension key '" + key + "' does not name two systems");
        }
        if (d == 0) {
            problems.push_back("composite dimension for '" + key + "' must be positive");
        }
    }
    return problems;
}

class InvalidTheory : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline TheoryInstance checked(TheoryInstance t) {
    auto problems = validate(t);
    if (!problems.empty()) {
        std::string msg = "theory '" + t.name + "' is invalid:";
        for (const auto &p : problems) {
            msg += "\n  " + p;
        }
        throw InvalidTheory(msg);
    }
    return t;
}

/// Closure of `generators` under matrix multiplication. Each generator must
/// have finite order or this does not terminate; callers pass finite groups.
inline std::vector<Transformation> generate_group(const SystemType &sys, std::span<const RMatrix> generators,
                                                  std::size_t max_order = 4096) {
    std::vector<RMatrix> elems{RMatrix::identity(sys.dim)};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto &g : generators) {
            RMatrix p = g * elems[i];
            bool known = false;
            for (const auto &e : elems) {
                if (e == p) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                if (elems.size() >= max_order) {
                    throw std::runtime_error("generate_group: group order exceeds " + std::to_string(max_order));
                }
                elems.push_back(std::move(p));
            }
        }
    }
    std::vector<Transformation> out;
    out.reserve(elems.size());
    for (auto &e : elems) {
        out.push_back({sys, sys, std::move(e), true});
    }
    return out;
}

}  // namespace gptlab

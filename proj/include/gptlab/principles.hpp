#pragma once

// Purity, complete mixedness and perfect distinguishability as exact LPs, and
// the three principle checkers: causality, tomographic locality and
// bit-symmetry.

#include <gptlab/simplex.hpp>
#include <gptlab/theory.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gptlab {

namespace detail {

inline std::vector<RVector> vectors_of(std::span<const State> states) {
    std::vector<RVector> out;
    out.reserve(states.size());
    for (const auto &s : states) {
        out.push_back(s.vec);
    }
    return out;
}

inline bool in_convex_hull(std::span<const RVector> points, const RVector &v) {
    if (points.empty()) {
        return false;
    }
    const auto cons = coordinate_constraints(v);
    return cone_feasible(points, cons).has_value();
}

}  // namespace detail

/// True iff the state set contains `s` as an extreme point. The state set is
/// the convex hull of the theory's listed pure states, and all of them are
/// normalized, so coordinate equality pins the weights to sum to one.
inline bool is_pure(const State &s, const TheoryInstance &theory) {
    const auto &pure = theory.pure(s.system.label);
    std::vector<RVector> others;
    bool listed = false;
    for (const auto &p : pure) {
        if (p.vec == s.vec) {
            listed = true;
        } else {
            others.push_back(p.vec);
        }
    }
    if (!listed) {
        // Extreme points of a hull are among its generators.
        return false;
    }
    return !detail::in_convex_hull(others, s.vec);
}

/// True iff every pure state rho admits p > 0 with s - p*rho in the state
/// cone. Solved per rho as lambda*s - sum c_k g_k = rho with lambda, c >= 0;
/// pairing with the unit effect forces lambda >= 1.
inline bool is_completely_mixed(const State &s, const TheoryInstance &theory) {
    const auto &pure = theory.pure(s.system.label);
    const auto points = detail::vectors_of(pure);
    if (!detail::in_convex_hull(points, s.vec)) {
        return false;
    }
    std::vector<RVector> gens;
    gens.reserve(points.size() + 1);
    gens.push_back(s.vec);
    for (const auto &g : points) {
        gens.push_back(-g);
    }
    for (const auto &rho : points) {
        const auto cons = coordinate_constraints(rho);
        if (!cone_feasible(gens, cons)) {
            return false;
        }
    }
    return true;
}

/// Searches the theory's effect cone for a measurement {e_i} summing to the
/// unit effect with (e_i|sigma_j) = delta_ij. The N effects are stacked into
/// one vector of dimension N*dim so the whole search is a single cone LP.
inline std::optional<Measurement> perfectly_distinguishable(std::span<const State> states,
                                                            const TheoryInstance &theory) {
    if (states.size() < 2) {
        throw std::invalid_argument("perfectly_distinguishable needs at least two states");
    }
    const SystemType &sys = states[0].system;
    for (const auto &s : states) {
        if (s.system != sys) {
            throw SystemMismatch("perfectly_distinguishable: states on different systems");
        }
    }
    const auto &gens = theory.generators(sys.label);
    const Effect &unit = theory.unit(sys.label);
    const std::size_t n = states.size();
    const std::size_t d = sys.dim;
    auto place = [&](const RVector &v, std::size_t block) {
        RVector out(n * d);
        for (std::size_t c = 0; c < d; ++c) {
            out[block * d + c] = v[c];
        }
        return out;
    };

    std::vector<RVector> stacked;
    stacked.reserve(n * gens.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto &g : gens) {
            stacked.push_back(place(g.vec, i));
        }
    }
    std::vector<LinearConstraint> cons;
    for (std::size_t c = 0; c < d; ++c) {
        RVector v(n * d);
        for (std::size_t i = 0; i < n; ++i) {
            v[i * d + c] = 1;
        }
        cons.push_back({std::move(v), unit.vec[c]});
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cons.push_back({place(states[j].vec, i), Rational(i == j ? 1 : 0)});
        }
    }
    auto coeffs = cone_feasible(stacked, cons);
    if (!coeffs) {
        return std::nullopt;
    }
    Measurement m;
    for (std::size_t i = 0; i < n; ++i) {
        RVector e(d);
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const auto &c = (*coeffs)[i * gens.size() + k];
            if (c != 0) {
                e += c * gens[k].vec;
            }
        }
        m.effects.emplace_back(sys, std::move(e));
    }
    return m;
}

/// Finite-theory causality: every listed complete measurement on a system
/// sums to one and the same effect, the declared unit.
inline CheckResult check_causality(const TheoryInstance &theory) {
    for (const auto &sys : theory.systems) {
        const Effect &unit = theory.unit(sys.label);
        const auto &ms = theory.measurements_on(sys.label);
        for (std::size_t k = 0; k < ms.size(); ++k) {
            const Effect total = ms[k].total();
            if (total != unit) {
                return {false, sys.label + ": measurement " + std::to_string(k) + " sums to " + total.vec.str() +
                                   ", unit effect is " + unit.vec.str()};
            }
        }
        for (std::size_t i = 0; i < theory.pure(sys.label).size(); ++i) {
            if (pairing(unit, theory.pure(sys.label)[i]) != 1) {
                return {false, sys.label + ": unit effect does not normalize pure state " + std::to_string(i)};
            }
        }
    }
    return {true, "every listed measurement sums to the unique unit effect"};
}

/// Product pure states of A and B must span the declared joint space.
inline CheckResult check_tomographic_locality(const TheoryInstance &theory, const SystemType &a,
                                              const SystemType &b) {
    const auto declared = theory.composite_dim(a, b);
    if (!declared) {
        throw std::invalid_argument("theory '" + theory.name + "' declares no composite dimension for " + a.label +
                                    "*" + b.label);
    }
    std::vector<RVector> rows;
    for (const auto &sa : theory.pure(a.label)) {
        for (const auto &sb : theory.pure(b.label)) {
            rows.push_back(tensor(sa.vec, sb.vec));
        }
    }
    const std::size_t r = rows.empty() ? 0 : rank(RMatrix::from_rows(rows));
    const std::string cert = a.label + "*" + b.label + ": product span rank " + std::to_string(r) +
                             ", composite dimension " + std::to_string(*declared);
    return {r == *declared, cert};
}

class GroupNotClosed : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Ordered pairs (i, j) of indices into the pure-state list whose states are
/// pure and perfectly distinguishable, in listed order.
inline std::vector<std::pair<std::size_t, std::size_t>> distinguishable_pure_pairs(const TheoryInstance &theory,
                                                                                   const SystemType &sys) {
    const auto &pure = theory.pure(sys.label);
    std::vector<bool> extreme(pure.size());
    for (std::size_t i = 0; i < pure.size(); ++i) {
        extreme[i] = is_pure(pure[i], theory);
    }
    // Distinguishing {a, b} with (e0, e1) distinguishes {b, a} with (e1, e0),
    // so one LP per unordered pair suffices.
    std::vector<std::vector<bool>> dist(pure.size(), std::vector<bool>(pure.size(), false));
    for (std::size_t i = 0; i < pure.size(); ++i) {
        for (std::size_t j = i + 1; j < pure.size(); ++j) {
            if (!extreme[i] || !extreme[j] || pure[i].vec == pure[j].vec) {
                continue;
            }
            const State both[] = {pure[i], pure[j]};
            dist[i][j] = dist[j][i] = perfectly_distinguishable(both, theory).has_value();
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < pure.size(); ++i) {
        for (std::size_t j = 0; j < pure.size(); ++j) {
            if (dist[i][j]) {
                pairs.emplace_back(i, j);
            }
        }
    }
    return pairs;
}

/// Bit-symmetry against the listed finite group: every ordered pair of pure,
/// perfectly distinguishable states maps onto every other such pair.
inline CheckResult check_bit_symmetry(const TheoryInstance &theory, const SystemType &sys) {
    const auto &group = theory.group(sys.label);
    if (auto problems = group_problems(group, sys); !problems.empty()) {
        throw GroupNotClosed(problems.front());
    }
    const auto &pure = theory.pure(sys.label);
    const auto pairs = distinguishable_pure_pairs(theory, sys);
    if (pairs.size() < 2) {
        return {true, sys.label + ": fewer than two distinguishable pure pairs, holds vacuously"};
    }

    // image[g][i]: index of g * pure[i] in the pure list, or npos.
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::vector<std::size_t>> image(group.size(), std::vector<std::size_t>(pure.size(), npos));
    for (std::size_t g = 0; g < group.size(); ++g) {
        for (std::size_t i = 0; i < pure.size(); ++i) {
            const RVector v = group[g].matrix * pure[i].vec;
            for (std::size_t k = 0; k < pure.size(); ++k) {
                if (pure[k].vec == v) {
                    image[g][i] = k;
                    break;
                }
            }
        }
    }
    auto same = [&](std::size_t a, std::size_t b) { return a != npos && pure[a].vec == pure[b].vec; };
    for (const auto &[r1, r2] : pairs) {
        for (const auto &[s1, s2] : pairs) {
            bool mapped = false;
            for (std::size_t g = 0; g < group.size() && !mapped; ++g) {
                mapped = same(image[g][r1], s1) && same(image[g][r2], s2);
            }
            if (!mapped) {
                return {false, sys.label + ": no listed reversible transformation maps pure pair (" +
                                   std::to_string(r1) + "," + std::to_string(r2) + ") onto (" + std::to_string(s1) +
                                   "," + std::to_string(s2) + "); " + std::to_string(pairs.size()) +
                                   " ordered distinguishable pairs, group order " + std::to_string(group.size())};
            }
        }
    }
    return {true, sys.label + ": listed group of order " + std::to_string(group.size()) + " acts transitively on " +
                      std::to_string(pairs.size()) + " ordered distinguishable pure pairs"};
}

struct PrincipleVerdict {
    CheckResult causality;
    CheckResult tomographic_locality;
    CheckResult bit_symmetry;
    /// "exact", or "sampled-evidence" when the theory is a finite sample.
    std::string mode;
};

/// Runs all three checkers over every system and every declared composite.
inline PrincipleVerdict check_principles(const TheoryInstance &theory) {
    PrincipleVerdict v;
    v.mode = theory.sampled ? "sampled-evidence" : "exact";
    v.causality = check_causality(theory);

    v.tomographic_locality = {true, ""};
    if (theory.composite_dims.empty()) {
        v.tomographic_locality = {false, "no composite dimension declared; tomographic locality undetermined"};
    }
    for (const auto &[key, dim] : theory.composite_dims) {
        const auto star = key.find('*');
        const auto r = check_tomographic_locality(theory, theory.system(key.substr(0, star)),
                                                  theory.system(key.substr(star + 1)));
        if (v.tomographic_locality.holds) {
            v.tomographic_locality.certificate +=
                (v.tomographic_locality.certificate.empty() ? "" : "; ") + r.certificate;
        }
        if (!r.holds && v.tomographic_locality.holds) {
            v.tomographic_locality = r;
        }
    }

    v.bit_symmetry = {true, ""};
    for (const auto &sys : theory.systems) {
        const auto r = check_bit_symmetry(theory, sys);
        if (!r.holds) {
            v.bit_symmetry = r;
            break;
        }
        v.bit_symmetry.certificate += (v.bit_symmetry.certificate.empty() ? "" : "; ") + r.certificate;
    }
    return v;
}

}  // namespace gptlab

#pragma once

// Concrete finitely-generated theories: the classical bit, the rebit
// (real-amplitude qubit) and a rational sample of the qubit Bloch sphere.
// All coordinates are rational so every check stays exact.

#include <gptlab/boxworld.hpp>
#include <gptlab/random.hpp>
#include <gptlab/theory.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gptlab {

inline TheoryInstance classical_bit_theory() {
    const SystemType c{"cbit", 2};
    TheoryInstance t;
    t.name = "classical";
    t.systems = {c};
    t.pure_states[c.label] = {State(c, RVector{1, 0}), State(c, RVector{0, 1})};
    t.unit_effect.emplace(c.label, Effect(c, RVector{1, 1}));
    t.effect_generators[c.label] = {Effect(c, RVector{1, 0}), Effect(c, RVector{0, 1})};
    t.measurements[c.label] = {Measurement{{Effect(c, RVector{1, 0}), Effect(c, RVector{0, 1})}}};
    const RMatrix swap{{0, 1}, {1, 0}};
    t.reversible_group[c.label] = generate_group(c, std::span(&swap, 1));
    t.composite_dims["cbit*cbit"] = 4;
    return checked(std::move(t));
}

/// Point on the unit circle from the rational parametrization
/// t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)).
inline std::pair<Rational, Rational> rational_circle_point(const Rational &t) {
    const Rational d = 1 + t * t;
    return {(1 - t * t) / d, 2 * t / d};
}

namespace detail {

/// Bloch-ball system with pure states at the given unit vectors, projective
/// effects (1 + n.r)/2 along the same directions, one two-outcome
/// measurement per antipodal pair, and the listed reversible group.
inline TheoryInstance bloch_theory(std::string name, const SystemType &sys, const std::vector<RVector> &directions,
                                   std::span<const RMatrix> group_generators, std::size_t composite_dim) {
    const std::size_t d = sys.dim;
    auto lift = [&](const RVector &n, const Rational &scale, const Rational &last) {
        RVector v(d);
        for (std::size_t i = 0; i + 1 < d; ++i) {
            v[i] = scale * n[i];
        }
        v[d - 1] = last;
        return v;
    };
    TheoryInstance t;
    t.name = std::move(name);
    t.systems = {sys};
    RVector unit(d);
    unit[d - 1] = 1;
    t.unit_effect.emplace(sys.label, Effect(sys, unit));
    for (const auto &n : directions) {
        t.pure_states[sys.label].emplace_back(sys, lift(n, 1, 1));
        t.effect_generators[sys.label].emplace_back(sys, lift(n, Rational(1, 2), Rational(1, 2)));
    }
    for (std::size_t i = 0; i < directions.size(); ++i) {
        for (std::size_t j = i + 1; j < directions.size(); ++j) {
            if (directions[i] == -directions[j]) {
                t.measurements[sys.label].push_back(Measurement{
                    {t.effect_generators[sys.label][i], t.effect_generators[sys.label][j]}});
            }
        }
    }
    // Group elements act on the Bloch part and fix the normalization coordinate.
    std::vector<RMatrix> lifted;
    for (const auto &g : group_generators) {
        RMatrix m(d, d);
        for (std::size_t i = 0; i + 1 < d; ++i) {
            for (std::size_t j = 0; j + 1 < d; ++j) {
                m(i, j) = g(i, j);
            }
        }
        m(d - 1, d - 1) = 1;
        lifted.push_back(std::move(m));
    }
    t.reversible_group[sys.label] = generate_group(sys, lifted);
    t.composite_dims[sys.label + "*" + sys.label] = composite_dim;
    return t;
}

/// Orbit of `seed` under the group generated by `gens`, in discovery order.
inline std::vector<RVector> orbit(const RVector &seed, std::span<const RMatrix> gens) {
    std::vector<RVector> pts{seed};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (const auto &g : gens) {
            RVector p = g * pts[i];
            bool known = false;
            for (const auto &q : pts) {
                if (q == p) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                pts.push_back(std::move(p));
            }
        }
    }
    return pts;
}

}  // namespace detail

/// Real-amplitude qubit in Bloch-disc coordinates (x, z, 1). The reversible
/// group is the square's dihedral group D4. With k = 4 the pure states are
/// the four axis points; with k = 8 they are the D4 orbit of the Pythagorean
/// point (3/5, 4/5). No other regular polygon has rational coordinates, so
/// other k are rejected. The joint space of two rebits is the 10-dimensional
/// space of real symmetric 4x4 matrices.
inline TheoryInstance rebit_theory(unsigned k = 4) {
    if (k != 4 && k != 8) {
        throw std::invalid_argument("rebit_theory: k must be 4 or 8 (rational orbits of the square group), got " +
                                    std::to_string(k));
    }
    const SystemType r{"rebit", 3};
    const RMatrix gens[] = {RMatrix{{0, -1}, {1, 0}}, RMatrix{{1, 0}, {0, -1}}};
    RVector seed{1, 0};
    if (k == 8) {
        auto [x, z] = rational_circle_point(Rational(1, 2));
        seed = RVector{x, z};
    }
    auto t = detail::bloch_theory("rebit", r, detail::orbit(seed, gens), gens, 10);
    return checked(std::move(t));
}

/// Rational sample of the qubit in Bloch coordinates (x, y, z, 1) with the
/// 24 rotations of the octahedron as reversible group. These rotations are
/// induced by Clifford unitaries. Bit-symmetry needs the pure states to form
/// a single group orbit closed under antipodes, so the sample has 6 states
/// (octahedron vertices) when k == 6 and 24 states otherwise: the orbit of a
/// seeded Pythagorean point (a, b, 0).
inline TheoryInstance qubit_sampled_theory(unsigned k = 24, std::uint64_t seed = 1) {
    if (k < 6 || k > 24) {
        throw std::invalid_argument("qubit_sampled_theory: k must lie in [6, 24], got " + std::to_string(k));
    }
    const SystemType q{"qubit", 4};
    const RMatrix gens[] = {RMatrix{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}, RMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};
    RVector start{1, 0, 0};
    if (k > 6) {
        Rng rng(seed);
        // 0 < t < 1 keeps a, b positive and distinct, so the point lies on no
        // rotation axis and its orbit has 24 points.
        const std::uint64_t den = 2 + uniform_below(rng, 7);
        const std::uint64_t num = 1 + uniform_below(rng, den - 1);
        auto [a, b] = rational_circle_point(Rational(num, den));
        start = RVector{a, b, 0};
    }
    auto t = detail::bloch_theory("qubit", q, detail::orbit(start, gens), gens, 16);
    t.sampled = true;
    return checked(std::move(t));
}

}  // namespace gptlab

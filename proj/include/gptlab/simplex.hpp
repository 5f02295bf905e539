#pragma once

// Exact feasibility LP: phase-one simplex over Rational with Bland's rule.

#include <gptlab/linalg.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gptlab {

/// A linear equality <v, y> = rhs on the span of the cone generators.
struct LinearConstraint {
    RVector v;
    Rational rhs;
};

/// Finds x >= 0 with a*x = b, or nullopt if none exists. Phase one of the
/// tableau simplex with one artificial per row; Bland's rule guarantees
/// termination.
inline std::optional<RVector> nonnegative_solution(const RMatrix &a, const RVector &b) {
    if (a.rows() != b.dim()) {
        throw std::invalid_argument("nonnegative_solution: rhs dimension mismatch");
    }
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m == 0) {
        return RVector(n);
    }
    const std::size_t width = n + m + 1;  // structural | artificial | rhs
    const std::size_t rhs = n + m;

    RMatrix t(m + 1, width);  // last row holds the phase-one reduced costs
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Rational sign = b[i] < 0 ? Rational(-1) : Rational(1);
        for (std::size_t j = 0; j < n; ++j) {
            t(i, j) = sign * a(i, j);
        }
        t(i, n + i) = 1;
        t(i, rhs) = sign * b[i];
        basis[i] = n + i;
    }
    // Reduced cost of column j is -(sum of the rows) for structural columns.
    for (std::size_t j = 0; j < width; ++j) {
        if (j >= n && j < rhs) {
            continue;
        }
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i) {
            s -= t(i, j);
        }
        t(m, j) = std::move(s);
    }

    while (true) {
        std::size_t enter = width;
        for (std::size_t j = 0; j < rhs; ++j) {
            if (t(m, j) < 0) {
                enter = j;
                break;
            }
        }
        if (enter == width) {
            break;
        }
        std::size_t leave = m;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, enter) <= 0) {
                continue;
            }
            Rational ratio = t(i, rhs) / t(i, enter);
            if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = std::move(ratio);
            }
        }
        if (leave == m) {
            // Phase one objective is bounded below by zero; unreachable.
            throw std::logic_error("nonnegative_solution: unbounded phase-one problem");
        }
        const Rational piv = t(leave, enter);
        for (std::size_t j = 0; j < width; ++j) {
            t(leave, j) /= piv;
        }
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || t(i, enter) == 0) {
                continue;
            }
            const Rational f = t(i, enter);
            for (std::size_t j = 0; j < width; ++j) {
                if (t(leave, j) != 0) {
                    t(i, j) -= f * t(leave, j);
                }
            }
        }
        basis[leave] = enter;
    }

    if (t(m, rhs) != 0) {
        return std::nullopt;
    }
    RVector x(n);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) {
            x[basis[i]] = t(i, rhs);
        }
    }
    return x;
}

/// Searches for non-negative coefficients c with <v, sum_k c_k g_k> = rhs for
/// every constraint. Returns the coefficients, or nullopt when infeasible.
inline std::optional<RVector> cone_feasible(std::span<const RVector> generators,
                                            std::span<const LinearConstraint> constraints) {
    std::size_t dim = 0;
    bool have_dim = false;
    auto check = [&](const RVector &v) {
        if (!have_dim) {
            dim = v.dim();
            have_dim = true;
        } else if (v.dim() != dim) {
            throw std::invalid_argument("cone_feasible: generators and constraints must share one dimension");
        }
    };
    for (const auto &g : generators) {
        check(g);
    }
    for (const auto &c : constraints) {
        check(c.v);
    }
    RMatrix a(constraints.size(), generators.size());
    RVector b(constraints.size());
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        for (std::size_t k = 0; k < generators.size(); ++k) {
            a(i, k) = dot(constraints[i].v, generators[k]);
        }
        b[i] = constraints[i].rhs;
    }
    return nonnegative_solution(a, b);
}

/// Constraints pinning every coordinate of the combination to `target`.
inline std::vector<LinearConstraint> coordinate_constraints(const RVector &target) {
    std::vector<LinearConstraint> out;
    out.reserve(target.dim());
    for (std::size_t i = 0; i < target.dim(); ++i) {
        out.push_back({RVector::basis(target.dim(), i), target[i]});
    }
    return out;
}

inline RVector combine(std::span<const RVector> generators, const RVector &coefficients) {
    if (generators.size() != coefficients.dim()) {
        throw std::invalid_argument("combine: coefficient count mismatch");
    }
    if (generators.empty()) {
        return RVector();
    }
    RVector out(generators[0].dim());
    for (std::size_t k = 0; k < generators.size(); ++k) {
        if (coefficients[k] != 0) {
            out += coefficients[k] * generators[k];
        }
    }
    return out;
}

}  // namespace gptlab

#pragma once

// Dense exact linear algebra over Rational: vectors, matrices, Kronecker
// products, rank, and linear solves.

#include <gptlab/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gptlab {

class RVector {
  public:
    RVector() = default;
    explicit RVector(std::size_t dim) : coords_(dim, Rational(0)) {}
    explicit RVector(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    RVector(std::initializer_list<Rational> coords) : coords_(coords) {}

    static RVector basis(std::size_t dim, std::size_t i) {
        RVector v(dim);
        v.coords_.at(i) = 1;
        return v;
    }

    std::size_t dim() const { return coords_.size(); }
    const Rational &operator[](std::size_t i) const { return coords_[i]; }
    Rational &operator[](std::size_t i) { return coords_[i]; }
    std::span<const Rational> coords() const { return coords_; }
    auto begin() const { return coords_.begin(); }
    auto end() const { return coords_.end(); }

    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](const Rational &r) { return r == 0; });
    }

    RVector &operator+=(const RVector &o) {
        require_same_dim(o);
        for (std::size_t i = 0; i < dim(); ++i) {
            coords_[i] += o.coords_[i];
        }
        return *this;
    }
    RVector &operator-=(const RVector &o) {
        require_same_dim(o);
        for (std::size_t i = 0; i < dim(); ++i) {
            coords_[i] -= o.coords_[i];
        }
        return *this;
    }
    RVector &operator*=(const Rational &s) {
        for (auto &c : coords_) {
            c *= s;
        }
        return *this;
    }

    friend RVector operator+(RVector a, const RVector &b) { return a += b; }
    friend RVector operator-(RVector a, const RVector &b) { return a -= b; }
    friend RVector operator-(RVector a) { return a *= Rational(-1); }
    friend RVector operator*(const Rational &s, RVector a) { return a *= s; }
    friend RVector operator*(RVector a, const Rational &s) { return a *= s; }
    friend bool operator==(const RVector &, const RVector &) = default;

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < dim(); ++i) {
            if (i) {
                out += ",";
            }
            out += to_string(coords_[i]);
        }
        return out + ")";
    }

  private:
    void require_same_dim(const RVector &o) const {
        if (o.dim() != dim()) {
            throw std::invalid_argument(
                "vector dimension mismatch: " + std::to_string(dim()) + " vs " + std::to_string(o.dim()));
        }
    }

    std::vector<Rational> coords_;
};

inline std::ostream &operator<<(std::ostream &os, const RVector &v) { return os << v.str(); }

inline Rational dot(const RVector &a, const RVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(
            "dot: dimension mismatch " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
    Rational s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

/// Kronecker product; coordinate i*dim(b)+j is a[i]*b[j].
inline RVector tensor(const RVector &a, const RVector &b) {
    std::vector<Rational> out;
    out.reserve(a.dim() * b.dim());
    for (const auto &ai : a) {
        for (const auto &bj : b) {
            out.push_back(ai * bj);
        }
    }
    return RVector(std::move(out));
}

class RMatrix {
  public:
    RMatrix() = default;
    RMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}
    RMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_) {
            throw std::invalid_argument("RMatrix: entry count does not match shape");
        }
    }
    RMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto &r : rows) {
            if (r.size() != cols_) {
                throw std::invalid_argument("RMatrix: ragged initializer");
            }
            entries_.insert(entries_.end(), r.begin(), r.end());
        }
    }

    static RMatrix identity(std::size_t n) {
        RMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    /// Stacks the given vectors as rows. All must share one dimension.
    static RMatrix from_rows(std::span<const RVector> rows) {
        if (rows.empty()) {
            return RMatrix();
        }
        RMatrix m(rows.size(), rows[0].dim());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].dim() != m.cols_) {
                throw std::invalid_argument("from_rows: rows of differing dimension");
            }
            for (std::size_t j = 0; j < m.cols_; ++j) {
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Rational &operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    Rational &operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    RVector row(std::size_t i) const {
        return RVector(std::vector<Rational>(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                             entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)));
    }

    RMatrix transpose() const {
        RMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    friend RVector operator*(const RMatrix &m, const RVector &v) {
        if (m.cols_ != v.dim()) {
            throw std::invalid_argument("matrix-vector dimension mismatch");
        }
        RVector out(m.rows_);
        for (std::size_t i = 0; i < m.rows_; ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < m.cols_; ++j) {
                if (m(i, j) != 0) {
                    s += m(i, j) * v[j];
                }
            }
            out[i] = std::move(s);
        }
        return out;
    }

    friend RMatrix operator*(const RMatrix &a, const RMatrix &b) {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("matrix-matrix dimension mismatch");
        }
        RMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += a(i, k) * b(k, j);
                }
            }
        }
        return out;
    }

    friend bool operator==(const RMatrix &, const RMatrix &) = default;

    std::string str() const {
        std::string out = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) {
                out += ";";
            }
            out += row(i).str();
        }
        return out + "]";
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

inline RMatrix kron(const RMatrix &a, const RMatrix &b) {
    RMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

namespace detail {

/// Scales each row by the lcm of its denominators, giving an integer matrix
/// with the same row space.
inline std::vector<std::vector<BigInt>> integer_rows(const RMatrix &m) {
    std::vector<std::vector<BigInt>> out(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            l = boost::multiprecision::lcm(l, denom(m(i, j)));
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[i][j] = numer(m(i, j)) * (l / denom(m(i, j)));
        }
    }
    return out;
}

}  // namespace detail

/// Exact rank by fraction-free (Bareiss) elimination.
inline std::size_t rank(const RMatrix &m) {
    auto a = detail::integer_rows(m);
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::size_t r = 0;
    BigInt prev_pivot = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                // Bareiss step: division is exact.
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev_pivot;
            }
            a[i][c] = 0;
        }
        prev_pivot = a[r][c];
        ++r;
    }
    return r;
}

struct RowEchelon {
    RMatrix reduced;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form over Rational.
inline RowEchelon rref(RMatrix m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) {
            ++p;
        }
        if (p == m.rows()) {
            continue;
        }
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                std::swap(m(p, j), m(r, j));
            }
        }
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) {
            m(r, j) *= inv;
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) {
                continue;
            }
            const Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                m(i, j) -= f * m(r, j);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

/// Solves m*x = b exactly. Returns nullopt when the system is inconsistent.
/// Underdetermined systems return the particular solution with every free
/// variable set to zero.
inline std::optional<RVector> solve_linear(const RMatrix &m, const RVector &b) {
    if (m.rows() != b.dim()) {
        throw std::invalid_argument("solve_linear: matrix has " + std::to_string(m.rows()) +
                                    " rows but rhs has dimension " + std::to_string(b.dim()));
    }
    RMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, m.cols()) = b[i];
    }
    auto [red, pivots] = rref(std::move(aug));
    if (!pivots.empty() && pivots.back() == m.cols()) {
        return std::nullopt;
    }
    RVector x(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        x[pivots[r]] = red(r, m.cols());
    }
    return x;
}

/// Exact inverse; nullopt for singular or non-square input.
inline std::optional<RMatrix> inverse(const RMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::nullopt;
    }
    const std::size_t n = m.rows();
    RMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, n + i) = 1;
    }
    auto [red, pivots] = rref(std::move(aug));
    if (pivots.size() < n || pivots[n - 1] != n - 1) {
        return std::nullopt;
    }
    RMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inv(i, j) = red(i, n + j);
        }
    }
    return inv;
}

}  // namespace gptlab

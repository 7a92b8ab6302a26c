#pragma once

#include "pcdga/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace pcdga {

using Vec = std::vector<Scalar>;

bool is_zero(const Vec& v);

// Dense row-major matrix over Q or Q(i).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    Vec column(std::size_t c) const;
    Matrix transpose() const;
    Vec apply(const Vec& v) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

// Reduced row-echelon form; the pivot in each column is the first row (at or
// below the current one) with a nonzero entry.
RrefResult rref(Matrix m);
std::size_t rank(const Matrix& m);

// Basis of {x : m x = 0}, one vector per free column.
std::vector<Vec> nullspace(const Matrix& m);

// Coordinates of `target` in `basis`, or nullopt when it is not in the span.
// Throws std::invalid_argument on a length mismatch.
std::optional<Vec> solve_in_span(const std::vector<Vec>& basis, const Vec& target);

// Standard basis vectors completing span(sub) to the ambient space.
std::vector<Vec> quotient_basis(const std::vector<Vec>& sub, std::size_t ambient_dim);

// Precomputed coordinate extraction for a fixed list of linearly independent
// vectors.
class SpanSolver {
public:
    SpanSolver() = default;
    SpanSolver(const std::vector<Vec>& vectors, std::size_t dim);

    std::size_t size() const { return k_; }
    std::size_t dim() const { return dim_; }

    std::optional<Vec> coords(const Vec& target) const;
    // Linear left inverse: exact coordinates for vectors in the span,
    // unspecified (but linear) for other vectors.
    Vec project(const Vec& target) const;

private:
    std::size_t k_ = 0;
    std::size_t dim_ = 0;
    Matrix coef_;
    Matrix ann_;
};

}  // namespace pcdga

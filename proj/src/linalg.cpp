#include "pcdga/linalg.hpp"

#include <stdexcept>

namespace pcdga {

bool is_zero(const Vec& v)
{
    for (const auto& x : v)
        if (!x.is_zero())
            return false;
    return true;
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k)
        m(k, k) = Scalar(1);
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows)
{
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows)
            throw std::invalid_argument("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = cols[c][r];
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols)
{
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

Vec Matrix::row(std::size_t r) const
{
    return Vec(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vec Matrix::column(std::size_t c) const
{
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Vec Matrix::apply(const Vec& v) const
{
    if (v.size() != cols_)
        throw std::invalid_argument("matrix-vector size mismatch");
    Vec out(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (v[c].is_zero())
            continue;
        for (std::size_t r = 0; r < rows_; ++r) {
            const Scalar& x = (*this)(r, c);
            if (!x.is_zero())
                out[r] += x * v[c];
        }
    }
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product size mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(r, k);
            if (x.is_zero())
                continue;
            for (std::size_t c = 0; c < b.cols_; ++c) {
                const Scalar& y = b(k, c);
                if (!y.is_zero())
                    m(r, c) += x * y;
            }
        }
    return m;
}

RrefResult rref(Matrix m)
{
    RrefResult res;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col).is_zero())
            ++p;
        if (p == m.rows())
            continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols(); ++c)
                std::swap(m(p, c), m(row, c));
        Scalar inv = m(row, col).inverse();
        for (std::size_t c = col; c < m.cols(); ++c)
            if (!m(row, c).is_zero())
                m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero())
                continue;
            Scalar f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (!m(row, c).is_zero())
                    m(r, c) -= f * m(row, c);
        }
        res.pivots.push_back(col);
        ++row;
    }
    res.reduced = std::move(m);
    return res;
}

std::size_t rank(const Matrix& m)
{
    return rref(m).rank();
}

std::vector<Vec> nullspace(const Matrix& m)
{
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots)
        is_pivot[p] = true;
    std::vector<Vec> out;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vec v(m.cols());
        v[f] = Scalar(1);
        for (std::size_t k = 0; k < r.pivots.size(); ++k)
            v[r.pivots[k]] = -r.reduced(k, f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Vec> solve_in_span(const std::vector<Vec>& basis, const Vec& target)
{
    for (const auto& b : basis)
        if (b.size() != target.size())
            throw std::invalid_argument("dimension mismatch in solve_in_span");
    std::size_t n = target.size();
    std::size_t k = basis.size();
    Matrix aug(n, k + 1);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < n; ++r)
            aug(r, c) = basis[c][r];
    for (std::size_t r = 0; r < n; ++r)
        aug(r, k) = target[r];
    RrefResult res = rref(std::move(aug));
    if (!res.pivots.empty() && res.pivots.back() == k)
        return std::nullopt;
    Vec x(k);
    for (std::size_t i = 0; i < res.pivots.size(); ++i)
        x[res.pivots[i]] = res.reduced(i, k);
    return x;
}

std::vector<Vec> quotient_basis(const std::vector<Vec>& sub, std::size_t ambient_dim)
{
    std::vector<bool> is_pivot(ambient_dim, false);
    if (!sub.empty()) {
        RrefResult r = rref(Matrix::from_rows(sub, ambient_dim));
        for (auto p : r.pivots)
            is_pivot[p] = true;
    }
    std::vector<Vec> out;
    for (std::size_t j = 0; j < ambient_dim; ++j) {
        if (is_pivot[j])
            continue;
        Vec e(ambient_dim);
        e[j] = Scalar(1);
        out.push_back(std::move(e));
    }
    return out;
}

SpanSolver::SpanSolver(const std::vector<Vec>& vectors, std::size_t dim) : k_(vectors.size()), dim_(dim)
{
    Matrix aug(dim, k_ + dim);
    for (std::size_t c = 0; c < k_; ++c) {
        if (vectors[c].size() != dim)
            throw std::invalid_argument("dimension mismatch in SpanSolver");
        for (std::size_t r = 0; r < dim; ++r)
            aug(r, c) = vectors[c][r];
    }
    for (std::size_t r = 0; r < dim; ++r)
        aug(r, k_ + r) = Scalar(1);
    RrefResult res = rref(std::move(aug));
    for (std::size_t c = 0; c < k_; ++c)
        if (c >= res.pivots.size() || res.pivots[c] != c)
            throw std::invalid_argument("SpanSolver: vectors are linearly dependent");
    coef_ = Matrix(k_, dim);
    ann_ = Matrix(dim - k_, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            if (r < k_)
                coef_(r, c) = res.reduced(r, k_ + c);
            else
                ann_(r - k_, c) = res.reduced(r, k_ + c);
        }
}

std::optional<Vec> SpanSolver::coords(const Vec& target) const
{
    if (target.size() != dim_)
        throw std::invalid_argument("dimension mismatch in SpanSolver::coords");
    if (!is_zero(ann_.apply(target)))
        return std::nullopt;
    return coef_.apply(target);
}

Vec SpanSolver::project(const Vec& target) const
{
    if (target.size() != dim_)
        throw std::invalid_argument("dimension mismatch in SpanSolver::project");
    return coef_.apply(target);
}

}  // namespace pcdga

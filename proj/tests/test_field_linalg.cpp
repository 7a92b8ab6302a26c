#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace pcdga;
using pcdga::testing::random_matrix;
using pcdga::testing::random_scalar;
using pcdga::testing::Rng;

namespace {

// Leibniz expansion, no elimination.
Scalar det_by_permutations(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols)
{
    std::vector<std::size_t> p(cols.size());
    std::iota(p.begin(), p.end(), 0);
    Scalar total;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j)
                if (p[i] > p[j])
                    ++inversions;
        Scalar prod(1);
        for (std::size_t i = 0; i < p.size(); ++i)
            prod *= m(rows[i], cols[p[i]]);
        total += (inversions % 2) ? -prod : prod;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
    do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i])
                s.push_back(i);
        out.push_back(s);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

std::size_t rank_by_minors(const Matrix& m)
{
    for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k)
        for (const auto& r : subsets(m.rows(), k))
            for (const auto& c : subsets(m.cols(), k))
                if (!det_by_permutations(m, r, c).is_zero())
                    return k;
    return 0;
}

}  // namespace

TEST_CASE("scalar arithmetic over Q(i)")
{
    Scalar i = Scalar::i();
    CHECK(i * i == Scalar(-1));
    CHECK((Scalar(1) + i) * (Scalar(1) - i) == Scalar(2));
    CHECK((Scalar(3) + i).inverse() * (Scalar(3) + i) == Scalar(1));
    CHECK(Scalar(mpq_class(1, 2), mpq_class(-3, 4)).str() == "1/2-3/4*i");
    CHECK(parse_scalar("-2/6", Field::Q) == Scalar(mpq_class(-1, 3)));
    CHECK(parse_scalar("1/2+3*i", Field::QI) == Scalar(mpq_class(1, 2), mpq_class(3)));
    CHECK(parse_scalar("-i", Field::QI) == -i);
    CHECK_THROWS(parse_scalar("i", Field::Q));
    CHECK_THROWS(parse_scalar("1/0", Field::Q));
    CHECK_THROWS(Scalar(0).inverse());
}

TEST_CASE("Q(i) arithmetic restricted to real values agrees with GMP rationals")
{
    Rng rng(11);
    for (int k = 0; k < 500; ++k) {
        Scalar a = random_scalar(rng, Field::Q, 9);
        Scalar b = random_scalar(rng, Field::Q, 9);
        mpq_class x = a.re(), y = b.re();
        CHECK((a + b) == Scalar(mpq_class(x + y)));
        CHECK((a - b) == Scalar(mpq_class(x - y)));
        CHECK((a * b) == Scalar(mpq_class(x * y)));
        if (!b.is_zero())
            CHECK((a / b) == Scalar(mpq_class(x / y)));
        CHECK((a * b).is_real());
    }
}

TEST_CASE("rref is idempotent and keeps the row space")
{
    Rng rng(1);
    for (int k = 0; k < 200; ++k) {
        Field f = k % 2 ? Field::QI : Field::Q;
        Matrix m = random_matrix(rng, 1 + k % 5, 1 + (k / 5) % 6, f);
        auto r = rref(m);
        auto rr = rref(r.reduced);
        CHECK(rr.reduced == r.reduced);
        CHECK(rr.pivots == r.pivots);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::vector<Vec> basis;
            for (std::size_t p = 0; p < r.rank(); ++p)
                basis.push_back(r.reduced.row(p));
            if (basis.empty())
                CHECK(is_zero(m.row(i)));
            else
                CHECK(solve_in_span(basis, m.row(i)).has_value());
        }
    }
}

TEST_CASE("rank agrees with the minor-expansion oracle")
{
    Rng rng(2);
    for (int k = 0; k < 150; ++k) {
        Field f = k % 3 == 0 ? Field::QI : Field::Q;
        Matrix m = random_matrix(rng, 1 + k % 4, 1 + (k / 4) % 5, f, 0.5);
        CHECK(rank(m) == rank_by_minors(m));
    }
    Matrix c(2, 2);
    c(0, 0) = Scalar(1);
    c(0, 1) = Scalar::i();
    c(1, 0) = Scalar::i();
    c(1, 1) = Scalar(-1);
    CHECK(rank(c) == 1);
    CHECK(rank_by_minors(c) == 1);
}

TEST_CASE("rank of a product and of the transpose")
{
    Rng rng(3);
    for (int k = 0; k < 200; ++k) {
        Field f = k % 2 ? Field::QI : Field::Q;
        std::size_t a = 1 + k % 4, b = 1 + (k / 4) % 4, c = 1 + (k / 16) % 4;
        Matrix m = random_matrix(rng, a, b, f, 0.5);
        Matrix n = random_matrix(rng, b, c, f, 0.5);
        CHECK(rank(m * n) <= std::min(rank(m), rank(n)));
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("nullspace vectors are independent solutions of the right count")
{
    Rng rng(4);
    for (int k = 0; k < 150; ++k) {
        Matrix m = random_matrix(rng, 1 + k % 4, 1 + (k / 4) % 6, k % 2 ? Field::QI : Field::Q);
        auto ns = nullspace(m);
        CHECK(ns.size() + rank(m) == m.cols());
        for (const auto& v : ns)
            CHECK(is_zero(m.apply(v)));
        if (!ns.empty())
            CHECK(rank(Matrix::from_columns(ns, m.cols())) == ns.size());
    }
}

TEST_CASE("span solver coordinates reconstruct the target")
{
    Rng rng(5);
    for (int k = 0; k < 150; ++k) {
        Field f = k % 2 ? Field::QI : Field::Q;
        std::size_t dim = 2 + k % 5;
        Matrix m = random_matrix(rng, dim, 1 + k % dim, f, 0.3);
        auto r = rref(m.transpose());
        std::vector<Vec> basis;
        for (std::size_t p = 0; p < r.rank(); ++p)
            basis.push_back(r.reduced.row(p));
        if (basis.empty())
            continue;
        SpanSolver s(basis, dim);
        Vec coef;
        for (std::size_t i = 0; i < basis.size(); ++i)
            coef.push_back(random_scalar(rng, f));
        Vec target(dim);
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < dim; ++j)
                target[j] += coef[i] * basis[i][j];
        auto c = s.coords(target);
        REQUIRE(c.has_value());
        CHECK(*c == coef);
        CHECK(s.project(target) == coef);
        if (basis.size() < dim) {
            auto extra = quotient_basis(basis, dim);
            CHECK(extra.size() == dim - basis.size());
            CHECK_FALSE(s.coords(extra.front()).has_value());
        }
    }
    CHECK_THROWS_AS(solve_in_span({Vec{Scalar(1), Scalar(0)}}, Vec{Scalar(1)}), std::invalid_argument);
}

#include "zz/linalg.hpp"

#include <string>
#include "zz/error.hpp"

namespace zz {

// ---------------------------------------------------------------------------
// Elimination

Echelon row_reduce(const QMatrix& m)
{
    QMatrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col)
    {
        std::size_t p = row;
        while (p < r.rows() && r(p, col) == 0)
            ++p;
        if (p == r.rows())
            continue;
        if (p != row)
        {
            for (std::size_t j = 0; j < r.cols(); ++j)
                std::swap(r(p, j), r(row, j));
        }
        Rational inv = 1 / r(row, col);
        for (std::size_t j = col; j < r.cols(); ++j)
            r(row, j) *= inv;
        for (std::size_t i = 0; i < r.rows(); ++i)
        {
            if (i == row || r(i, col) == 0)
                continue;
            Rational factor = r(i, col);
            for (std::size_t j = col; j < r.cols(); ++j)
                r(i, j) -= factor * r(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), std::move(pivots)};
}

std::size_t rank(const QMatrix& m)
{
    return row_reduce(m).pivots.size();
}

Subspace kernel_basis(const QMatrix& m)
{
    Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;

    std::size_t nullity = m.cols() - e.pivots.size();
    QMatrix basis(m.cols(), nullity);
    std::size_t k = 0;
    for (std::size_t free = 0; free < m.cols(); ++free)
    {
        if (is_pivot[free])
            continue;
        basis(free, k) = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            basis(e.pivots[i], k) = -e.reduced(i, free);
        ++k;
    }
    return Subspace(m.cols(), std::move(basis));
}

Subspace image_basis(const QMatrix& m)
{
    Echelon e = row_reduce(m);
    QMatrix basis(m.rows(), e.pivots.size());
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
    {
        for (std::size_t i = 0; i < m.rows(); ++i)
            basis(i, k) = m(i, e.pivots[k]);
    }
    return Subspace(m.rows(), std::move(basis));
}

// ---------------------------------------------------------------------------
// Subspaces

Subspace::Subspace(std::size_t ambient_dim, QMatrix basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis))
{
    if (basis_.rows() != ambient_dim_)
    {
        // A basis with no vectors may come in as 0 x 0.
        if (basis_.cols() == 0)
            basis_ = QMatrix(ambient_dim_, 0);
        else
            throw Error(ErrorKind::AmbientMismatch, "basis vectors do not live in Q^" +
                        std::to_string(ambient_dim_));
    }
    if (rank(basis_) != basis_.cols())
        throw Error(ErrorKind::DimensionMismatch, "subspace basis is linearly dependent");
}

Subspace Subspace::span(const QMatrix& columns)
{
    return image_basis(columns);
}

Subspace Subspace::zero(std::size_t ambient_dim)
{
    return Subspace(ambient_dim, QMatrix(ambient_dim, 0));
}

Subspace Subspace::full(std::size_t ambient_dim)
{
    return Subspace(ambient_dim, QMatrix::identity(ambient_dim));
}

bool Subspace::contains(const std::vector<Rational>& v) const
{
    if (v.size() != ambient_dim_)
        throw Error(ErrorKind::AmbientMismatch, "vector length differs from ambient dimension");
    return rank(hstack(basis_, QMatrix::column(v))) == dim();
}

bool Subspace::contains(const Subspace& other) const
{
    if (other.ambient_dim_ != ambient_dim_)
        throw Error(ErrorKind::AmbientMismatch, "subspaces live in different ambient spaces");
    return rank(hstack(basis_, other.basis_)) == dim();
}

bool subspace_equal(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw Error(ErrorKind::AmbientMismatch,
                    "ambient dimensions " + std::to_string(a.ambient_dim()) + " and " +
                    std::to_string(b.ambient_dim()) + " differ");
    if (a.dim() != b.dim())
        return false;
    return rank(hstack(a.basis(), b.basis())) == a.dim();
}

Subspace intersect(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw Error(ErrorKind::AmbientMismatch, "cannot intersect subspaces of different spaces");
    // x = A s = B t  <=>  [A | -B] (s, t) = 0
    Subspace coeffs = kernel_basis(hstack(a.basis(), -b.basis()));
    QMatrix s = coeffs.basis().block(0, 0, a.dim(), coeffs.dim());
    return Subspace::span(a.basis() * s);
}

Subspace sum(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw Error(ErrorKind::AmbientMismatch, "cannot add subspaces of different spaces");
    return Subspace::span(hstack(a.basis(), b.basis()));
}

Subspace apply(const QMatrix& m, const Subspace& s)
{
    if (m.cols() != s.ambient_dim())
        throw Error(ErrorKind::DimensionMismatch, "map domain differs from subspace ambient");
    return Subspace::span(m * s.basis());
}

bool is_exact_at(const QMatrix& f, const QMatrix& g)
{
    if (f.rows() != g.cols())
        throw Error(ErrorKind::DimensionMismatch,
                    "middle dimensions disagree: f lands in Q^" + std::to_string(f.rows()) +
                    ", g starts from Q^" + std::to_string(g.cols()));
    return subspace_equal(image_basis(f), kernel_basis(g));
}

QMatrix block_assemble(const BlockGrid& blocks,
                       std::array<std::size_t, 2> row_dims,
                       std::array<std::size_t, 2> col_dims)
{
    QMatrix out(row_dims[0] + row_dims[1], col_dims[0] + col_dims[1]);
    for (std::size_t bi = 0; bi < 2; ++bi)
    {
        for (std::size_t bj = 0; bj < 2; ++bj)
        {
            const auto& b = blocks[bi][bj];
            if (!b)
                continue;
            if (b->rows() != row_dims[bi] || b->cols() != col_dims[bj])
                throw Error(ErrorKind::ShapeMismatch,
                            "block (" + std::to_string(bi) + "," + std::to_string(bj) + ") is " +
                            std::to_string(b->rows()) + "x" + std::to_string(b->cols()) +
                            ", partition expects " + std::to_string(row_dims[bi]) + "x" +
                            std::to_string(col_dims[bj]));
            std::size_t r0 = bi == 0 ? 0 : row_dims[0];
            std::size_t c0 = bj == 0 ? 0 : col_dims[0];
            for (std::size_t i = 0; i < b->rows(); ++i)
            {
                for (std::size_t j = 0; j < b->cols(); ++j)
                    out(r0 + i, c0 + j) = (*b)(i, j);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Square matrices

Rational determinant(const QMatrix& m)
{
    if (!m.is_square())
        throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    QMatrix r = m;
    Rational det = 1;
    std::size_t n = r.rows();
    for (std::size_t col = 0; col < n; ++col)
    {
        std::size_t p = col;
        while (p < n && r(p, col) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != col)
        {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(r(p, j), r(col, j));
            det = -det;
        }
        det *= r(col, col);
        for (std::size_t i = col + 1; i < n; ++i)
        {
            if (r(i, col) == 0)
                continue;
            Rational factor = r(i, col) / r(col, col);
            for (std::size_t j = col; j < n; ++j)
                r(i, j) -= factor * r(col, j);
        }
    }
    return det;
}

bool is_invertible(const QMatrix& m)
{
    return m.is_square() && rank(m) == m.rows();
}

QMatrix inverse(const QMatrix& m)
{
    if (!m.is_square())
        throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
    std::size_t n = m.rows();
    Echelon e = row_reduce(hstack(m, QMatrix::identity(n)));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
        throw Error(ErrorKind::SingularMatrix, "matrix is not invertible");
    return e.reduced.block(0, n, n, n);
}

bool is_nilpotent(const QMatrix& m)
{
    if (!m.is_square())
        return false;
    return m.pow(static_cast<unsigned>(m.rows())).is_zero();
}

std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b)
{
    if (a.rows() != b.size())
        throw Error(ErrorKind::DimensionMismatch, "right-hand side length differs from row count");
    Echelon e = row_reduce(hstack(a, QMatrix::column(b)));
    if (!e.pivots.empty() && e.pivots.back() == a.cols())
        return std::nullopt;
    std::vector<Rational> x(a.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        x[e.pivots[i]] = e.reduced(i, a.cols());
    return x;
}

std::vector<Rational> reduce_modulo(const std::vector<Rational>& v, const Subspace& s)
{
    if (v.size() != s.ambient_dim())
        throw Error(ErrorKind::AmbientMismatch, "vector length differs from ambient dimension");
    // Rows of `reduced` span s; pivot coordinates are eliminated from v.
    Echelon e = row_reduce(s.basis().transpose());
    std::vector<Rational> out = v;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
    {
        Rational factor = out[e.pivots[i]];
        if (factor == 0)
            continue;
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] -= factor * e.reduced(i, j);
    }
    return out;
}

QMatrix extend_to_basis(const Subspace& s)
{
    std::size_t n = s.ambient_dim();
    QMatrix full = hstack(s.basis(), QMatrix::identity(n));
    Echelon e = row_reduce(full);
    QMatrix out(n, n);
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
    {
        for (std::size_t i = 0; i < n; ++i)
            out(i, k) = full(i, e.pivots[k]);
    }
    return out;
}

}   // namespace zz

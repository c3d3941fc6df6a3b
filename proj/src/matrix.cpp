#include "zz/matrix.hpp"

#include <sstream>
#include "zz/error.hpp"

namespace zz {

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols)
{
}

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries))
{
    if (entries_.size() != rows * cols)
        throw Error(ErrorKind::ShapeMismatch, "entry count does not match " +
                    std::to_string(rows) + "x" + std::to_string(cols));
}

QMatrix QMatrix::from_rows(std::initializer_list<std::initializer_list<Rational>> rows)
{
    std::size_t nrows = rows.size();
    std::size_t ncols = nrows == 0 ? 0 : rows.begin()->size();
    std::vector<Rational> entries;
    entries.reserve(nrows * ncols);
    for (const auto& row : rows)
    {
        if (row.size() != ncols)
            throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return QMatrix(nrows, ncols, std::move(entries));
}

QMatrix QMatrix::identity(std::size_t n)
{
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

QMatrix QMatrix::column(const std::vector<Rational>& v)
{
    return QMatrix(v.size(), 1, v);
}

bool QMatrix::is_zero() const
{
    for (const auto& x : entries_)
    {
        if (x != 0)
            return false;
    }
    return true;
}

std::vector<Rational> QMatrix::col(std::size_t j) const
{
    std::vector<Rational> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

QMatrix QMatrix::transpose() const
{
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    }
    return t;
}

QMatrix QMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const
{
    if (row0 + nrows > rows_ || col0 + ncols > cols_)
        throw Error(ErrorKind::ShapeMismatch, "block out of range");
    QMatrix b(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
    {
        for (std::size_t j = 0; j < ncols; ++j)
            b(i, j) = (*this)(row0 + i, col0 + j);
    }
    return b;
}

QMatrix QMatrix::pow(unsigned k) const
{
    if (!is_square())
        throw Error(ErrorKind::DimensionMismatch, "power of a non-square matrix");
    QMatrix result = identity(rows_);
    QMatrix base = *this;
    while (k > 0)
    {
        if (k & 1u)
            result = result * base;
        k >>= 1;
        if (k > 0)
            base = base * base;
    }
    return result;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(ErrorKind::DimensionMismatch, "matrix sum shapes differ");
    QMatrix c = a;
    for (std::size_t k = 0; k < c.entries_.size(); ++k)
        c.entries_[k] += b.entries_[k];
    return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(ErrorKind::DimensionMismatch, "matrix difference shapes differ");
    QMatrix c = a;
    for (std::size_t k = 0; k < c.entries_.size(); ++k)
        c.entries_[k] -= b.entries_[k];
    return c;
}

QMatrix operator-(const QMatrix& a)
{
    QMatrix c = a;
    for (auto& x : c.entries_)
        x = -x;
    return c;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw Error(ErrorKind::DimensionMismatch,
                    "cannot compose " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                    " with " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    QMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
    {
        for (std::size_t k = 0; k < a.cols_; ++k)
        {
            const Rational& x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += x * b(k, j);
        }
    }
    return c;
}

QMatrix operator*(const Rational& s, const QMatrix& a)
{
    QMatrix c = a;
    for (auto& x : c.entries_)
        x *= s;
    return c;
}

std::vector<Rational> operator*(const QMatrix& a, const std::vector<Rational>& v)
{
    if (a.cols_ != v.size())
        throw Error(ErrorKind::DimensionMismatch, "matrix-vector shapes differ");
    std::vector<Rational> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
    {
        for (std::size_t j = 0; j < a.cols_; ++j)
            out[i] += a(i, j) * v[j];
    }
    return out;
}

QMatrix hstack(const QMatrix& a, const QMatrix& b)
{
    if (a.rows() != b.rows())
        throw Error(ErrorKind::DimensionMismatch, "hstack row counts differ");
    QMatrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

QMatrix vstack(const QMatrix& a, const QMatrix& b)
{
    if (a.cols() != b.cols())
        throw Error(ErrorKind::DimensionMismatch, "vstack column counts differ");
    QMatrix c(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
    {
        for (std::size_t i = 0; i < a.rows(); ++i)
            c(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i)
            c(a.rows() + i, j) = b(i, j);
    }
    return c;
}

QMatrix direct_sum(const QMatrix& a, const QMatrix& b)
{
    QMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j);
    }
    for (std::size_t i = 0; i < b.rows(); ++i)
    {
        for (std::size_t j = 0; j < b.cols(); ++j)
            c(a.rows() + i, a.cols() + j) = b(i, j);
    }
    return c;
}

std::string to_string(const QMatrix& m)
{
    if (m.empty())
        return "[]";
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        if (i > 0)
            out << "; ";
        for (std::size_t j = 0; j < m.cols(); ++j)
        {
            if (j > 0)
                out << ", ";
            out << to_string(m(i, j));
        }
    }
    out << ']';
    return out.str();
}

}   // namespace zz

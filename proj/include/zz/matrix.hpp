#ifndef ZZ_MATRIX_HPP
#define ZZ_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>
#include "zz/rational.hpp"

namespace zz {

/**
 * Dense exact rational matrix, row-major. Zero-sized shapes (0 x n, n x 0)
 * are valid and stand for maps into or out of the zero space.
 */
class QMatrix
{
  public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols);
    QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

    /** Row-major literal, e.g. `QMatrix::from_rows({{1, 2}, {3, 4}})`. */
    static QMatrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows);
    static QMatrix zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, cols); }
    static QMatrix identity(std::size_t n);
    static QMatrix column(const std::vector<Rational>& v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool is_zero() const;

    const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const std::vector<Rational>& entries() const noexcept { return entries_; }

    std::vector<Rational> col(std::size_t j) const;
    QMatrix transpose() const;
    QMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
    QMatrix pow(unsigned k) const;

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a);
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator*(const Rational& s, const QMatrix& a);
    friend std::vector<Rational> operator*(const QMatrix& a, const std::vector<Rational>& v);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

/** Columns of `a` followed by columns of `b`; row counts must agree. */
QMatrix hstack(const QMatrix& a, const QMatrix& b);
/** Rows of `a` followed by rows of `b`; column counts must agree. */
QMatrix vstack(const QMatrix& a, const QMatrix& b);
/** Block-diagonal sum. */
QMatrix direct_sum(const QMatrix& a, const QMatrix& b);

/** `[a, b; c, d]` with rows separated by ';'; `[]` for any zero-sized matrix. */
std::string to_string(const QMatrix& m);

}   // namespace zz

#endif

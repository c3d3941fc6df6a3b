#ifndef ZZ_LINALG_HPP
#define ZZ_LINALG_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <vector>
#include "zz/matrix.hpp"

namespace zz {

/**
 * A linear subspace of Q^ambient_dim, stored as a matrix whose columns form
 * a basis. Construction checks linear independence.
 */
class Subspace
{
  public:
    Subspace() = default;
    Subspace(std::size_t ambient_dim, QMatrix basis);

    /** The span of arbitrary columns (dependent ones are dropped). */
    static Subspace span(const QMatrix& columns);
    static Subspace zero(std::size_t ambient_dim);
    static Subspace full(std::size_t ambient_dim);

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t dim() const noexcept { return basis_.cols(); }
    const QMatrix& basis() const noexcept { return basis_; }

    bool contains(const std::vector<Rational>& v) const;
    bool contains(const Subspace& other) const;

  private:
    std::size_t ambient_dim_ = 0;
    QMatrix basis_;
};

/** Reduced row echelon form together with its pivot columns. */
struct Echelon
{
    QMatrix reduced;
    std::vector<std::size_t> pivots;
};

/** Gauss-Jordan elimination; the first nonzero entry in a column is the pivot. */
Echelon row_reduce(const QMatrix& m);

std::size_t rank(const QMatrix& m);
Subspace kernel_basis(const QMatrix& m);
Subspace image_basis(const QMatrix& m);

/** Throws AmbientMismatch when the ambient dimensions differ. */
bool subspace_equal(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
/** Image of a subspace under a linear map. */
Subspace apply(const QMatrix& m, const Subspace& s);

/**
 * Exactness of X --f--> Y --g--> Z at Y: im f == ker g.
 * Throws DimensionMismatch when f.rows() != g.cols().
 */
bool is_exact_at(const QMatrix& f, const QMatrix& g);

/**
 * Assemble a 2 x 2 partitioned matrix. Absent blocks are zero; present
 * blocks must have shape row_dims[i] x col_dims[j] (ShapeMismatch otherwise).
 */
using BlockGrid = std::array<std::array<std::optional<QMatrix>, 2>, 2>;
QMatrix block_assemble(const BlockGrid& blocks,
                       std::array<std::size_t, 2> row_dims,
                       std::array<std::size_t, 2> col_dims);

Rational determinant(const QMatrix& m);
/** Throws SingularMatrix if `m` is not invertible. */
QMatrix inverse(const QMatrix& m);
bool is_invertible(const QMatrix& m);
/** True iff some power m^k with k <= rows is zero. */
bool is_nilpotent(const QMatrix& m);

/** One solution x of a x = b, or nothing when inconsistent. */
std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b);

/**
 * Canonical representative of v modulo the subspace s: coordinates at the
 * pivot positions of s's reduced basis are eliminated.
 */
std::vector<Rational> reduce_modulo(const std::vector<Rational>& v, const Subspace& s);

/**
 * Extend a basis of `s` to a basis of the ambient space by appending
 * standard basis vectors; the returned matrix is square and invertible with
 * the columns of s.basis() first.
 */
QMatrix extend_to_basis(const Subspace& s);

}   // namespace zz

#endif

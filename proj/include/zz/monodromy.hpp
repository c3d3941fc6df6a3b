#ifndef ZZ_MONODROMY_HPP
#define ZZ_MONODROMY_HPP

#include <vector>
#include "zz/linalg.hpp"
#include "zz/report.hpp"

namespace zz {

/**
 * Bilinear pairing x . y = x^T G y on Q^dim. Skew-symmetry is recorded, not
 * assumed.
 */
class Pairing
{
  public:
    explicit Pairing(QMatrix gram);

    std::size_t dim() const noexcept { return gram_.rows(); }
    const QMatrix& gram() const noexcept { return gram_; }
    bool is_skew() const noexcept { return skew_; }

    Rational operator()(const std::vector<Rational>& x, const std::vector<Rational>& y) const;

  private:
    QMatrix gram_;
    bool skew_ = false;
};

/** A square matrix verified nilpotent at construction (NotNilpotent otherwise). */
class NilpotentOperator
{
  public:
    explicit NilpotentOperator(QMatrix matrix);

    std::size_t dim() const noexcept { return matrix_.rows(); }
    const QMatrix& matrix() const noexcept { return matrix_; }
    /** Smallest k with N^k = 0. */
    unsigned index() const noexcept { return index_; }

    friend bool operator==(const NilpotentOperator&, const NilpotentOperator&) = default;

  private:
    QMatrix matrix_;
    unsigned index_ = 0;
};

struct WeightStep
{
    int weight;
    Subspace space;
};

/**
 * Increasing filtration W_lo = 0 c ... c W_hi = V. Weights between the
 * stored steps do not occur; below the first step the filtration is 0 and
 * above the last it is V.
 */
struct WeightFiltration
{
    int center = 0;
    std::size_t ambient_dim = 0;
    std::vector<WeightStep> steps;

    /** W_weight, extended by 0 below and V above the stored range. */
    Subspace at(int weight) const;
    /** dim W_weight - dim W_{weight-1}. */
    std::size_t graded_dim(int weight) const;
};

/** T(alpha) = alpha + (alpha . delta) delta. */
std::vector<Rational> pl_transform(const std::vector<Rational>& alpha,
                                   const std::vector<Rational>& delta,
                                   const Pairing& q);

/** Matrix of x -> pl_transform(x, delta, q). */
QMatrix pl_operator(const std::vector<Rational>& delta, const Pairing& q);

/**
 * log T as the terminating series sum_{j>=1} (-1)^{j+1} (T - I)^j / j.
 * Throws NotUnipotent when T - I is not nilpotent.
 */
NilpotentOperator nilpotent_log(const QMatrix& t);

/** exp N = sum_{j>=0} N^j / j!, a finite sum. */
QMatrix unipotent_exp(const NilpotentOperator& n);

/**
 * The monodromy weight filtration of N centered at `center`. Computed as
 *     W_{center+l} = sum_{j >= max(0,-l)} ker N^{l+j+1} n im N^j,
 * and checked against both defining conditions before it is returned.
 */
WeightFiltration weight_filtration(const NilpotentOperator& n, int center);

/**
 * Checks N W_l c W_{l-2} for all l, and that N^j induces an isomorphism
 * Gr_{center+j} -> Gr_{center-j} for all j >= 0.
 */
Report check_weight_filtration(const NilpotentOperator& n, const WeightFiltration& w);

}   // namespace zz

#endif

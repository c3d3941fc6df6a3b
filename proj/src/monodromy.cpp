#include "zz/monodromy.hpp"

#include <algorithm>
#include <string>
#include "zz/error.hpp"

namespace zz {

Pairing::Pairing(QMatrix gram) : gram_(std::move(gram))
{
    if (!gram_.is_square())
        throw Error(ErrorKind::DimensionMismatch, "pairing Gram matrix must be square");
    skew_ = gram_.transpose() == -gram_;
}

Rational Pairing::operator()(const std::vector<Rational>& x, const std::vector<Rational>& y) const
{
    if (x.size() != dim() || y.size() != dim())
        throw Error(ErrorKind::DimensionMismatch, "vector length differs from pairing dimension");
    std::vector<Rational> gy = gram_ * y;
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x[i] * gy[i];
    return s;
}

NilpotentOperator::NilpotentOperator(QMatrix matrix) : matrix_(std::move(matrix))
{
    if (!matrix_.is_square())
        throw Error(ErrorKind::DimensionMismatch, "nilpotent operator must be square");
    QMatrix power = QMatrix::identity(dim());
    for (unsigned k = 0; k <= dim(); ++k)
    {
        if (power.is_zero())
        {
            index_ = k;
            return;
        }
        power = power * matrix_;
    }
    throw Error(ErrorKind::NotNilpotent, "N^" + std::to_string(dim()) + " != 0");
}

// ---------------------------------------------------------------------------
// Picard-Lefschetz

std::vector<Rational> pl_transform(const std::vector<Rational>& alpha,
                                   const std::vector<Rational>& delta,
                                   const Pairing& q)
{
    Rational c = q(alpha, delta);
    std::vector<Rational> out = alpha;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += c * delta[i];
    return out;
}

QMatrix pl_operator(const std::vector<Rational>& delta, const Pairing& q)
{
    if (delta.size() != q.dim())
        throw Error(ErrorKind::DimensionMismatch, "vanishing cycle length differs from pairing dimension");
    std::size_t n = q.dim();
    QMatrix t(n, n);
    for (std::size_t j = 0; j < n; ++j)
    {
        std::vector<Rational> e(n);
        e[j] = 1;
        std::vector<Rational> image = pl_transform(e, delta, q);
        for (std::size_t i = 0; i < n; ++i)
            t(i, j) = image[i];
    }
    return t;
}

// ---------------------------------------------------------------------------
// log / exp

NilpotentOperator nilpotent_log(const QMatrix& t)
{
    if (!t.is_square())
        throw Error(ErrorKind::DimensionMismatch, "monodromy must be square");
    std::size_t n = t.rows();
    QMatrix x = t - QMatrix::identity(n);
    if (!is_nilpotent(x))
        throw Error(ErrorKind::NotUnipotent, "(T - I)^" + std::to_string(n) + " != 0");

    QMatrix sum(n, n);
    QMatrix power = x;
    for (std::size_t j = 1; j <= n && !power.is_zero(); ++j)
    {
        Rational coeff(j % 2 == 1 ? 1 : -1, static_cast<long>(j));
        sum = sum + coeff * power;
        power = power * x;
    }
    return NilpotentOperator(std::move(sum));
}

QMatrix unipotent_exp(const NilpotentOperator& n)
{
    std::size_t d = n.dim();
    QMatrix sum = QMatrix::identity(d);
    QMatrix power = QMatrix::identity(d);
    Rational factorial = 1;
    for (std::size_t j = 1; j <= d; ++j)
    {
        power = power * n.matrix();
        if (power.is_zero())
            break;
        factorial *= static_cast<long>(j);
        sum = sum + (1 / factorial) * power;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Weight filtration

Subspace WeightFiltration::at(int weight) const
{
    if (steps.empty() || weight < steps.front().weight)
        return Subspace::zero(ambient_dim);
    if (weight > steps.back().weight)
        return Subspace::full(ambient_dim);
    return steps[static_cast<std::size_t>(weight - steps.front().weight)].space;
}

std::size_t WeightFiltration::graded_dim(int weight) const
{
    return at(weight).dim() - at(weight - 1).dim();
}

namespace {

std::string weight_name(int w)
{
    return "W_" + std::to_string(w);
}

}   // namespace

WeightFiltration weight_filtration(const NilpotentOperator& n, int center)
{
    std::size_t d = n.dim();
    const QMatrix& mat = n.matrix();
    int m = static_cast<int>(std::max(n.index(), 1u)) - 1;

    // Kernels and images of N^0 .. N^(d+1).
    std::vector<Subspace> ker, im;
    QMatrix power = QMatrix::identity(d);
    for (std::size_t k = 0; k <= d + 1; ++k)
    {
        ker.push_back(kernel_basis(power));
        im.push_back(image_basis(power));
        power = power * mat;
    }
    auto ker_pow = [&](int k) { return ker[static_cast<std::size_t>(std::min<int>(k, static_cast<int>(d) + 1))]; };
    auto im_pow = [&](int k) { return im[static_cast<std::size_t>(std::min<int>(k, static_cast<int>(d) + 1))]; };

    WeightFiltration w;
    w.center = center;
    w.ambient_dim = d;
    for (int l = -m - 1; l <= m; ++l)
    {
        Subspace step = Subspace::zero(d);
        for (int j = std::max(0, -l); j <= static_cast<int>(d) + 1; ++j)
            step = sum(step, intersect(ker_pow(l + j + 1), im_pow(j)));
        w.steps.push_back({center + l, std::move(step)});
    }

    Report r = check_weight_filtration(n, w);
    if (!r.passed())
        throw Error(ErrorKind::DimensionMismatch, "weight filtration failed self-check: " +
                    r.failures().front().name + " " + r.failures().front().detail);
    return w;
}

Report check_weight_filtration(const NilpotentOperator& n, const WeightFiltration& w)
{
    Report r;
    const QMatrix& mat = n.matrix();
    std::size_t d = n.dim();
    if (w.ambient_dim != d)
    {
        r.add("ambient", false, "filtration lives in Q^" + std::to_string(w.ambient_dim));
        return r;
    }
    if (w.steps.empty())
    {
        r.add("exhaustive", false, "no steps");
        return r;
    }

    r.add("exhaustive", w.steps.front().space.dim() == 0 && w.steps.back().space.dim() == d,
          "lowest step must be 0 and highest the full space");
    for (std::size_t i = 0; i + 1 < w.steps.size(); ++i)
    {
        if (w.steps[i + 1].weight != w.steps[i].weight + 1)
            r.add("consecutive", false, weight_name(w.steps[i + 1].weight) + " skips a weight");
        if (!w.steps[i + 1].space.contains(w.steps[i].space))
            r.add("increasing", false, weight_name(w.steps[i].weight) + " not inside " +
                  weight_name(w.steps[i + 1].weight));
    }

    int lo = w.steps.front().weight - 2;
    int hi = w.steps.back().weight + 2;
    for (int l = lo; l <= hi; ++l)
    {
        if (!w.at(l - 2).contains(apply(mat, w.at(l))))
            r.add("N W_l in W_{l-2}", false, "fails at l = " + std::to_string(l));
    }

    int k = w.center;
    int span = std::max(k - lo, hi - k);
    QMatrix power = QMatrix::identity(d);
    for (int j = 0; j <= span; ++j)
    {
        std::size_t up = w.graded_dim(k + j);
        std::size_t down = w.graded_dim(k - j);
        bool onto = subspace_equal(sum(apply(power, w.at(k + j)), w.at(k - j - 1)), w.at(k - j));
        if (up != down || !onto)
            r.add("N^j : Gr_{k+j} ~ Gr_{k-j}", false,
                  "j = " + std::to_string(j) + ": dims " + std::to_string(up) + " -> " +
                  std::to_string(down) + (onto ? "" : ", not onto"));
        power = power * mat;
    }
    if (r.checks.empty() || r.passed())
        r.add("weight filtration conditions", true);
    return r;
}

}   // namespace zz

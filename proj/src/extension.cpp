#include "zz/extension.hpp"

#include <algorithm>
#include <random>
#include "zz/error.hpp"
#include "zz/json_util.hpp"

namespace zz {

Rational ExtensionPresentation::class_scalar() const
{
    if (class_values.size() != 1)
        throw Error(ErrorKind::NonRankOneQuotient,
                    "class scalar needs a rank-one quotient, have " + std::to_string(class_values.size()));
    return class_values.front();
}

// ---------------------------------------------------------------------------
// Construction

namespace {

void check_components(const ZigZag& sub, const ZigZag& quot)
{
    if (!quot.has_zero_open_part() || quot.e_minus != 0 || quot.e_zero != 0)
        throw Error(ErrorKind::NotPointSupported, "quotient must have zero open part, got " + quot.open_label);
    Report rs = validate(sub);
    if (!rs.passed())
        throw Error(ErrorKind::InvalidTotal, "sub-object: " + rs.failures().front().name + " " +
                    rs.failures().front().detail);
    Report rq = validate(quot);
    if (!rq.passed())
        throw Error(ErrorKind::InvalidTotal, "quotient: " + rq.failures().front().name + " " +
                    rq.failures().front().detail);
}

ExtensionPresentation finish(ExtensionPresentation e)
{
    Report r = validate(total_zigzag(e));
    if (!r.passed())
        throw Error(ErrorKind::InvalidTotal, r.failures().front().name + " " + r.failures().front().detail);
    return e;
}

bool all_zero(const std::vector<Rational>& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}   // namespace

ExtensionPresentation make_extension(const ZigZag& sub, const ZigZag& quot, const QMatrix& u_block)
{
    check_components(sub, quot);
    if (sub.b_dim == 0)
        throw Error(ErrorKind::RegimeMismatch, "sub-object has B = 0: the class is a scalar, not a block");
    if (u_block.rows() != sub.b_dim || u_block.cols() != quot.a_dim)
        throw Error(ErrorKind::ShapeMismatch, "u must be " + std::to_string(sub.b_dim) + "x" +
                    std::to_string(quot.a_dim) + " (A_quot -> B_sub)");
    return finish({sub, quot, u_block, std::vector<Rational>(quot.a_dim)});
}

ExtensionPresentation make_extension(const ZigZag& sub, const ZigZag& quot, const Rational& c)
{
    check_components(sub, quot);
    if (sub.b_dim > 0)
    {
        if (c != 0)
            throw Error(ErrorKind::RegimeMismatch, "sub-object has B != 0: give the class as a u block");
        return finish({sub, quot, QMatrix(sub.b_dim, quot.a_dim), std::vector<Rational>(quot.a_dim)});
    }
    if (c != 0 && quot.a_dim != 1)
        throw Error(ErrorKind::ShapeMismatch, "a scalar class needs a rank-one quotient");
    std::vector<Rational> classes(quot.a_dim, c);
    return finish({sub, quot, QMatrix(0, quot.a_dim), std::move(classes)});
}

ExtensionPresentation make_extension(const ZigZag& sub, const ZigZag& quot, const std::vector<Rational>& classes)
{
    check_components(sub, quot);
    if (sub.b_dim > 0)
    {
        if (!all_zero(classes))
            throw Error(ErrorKind::RegimeMismatch, "sub-object has B != 0: give the class as a u block");
        return finish({sub, quot, QMatrix(sub.b_dim, quot.a_dim), std::vector<Rational>(quot.a_dim)});
    }
    if (classes.size() != quot.a_dim)
        throw Error(ErrorKind::ShapeMismatch, "need one class scalar per quotient coordinate (" +
                    std::to_string(quot.a_dim) + "), got " + std::to_string(classes.size()));
    return finish({sub, quot, QMatrix(0, quot.a_dim), classes});
}

ZigZag total_zigzag(const ExtensionPresentation& e)
{
    const ZigZag& s = e.sub;
    const ZigZag& q = e.quot;
    ZigZag t;
    t.open_label = s.open_label;
    t.e_minus = s.e_minus;
    t.e_zero = s.e_zero;
    t.a_dim = s.a_dim + q.a_dim;
    t.b_dim = s.b_dim + q.b_dim;
    t.alpha = vstack(s.alpha, QMatrix(q.a_dim, s.e_minus));
    t.beta = block_assemble({{{s.beta, e.u_block}, {std::nullopt, q.beta}}},
                            {s.b_dim, q.b_dim}, {s.a_dim, q.a_dim});
    QMatrix correction = -(s.gamma * e.u_block * inverse(q.beta));
    t.gamma = hstack(s.gamma, correction);
    return t;
}

// ---------------------------------------------------------------------------
// Class

namespace {

/** Block regime: u = beta_sub * preimage + residual, column by column. */
struct Reduction
{
    QMatrix residual;
    QMatrix preimage;
};

Reduction reduce_block(const ExtensionPresentation& e)
{
    Subspace im_beta = image_basis(e.sub.beta);
    Reduction red{QMatrix(e.u_block.rows(), e.u_block.cols()), QMatrix(e.sub.a_dim, e.u_block.cols())};
    for (std::size_t j = 0; j < e.u_block.cols(); ++j)
    {
        std::vector<Rational> u = e.u_block.col(j);
        std::vector<Rational> r = reduce_modulo(u, im_beta);
        std::vector<Rational> d(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
        {
            red.residual(i, j) = r[i];
            d[i] = u[i] - r[i];
        }
        std::optional<std::vector<Rational>> x = solve(e.sub.beta, d);
        if (!x)
            throw Error(ErrorKind::InvalidTotal, "reduction of u left im beta_sub");
        for (std::size_t i = 0; i < x->size(); ++i)
            red.preimage(i, j) = (*x)[i];
    }
    return red;
}

Rational first_nonzero(const std::vector<Rational>& v)
{
    for (const auto& x : v)
    {
        if (x != 0)
            return x;
    }
    return 0;
}

}   // namespace

ExtensionPresentation normalized_presentation(const ExtensionPresentation& e)
{
    if (e.regime() == Regime::Block)
    {
        QMatrix residual = reduce_block(e).residual;
        Rational v = first_nonzero(residual.entries());
        Rational s = v == 0 ? Rational(1) : v;
        return make_extension(e.sub, e.quot, Rational(1) / s * residual);
    }
    Rational v = first_nonzero(e.class_values);
    Rational s = v == 0 ? Rational(1) : v;
    std::vector<Rational> c = e.class_values;
    for (auto& x : c)
        x /= s;
    return make_extension(e.sub, e.quot, c);
}

ExtClass extension_class(const ExtensionPresentation& e)
{
    ExtClass c;
    std::size_t as = e.sub.a_dim, bs = e.sub.b_dim, aq = e.quot.a_dim, bq = e.quot.b_dim;
    QMatrix preimage(as, aq);
    if (e.regime() == Regime::Block)
    {
        Reduction red = reduce_block(e);
        c.residual = red.residual;
        preimage = red.preimage;
        c.rank = zz::rank(e.sub.gamma * e.u_block);
    }
    else
    {
        c.residual = QMatrix(1, e.class_values.size(), e.class_values);
        c.rank = all_zero(e.class_values) ? 0 : 1;
    }
    c.value = first_nonzero(c.residual.entries());
    c.normalized = c.value == 0 ? 0 : 1;
    c.normalizer = c.value == 0 ? Rational(1) : c.value;

    // T_A = [1, x; 0, s], T_B = [1, 0; 0, s] with beta_sub x = u - residual.
    const Rational& s = c.normalizer;
    c.witness.e_minus = QMatrix::identity(e.sub.e_minus);
    c.witness.e_zero = QMatrix::identity(e.sub.e_zero);
    c.witness.a_total = block_assemble({{{QMatrix::identity(as), preimage}, {std::nullopt, s * QMatrix::identity(aq)}}},
                                       {as, aq}, {as, aq});
    c.witness.b_total = direct_sum(QMatrix::identity(bs), s * QMatrix::identity(bq));
    if (!verify_ext_iso(e, normalized_presentation(e), c.witness))
        throw Error(ErrorKind::InvalidTotal, "normalization witness failed verification");
    return c;
}

// ---------------------------------------------------------------------------
// Isomorphism of presentations

std::optional<Rational> ExtIsoResult::quotient_scale() const
{
    if (!witness)
        return std::nullopt;
    const QMatrix& a = witness->a_total;
    if (a.rows() == 0)
        return std::nullopt;
    return a(a.rows() - 1, a.cols() - 1);
}

namespace {

/**
 * Dense linear system in the entries of several unknown matrices, built from
 * terms coef * L X R.
 */
class LinearSystem
{
  public:
    struct Var
    {
        std::size_t offset, rows, cols;
    };

    Var add_unknown(std::size_t rows, std::size_t cols)
    {
        Var v{unknowns_, rows, cols};
        unknowns_ += rows * cols;
        return v;
    }

    /** Begin a block of rows*cols scalar equations; returns its first row. */
    std::size_t add_equations(std::size_t rows, std::size_t cols)
    {
        std::size_t first = eqs_.size();
        for (std::size_t k = 0; k < rows * cols; ++k)
            eqs_.push_back({});
        rhs_.resize(eqs_.size());
        return first;
    }

    /** Add coef * L X R to the equation block starting at `first`. */
    void add_term(std::size_t first, const QMatrix& l, Var x, const QMatrix& r, const Rational& coef)
    {
        std::size_t cols = r.cols();
        for (std::size_t i = 0; i < l.rows(); ++i)
        {
            for (std::size_t p = 0; p < x.rows; ++p)
            {
                if (l(i, p) == 0)
                    continue;
                for (std::size_t q = 0; q < x.cols; ++q)
                {
                    for (std::size_t j = 0; j < cols; ++j)
                    {
                        if (r(q, j) == 0)
                            continue;
                        auto& row = eqs_[first + i * cols + j];
                        row.emplace_back(x.offset + p * x.cols + q, coef * l(i, p) * r(q, j));
                    }
                }
            }
        }
    }

    void set_rhs(std::size_t row, const Rational& value) { rhs_[row] = value; }

    void pin_zero(Var x, std::size_t p, std::size_t q)
    {
        std::size_t row = add_equations(1, 1);
        eqs_[row].emplace_back(x.offset + p * x.cols + q, Rational(1));
    }

    QMatrix matrix() const
    {
        QMatrix m(eqs_.size(), unknowns_);
        for (std::size_t i = 0; i < eqs_.size(); ++i)
        {
            for (const auto& [col, val] : eqs_[i])
                m(i, col) += val;
        }
        return m;
    }

    const std::vector<Rational>& rhs() const { return rhs_; }
    std::size_t unknowns() const { return unknowns_; }

    static QMatrix extract(const std::vector<Rational>& x, Var v)
    {
        QMatrix m(v.rows, v.cols);
        for (std::size_t p = 0; p < v.rows; ++p)
        {
            for (std::size_t q = 0; q < v.cols; ++q)
                m(p, q) = x[v.offset + p * v.cols + q];
        }
        return m;
    }

  private:
    std::size_t unknowns_ = 0;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> eqs_;
    std::vector<Rational> rhs_;
};

bool same_shapes(const ZigZag& a, const ZigZag& b)
{
    return a.e_minus == b.e_minus && a.e_zero == b.e_zero && a.a_dim == b.a_dim && a.b_dim == b.b_dim;
}

void check_ext_bounds(const ExtensionPresentation& e, const char* which)
{
    std::size_t m = std::max(e.sub.max_dim(), e.quot.max_dim());
    if (m > kIsoSizeBound)
        throw Error(ErrorKind::SizeBound, std::string(which) + " has a space of dimension " +
                    std::to_string(m) + " > " + std::to_string(kIsoSizeBound));
}

/** rank of the class map, the complete invariant once sub and quotient match. */
std::size_t class_rank(const ExtensionPresentation& e)
{
    return extension_class(e).rank;
}

}   // namespace

bool verify_ext_iso(const ExtensionPresentation& e1, const ExtensionPresentation& e2, const ExtIsoWitness& w)
{
    ZigZag t1 = total_zigzag(e1);
    ZigZag t2 = total_zigzag(e2);
    if (!verify_iso(t1, t2, {w.e_minus, w.a_total, w.b_total, w.e_zero}))
        return false;
    std::size_t as = e1.sub.a_dim, bs = e1.sub.b_dim;
    // Block upper-triangular: the sub-object is carried into the sub-object.
    for (std::size_t i = as; i < w.a_total.rows(); ++i)
    {
        for (std::size_t j = 0; j < as; ++j)
        {
            if (w.a_total(i, j) != 0)
                return false;
        }
    }
    for (std::size_t i = bs; i < w.b_total.rows(); ++i)
    {
        for (std::size_t j = 0; j < bs; ++j)
        {
            if (w.b_total(i, j) != 0)
                return false;
        }
    }
    if (e1.regime() == Regime::Collapsed)
    {
        std::size_t aq = e1.quot.a_dim;
        QMatrix a_quot = w.a_total.block(as, as, aq, aq);
        QMatrix c1(1, aq, e1.class_values);
        QMatrix c2(1, aq, e2.class_values);
        if (!(c2 * a_quot == c1))
            return false;
    }
    return true;
}

ExtIsoResult ext_isomorphic(const ExtensionPresentation& e1, const ExtensionPresentation& e2)
{
    check_ext_bounds(e1, "first presentation");
    check_ext_bounds(e2, "second presentation");
    if (!same_shapes(e1.sub, e2.sub) || !same_shapes(e1.quot, e2.quot))
        return {false, std::nullopt, "sub-object or quotient shapes differ"};
    if (e1.sub.open_label != e2.sub.open_label)
        return {false, std::nullopt, "open labels differ"};

    ZigZag t1 = total_zigzag(e1);
    ZigZag t2 = total_zigzag(e2);
    std::size_t em = t1.e_minus, ez = t1.e_zero, at = t1.a_dim, bt = t1.b_dim;
    std::size_t as = e1.sub.a_dim, bs = e1.sub.b_dim, aq = e1.quot.a_dim;

    LinearSystem sys;
    auto phi_m = sys.add_unknown(em, em);
    auto ta = sys.add_unknown(at, at);
    auto tb = sys.add_unknown(bt, bt);
    auto phi_0 = sys.add_unknown(ez, ez);

    // T_A alpha1 = alpha2 phi_-
    std::size_t r = sys.add_equations(at, em);
    sys.add_term(r, QMatrix::identity(at), ta, t1.alpha, 1);
    sys.add_term(r, t2.alpha, phi_m, QMatrix::identity(em), -1);
    // T_B beta1 = beta2 T_A
    r = sys.add_equations(bt, at);
    sys.add_term(r, QMatrix::identity(bt), tb, t1.beta, 1);
    sys.add_term(r, t2.beta, ta, QMatrix::identity(at), -1);
    // phi_0 gamma1 = gamma2 T_B
    r = sys.add_equations(ez, bt);
    sys.add_term(r, QMatrix::identity(ez), phi_0, t1.gamma, 1);
    sys.add_term(r, t2.gamma, tb, QMatrix::identity(bt), -1);
    // Block upper-triangular.
    for (std::size_t i = as; i < at; ++i)
        for (std::size_t j = 0; j < as; ++j)
            sys.pin_zero(ta, i, j);
    for (std::size_t i = bs; i < bt; ++i)
        for (std::size_t j = 0; j < bs; ++j)
            sys.pin_zero(tb, i, j);
    // Collapsed regime: c2 * a_quot = c1.
    if (e1.regime() == Regime::Collapsed && aq > 0)
    {
        QMatrix c2(1, at);
        for (std::size_t p = 0; p < aq; ++p)
            c2(0, as + p) = e2.class_values[p];
        QMatrix select(at, aq);
        for (std::size_t p = 0; p < aq; ++p)
            select(as + p, p) = 1;
        r = sys.add_equations(1, aq);
        sys.add_term(r, c2, ta, select, 1);
        for (std::size_t p = 0; p < aq; ++p)
            sys.set_rhs(r + p, e1.class_values[p]);
    }

    QMatrix m = sys.matrix();
    auto particular = solve(m, sys.rhs());
    if (!particular)
        return {false, std::nullopt, "no intertwiner satisfies the class constraint (linear system inconsistent)"};
    Subspace homogeneous = kernel_basis(m);

    // A diagonal block whose every generator maps into one proper subspace is
    // singular on the whole intertwiner space.
    struct Block
    {
        const char* name;
        LinearSystem::Var var;
        std::size_t r0, c0, n;
    };
    std::vector<Block> blocks = {{"phi_-", phi_m, 0, 0, em},  {"a_sub", ta, 0, 0, as},
                                 {"a_quot", ta, as, as, aq},   {"b_sub", tb, 0, 0, bs},
                                 {"b_quot", tb, bs, bs, bt - bs}, {"phi_0", phi_0, 0, 0, ez}};
    for (const auto& b : blocks)
    {
        if (b.n == 0)
            continue;
        QMatrix gens = LinearSystem::extract(*particular, b.var).block(b.r0, b.c0, b.n, b.n);
        for (std::size_t k = 0; k < homogeneous.dim(); ++k)
            gens = hstack(gens, LinearSystem::extract(homogeneous.basis().col(k), b.var).block(b.r0, b.c0, b.n, b.n));
        std::size_t reach = zz::rank(gens);
        if (reach < b.n)
            return {false, std::nullopt,
                    std::string("block ") + b.name + " is singular on the entire intertwiner space (images span dim " +
                        std::to_string(reach) + " < " + std::to_string(b.n) + ")"};
    }

    // Complete invariant: sub, quotient and the rank of the class map.
    IsoResult sub_iso = is_isomorphic(e1.sub, e2.sub);
    if (!sub_iso)
        return {false, std::nullopt, "sub-objects not isomorphic: " + sub_iso.reason};
    IsoResult quot_iso = is_isomorphic(e1.quot, e2.quot);
    if (!quot_iso)
        return {false, std::nullopt, "quotients not isomorphic: " + quot_iso.reason};
    std::size_t r1 = class_rank(e1), r2 = class_rank(e2);
    if (r1 != r2)
        return {false, std::nullopt, "class ranks differ: " + std::to_string(r1) + " vs " + std::to_string(r2)};

    // Seeded search over integer combinations of the homogeneous generators.
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<int> coeff(-9, 9);
    constexpr int kTrials = 256;
    for (int trial = 0; trial < kTrials; ++trial)
    {
        std::vector<Rational> x = *particular;
        if (trial > 0 || homogeneous.dim() > 0)
        {
            for (std::size_t k = 0; k < homogeneous.dim(); ++k)
            {
                Rational t = trial == 0 ? Rational(1) : Rational(coeff(rng));
                if (t == 0)
                    continue;
                for (std::size_t i = 0; i < x.size(); ++i)
                    x[i] += t * homogeneous.basis()(i, k);
            }
        }
        ExtIsoWitness w{LinearSystem::extract(x, phi_m), LinearSystem::extract(x, ta),
                        LinearSystem::extract(x, tb), LinearSystem::extract(x, phi_0)};
        if (is_invertible(w.e_minus) && is_invertible(w.a_total) && is_invertible(w.b_total) &&
            is_invertible(w.e_zero) && verify_ext_iso(e1, e2, w))
            return {true, std::move(w), "witness found at trial " + std::to_string(trial) + " in a " +
                                            std::to_string(homogeneous.dim()) + "-parameter intertwiner space"};
    }
    throw Error(ErrorKind::WitnessSearchExhausted,
                "invariants agree but no invertible intertwiner found in " + std::to_string(kTrials) + " trials");
}

// ---------------------------------------------------------------------------
// Duality

ExtensionPresentation dual_presentation(const ExtensionPresentation& e)
{
    if (e.regime() != Regime::Collapsed)
        throw Error(ErrorKind::RegimeMismatch, "dual presentations are defined for the collapsed regime only");
    return make_extension(dualize(e.sub), dualize(e.quot), e.class_values);
}

SelfDuality check_self_duality(const ExtensionPresentation& e)
{
    ZigZag t = total_zigzag(e);
    IsoResult zz_iso = is_isomorphic(dualize(t), t);
    if (!zz_iso)
        return {false, "dual total zig-zag is not isomorphic: " + zz_iso.reason};
    ExtIsoResult ext_iso = ext_isomorphic(e, dual_presentation(e));
    if (!ext_iso)
        return {false, "dual presentation carries a different class: " + ext_iso.certificate};
    return {true, "total zig-zag and class both preserved"};
}

// ---------------------------------------------------------------------------
// Classification

std::vector<Rational> default_class_grid()
{
    return {Rational(0), Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2), Rational(-1, 3)};
}

Classification classify_selfdual_rank_one(std::size_t e_minus, std::size_t e_zero,
                                          const std::vector<Rational>& grid, const std::string& open_label)
{
    ZigZag ic = std_ic(open_label, e_minus, e_zero);
    ZigZag sky = std_skyscraper(1);
    std::vector<ExtensionPresentation> pres;
    for (const auto& c : grid)
        pres.push_back(make_extension(ic, sky, c));

    Classification out;
    std::vector<std::size_t> class_of(grid.size(), grid.size());
    std::vector<std::size_t> leaders;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        for (std::size_t j = i + 1; j < grid.size(); ++j)
        {
            ExtIsoResult v = ext_isomorphic(pres[i], pres[j]);
            out.verdicts.push_back({grid[i], grid[j], v.isomorphic, v.certificate});
        }
    }
    auto verdict = [&](std::size_t i, std::size_t j) {
        if (i == j)
            return true;
        std::size_t a = std::min(i, j), b = std::max(i, j);
        // Index of pair (a, b) in the upper-triangular enumeration.
        std::size_t n = grid.size();
        std::size_t idx = a * n - a * (a + 1) / 2 + (b - a - 1);
        return out.verdicts[idx].isomorphic;
    };
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        for (std::size_t k = 0; k < leaders.size(); ++k)
        {
            if (verdict(leaders[k], i))
            {
                class_of[i] = k;
                break;
            }
        }
        if (class_of[i] == grid.size())
        {
            class_of[i] = leaders.size();
            leaders.push_back(i);
        }
    }
    out.isomorphism_classes = leaders.size();

    for (std::size_t k = 0; k < leaders.size(); ++k)
    {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (class_of[i] == k)
                members.push_back(i);
        std::size_t rep = members.front();
        for (auto i : members)
        {
            ExtClass c = extension_class(pres[i]);
            if (c.value == c.normalized)
            {
                rep = i;
                break;
            }
        }
        bool self_dual = true;
        for (auto i : members)
            self_dual = self_dual && check_self_duality(pres[i]).self_dual;
        if (!self_dual)
            continue;

        ClassRepresentative cr;
        cr.class_value = grid[rep];
        cr.ext_class = extension_class(pres[rep]);
        cr.presentation = pres[rep];
        for (auto i : members)
            cr.members.push_back(grid[i]);
        cr.self_dual = true;
        out.classes.push_back(std::move(cr));
    }
    std::size_t non_split = 0;
    for (const auto& c : out.classes)
        non_split += c.ext_class.split() ? 0 : 1;
    if (non_split == 1)
    {
        for (auto& c : out.classes)
            c.corrected = !c.ext_class.split();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rendering

nlohmann::json to_json(const ExtensionPresentation& e)
{
    return {{"sub", to_json(e.sub)},
            {"quot", to_json(e.quot)},
            {"u", to_json(e.u_block)},
            {"class", to_json(e.class_values)},
            {"regime", e.regime() == Regime::Block ? "block" : "collapsed"}};
}

nlohmann::json to_json(const ExtClass& c)
{
    return {{"value", to_json(c.value)},
            {"normalized", to_json(c.normalized)},
            {"residual", to_json(c.residual)},
            {"rank", c.rank},
            {"normalizer", to_json(c.normalizer)},
            {"split", c.split()}};
}

}   // namespace zz

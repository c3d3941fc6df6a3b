#include "zz/zigzag.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include "zz/error.hpp"
#include "zz/json_util.hpp"

namespace zz {

namespace {

std::string shape_of(const QMatrix& m)
{
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}   // namespace

std::size_t ZigZag::max_dim() const
{
    return std::max({e_minus, e_zero, a_dim, b_dim});
}

// ---------------------------------------------------------------------------
// Validation

Report validate(const ZigZag& z)
{
    Report r;
    auto shape_check = [&](const char* name, const QMatrix& m, std::size_t rows, std::size_t cols) {
        bool ok = m.rows() == rows && m.cols() == cols;
        r.add(std::string("shape ") + name, ok,
              ok ? "" : "is " + shape_of(m) + ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
        return ok;
    };
    bool ok = shape_check("alpha", z.alpha, z.a_dim, z.e_minus);
    ok = shape_check("beta", z.beta, z.b_dim, z.a_dim) && ok;
    ok = shape_check("gamma", z.gamma, z.e_zero, z.b_dim) && ok;

    if (z.has_zero_open_part())
        r.add("zero open part", z.e_minus == 0 && z.e_zero == 0,
              z.e_minus == 0 && z.e_zero == 0 ? "" : "open label 0 requires zero boundary");
    if (!ok)
        return r;

    std::size_t im_alpha = rank(z.alpha);
    std::size_t ker_beta = z.a_dim - rank(z.beta);
    bool exact_a = is_exact_at(z.alpha, z.beta);
    r.add("exact at A", exact_a,
          exact_a ? "" : "dim im alpha = " + std::to_string(im_alpha) + ", dim ker beta = " + std::to_string(ker_beta));

    std::size_t im_beta = rank(z.beta);
    std::size_t ker_gamma = z.b_dim - rank(z.gamma);
    bool exact_b = is_exact_at(z.beta, z.gamma);
    r.add("exact at B", exact_b,
          exact_b ? "" : "dim im beta = " + std::to_string(im_beta) + ", dim ker gamma = " + std::to_string(ker_gamma));
    return r;
}

bool is_valid(const ZigZag& z)
{
    return validate(z).passed();
}

CompressedShape compressed_shape(const ZigZag& z)
{
    return {z.open_label, z.e_minus, z.e_zero, z.a_dim, z.b_dim, rank(z.alpha), rank(z.beta), rank(z.gamma)};
}

std::string to_string(const CompressedShape& s)
{
    std::ostringstream out;
    out << '(' << s.open_label << "; " << s.e_minus << ',' << s.e_zero << ',' << s.a_dim << ',' << s.b_dim
        << "; ranks " << s.rank_alpha << ',' << s.rank_beta << ',' << s.rank_gamma << ')';
    return out.str();
}

// ---------------------------------------------------------------------------
// Standard objects

ZigZag std_ic(const std::string& open_label, std::size_t e_minus, std::size_t e_zero)
{
    return {open_label, e_minus, e_zero, 0, 0, QMatrix(0, e_minus), QMatrix(0, 0), QMatrix(e_zero, 0)};
}

ZigZag std_skyscraper(std::size_t r)
{
    if (r == 0)
        throw Error(ErrorKind::ZeroRank, "a skyscraper needs rank at least 1");
    return {kZeroLabel, 0, 0, r, r, QMatrix(r, 0), QMatrix::identity(r), QMatrix(0, r)};
}

ZigZag std_corrected(const std::string& open_label, std::size_t e_minus, std::size_t e_zero)
{
    return {open_label, e_minus, e_zero, 1, 1, QMatrix(1, e_minus), QMatrix::identity(1), QMatrix(e_zero, 1)};
}

ZigZag zero_zigzag()
{
    return {kZeroLabel, 0, 0, 0, 0, QMatrix(), QMatrix(), QMatrix()};
}

std::string sum_label(const std::string& a, const std::string& b)
{
    if (a == kZeroLabel)
        return b;
    if (b == kZeroLabel)
        return a;
    return a + "+" + b;
}

ZigZag direct_sum(const ZigZag& a, const ZigZag& b)
{
    return {sum_label(a.open_label, b.open_label),
            a.e_minus + b.e_minus,
            a.e_zero + b.e_zero,
            a.a_dim + b.a_dim,
            a.b_dim + b.b_dim,
            direct_sum(a.alpha, b.alpha),
            direct_sum(a.beta, b.beta),
            direct_sum(a.gamma, b.gamma)};
}

ZigZag dualize(const ZigZag& z)
{
    return {z.open_label, z.e_zero, z.e_minus, z.b_dim, z.a_dim,
            z.gamma.transpose(), z.beta.transpose(), z.alpha.transpose()};
}

// ---------------------------------------------------------------------------
// Isomorphism

bool verify_iso(const ZigZag& z1, const ZigZag& z2, const ZigZagIso& w)
{
    if (z1.open_label != z2.open_label)
        return false;
    if (!is_invertible(w.e_minus) || !is_invertible(w.a) || !is_invertible(w.b) || !is_invertible(w.e_zero))
        return false;
    if (w.e_minus.rows() != z2.e_minus || w.e_minus.cols() != z1.e_minus || w.a.rows() != z2.a_dim ||
        w.a.cols() != z1.a_dim || w.b.rows() != z2.b_dim || w.b.cols() != z1.b_dim ||
        w.e_zero.rows() != z2.e_zero || w.e_zero.cols() != z1.e_zero)
        return false;
    return w.a * z1.alpha == z2.alpha * w.e_minus && w.b * z1.beta == z2.beta * w.a &&
           w.e_zero * z1.gamma == z2.gamma * w.b;
}

namespace {

/** Columns [first..] of m, i.e. the tail of an extended basis. */
QMatrix tail_columns(const QMatrix& m, std::size_t first)
{
    return m.block(0, first, m.rows(), m.cols() - first);
}

/** A basis of the complement of s obtained by extending with standard vectors. */
QMatrix complement(const Subspace& s)
{
    return tail_columns(extend_to_basis(s), s.dim());
}

/**
 * Adapted bases in which an exact zig-zag takes its normal form:
 *   E- = [c | ker alpha],  A = [alpha c | a'],  B = [beta a' | b'],  E0 = [gamma b' | rest].
 */
struct NormalBases
{
    QMatrix e_minus, a, b, e_zero;
};

NormalBases normal_bases(const ZigZag& z)
{
    Subspace ker_alpha = kernel_basis(z.alpha);
    QMatrix c = complement(ker_alpha);
    QMatrix alpha_c = z.alpha * c;
    QMatrix a_rest = complement(Subspace::span(alpha_c));
    QMatrix beta_a = z.beta * a_rest;
    QMatrix b_rest = complement(Subspace::span(beta_a));
    QMatrix gamma_b = z.gamma * b_rest;
    QMatrix e0_rest = complement(Subspace::span(gamma_b));
    return {hstack(c, ker_alpha.basis()), hstack(alpha_c, a_rest), hstack(beta_a, b_rest),
            hstack(gamma_b, e0_rest)};
}

void check_bounds(const ZigZag& z, const char* which)
{
    if (z.max_dim() > kIsoSizeBound)
        throw Error(ErrorKind::SizeBound, std::string(which) + " has a space of dimension " +
                    std::to_string(z.max_dim()) + " > " + std::to_string(kIsoSizeBound));
    Report r = validate(z);
    if (!r.passed())
        throw Error(ErrorKind::NotExact, std::string(which) + " is not a valid zig-zag: " +
                    r.failures().front().name + " " + r.failures().front().detail);
}

IsoResult boundary_free(const ZigZag& z1, const ZigZag& z2)
{
    // Exactness kills the composites, so dimensions and the three ranks are
    // a complete invariant of an exact linear zig-zag.
    CompressedShape s1 = compressed_shape(z1);
    CompressedShape s2 = compressed_shape(z2);
    if (!(s1 == s2))
        return {false, std::nullopt, "compressed shapes differ: " + to_string(s1) + " vs " + to_string(s2)};

    NormalBases p = normal_bases(z1);
    NormalBases q = normal_bases(z2);
    ZigZagIso w{q.e_minus * inverse(p.e_minus), q.a * inverse(p.a), q.b * inverse(p.b),
                q.e_zero * inverse(p.e_zero)};
    return {true, std::move(w), "normal forms agree"};
}

IsoResult boundary_fixed(const ZigZag& z1, const ZigZag& z2)
{
    if (z1.e_minus != z2.e_minus || z1.e_zero != z2.e_zero || z1.a_dim != z2.a_dim || z1.b_dim != z2.b_dim)
        return {false, std::nullopt, "dimensions differ"};
    Subspace ker1 = kernel_basis(z1.alpha);
    if (!subspace_equal(ker1, kernel_basis(z2.alpha)))
        return {false, std::nullopt, "ker alpha differs inside the fixed boundary E-"};
    if (!subspace_equal(image_basis(z1.gamma), image_basis(z2.gamma)))
        return {false, std::nullopt, "im gamma differs inside the fixed boundary E0"};

    // a: alpha c -> alpha' c on im alpha, complement a_j -> a'_j.
    QMatrix c = complement(ker1);
    QMatrix a1 = complement(Subspace::span(z1.alpha * c));
    QMatrix a2 = complement(Subspace::span(z2.alpha * c));
    QMatrix pa1 = hstack(z1.alpha * c, a1);
    QMatrix pa2 = hstack(z2.alpha * c, a2);

    // b: beta a_j -> beta' a'_j on im beta; on the complement b = (gamma'|C')^-1 gamma.
    QMatrix beta_a1 = z1.beta * a1;
    QMatrix beta_a2 = z2.beta * a2;
    QMatrix b1 = complement(Subspace::span(beta_a1));
    QMatrix b2 = complement(Subspace::span(beta_a2));
    QMatrix gamma_b2 = z2.gamma * b2;
    QMatrix target(z2.b_dim, b1.cols());
    for (std::size_t k = 0; k < b1.cols(); ++k)
    {
        auto y = solve(gamma_b2, z1.gamma * b1.col(k));
        if (!y)
            throw Error(ErrorKind::NotExact, "image of gamma not reachable from the complement of im beta");
        std::vector<Rational> col = b2 * *y;
        for (std::size_t i = 0; i < col.size(); ++i)
            target(i, k) = col[i];
    }
    QMatrix pb1 = hstack(beta_a1, b1);
    QMatrix pb2 = hstack(beta_a2, target);

    ZigZagIso w{QMatrix::identity(z1.e_minus), pa2 * inverse(pa1), pb2 * inverse(pb1),
                QMatrix::identity(z1.e_zero)};
    return {true, std::move(w), "boundary-fixed normal forms agree"};
}

}   // namespace

IsoResult is_isomorphic(const ZigZag& z1, const ZigZag& z2, IsoMode mode)
{
    check_bounds(z1, "first zig-zag");
    check_bounds(z2, "second zig-zag");
    if (z1.open_label != z2.open_label)
        return {false, std::nullopt, "open labels differ: " + z1.open_label + " vs " + z2.open_label};

    IsoResult result = mode == IsoMode::BoundaryFree ? boundary_free(z1, z2) : boundary_fixed(z1, z2);
    if (result.isomorphic && !verify_iso(z1, z2, *result.witness))
        throw Error(ErrorKind::WitnessSearchExhausted, "constructed isomorphism failed verification");
    return result;
}

// ---------------------------------------------------------------------------
// Multi-node

ZigZag MultiZigZag::total() const
{
    ZigZag z{open_label, e_minus, e_zero, 0, 0, QMatrix(0, e_minus), QMatrix(0, 0), QMatrix(e_zero, 0)};
    for (const auto& n : nodes)
    {
        if (n.alpha.rows() != n.a_dim || n.alpha.cols() != e_minus || n.beta.rows() != n.b_dim ||
            n.beta.cols() != n.a_dim || n.gamma.rows() != e_zero || n.gamma.cols() != n.b_dim)
            throw Error(ErrorKind::ShapeMismatch, "point term " + n.label + " does not fit the shared boundary");
        z.a_dim += n.a_dim;
        z.b_dim += n.b_dim;
        z.alpha = vstack(z.alpha, n.alpha);
        z.beta = direct_sum(z.beta, n.beta);
        z.gamma = hstack(z.gamma, n.gamma);
    }
    return z;
}

MultiZigZag multi_node_skyscrapers(const std::vector<std::string>& labels)
{
    std::set<std::string> seen;
    MultiZigZag m;
    for (const auto& label : labels)
    {
        if (!seen.insert(label).second)
            throw Error(ErrorKind::DuplicateNode, "node " + label + " listed twice");
        m.nodes.push_back({label, 1, 1, QMatrix(1, 0), QMatrix::identity(1), QMatrix(0, 1)});
    }
    return m;
}

// ---------------------------------------------------------------------------
// Rendering

nlohmann::json to_json(const ZigZag& z)
{
    return {{"open", z.open_label},   {"eminus", z.e_minus},       {"ezero", z.e_zero},
            {"A", z.a_dim},           {"B", z.b_dim},              {"alpha", to_json(z.alpha)},
            {"beta", to_json(z.beta)}, {"gamma", to_json(z.gamma)}};
}

std::string to_text(const ZigZag& z)
{
    std::ostringstream out;
    out << '(' << z.open_label << "; E-=" << z.e_minus << ", A=" << z.a_dim << ", B=" << z.b_dim
        << ", E0=" << z.e_zero << "; alpha=" << to_string(z.alpha) << ", beta=" << to_string(z.beta)
        << ", gamma=" << to_string(z.gamma) << ')';
    return out.str();
}

}   // namespace zz

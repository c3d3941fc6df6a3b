#ifndef ZZ_TEST_SUPPORT_HPP
#define ZZ_TEST_SUPPORT_HPP

// Shared helpers for the test binaries: seeded generators and oracles that
// deliberately avoid the engine's own elimination code.

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>
#include "zz/assembly.hpp"
#include "zz/extension.hpp"
#include "zz/matrix.hpp"
#include "zz/zigzag.hpp"

namespace zz::test {

using Rng = std::mt19937_64;

inline Rational small_rational(Rng& rng, int span = 3)
{
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, 3);
    return Rational(num(rng), den(rng));
}

inline QMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int span = 3)
{
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
    {
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = small_rational(rng, span);
    }
    return m;
}

/** Cofactor expansion along the first row; only for small sizes. */
inline Rational oracle_det(const QMatrix& m)
{
    std::size_t n = m.rows();
    if (n == 0)
        return 1;
    if (n == 1)
        return m(0, 0);
    Rational total = 0;
    for (std::size_t j = 0; j < n; ++j)
    {
        if (m(0, j) == 0)
            continue;
        QMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
        {
            for (std::size_t k = 0, c = 0; k < n; ++k)
            {
                if (k != j)
                    minor(i - 1, c++) = m(i, k);
            }
        }
        Rational term = m(0, j) * oracle_det(minor);
        total += j % 2 == 0 ? term : Rational(-term);
    }
    return total;
}

/** Rank as the size of the largest nonvanishing minor. */
inline std::size_t oracle_rank(const QMatrix& m)
{
    std::size_t best = 0;
    std::size_t limit = std::min(m.rows(), m.cols());
    for (std::size_t k = 1; k <= limit; ++k)
    {
        std::vector<bool> rsel(m.rows(), false), csel(m.cols(), false);
        std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
        bool found = false;
        do
        {
            std::fill(csel.begin(), csel.end(), false);
            std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
            do
            {
                QMatrix sub(k, k);
                for (std::size_t i = 0, a = 0; i < m.rows(); ++i)
                {
                    if (!rsel[i])
                        continue;
                    for (std::size_t j = 0, b = 0; j < m.cols(); ++j)
                    {
                        if (csel[j])
                            sub(a, b++) = m(i, j);
                    }
                    ++a;
                }
                found = oracle_det(sub) != 0;
            } while (!found && std::prev_permutation(csel.begin(), csel.end()));
        } while (!found && std::prev_permutation(rsel.begin(), rsel.end()));
        if (!found)
            break;
        best = k;
    }
    return best;
}

inline QMatrix random_invertible(Rng& rng, std::size_t n)
{
    for (;;)
    {
        QMatrix g = random_matrix(rng, n, n, 2);
        if (oracle_det(g) != 0)
            return g;
    }
}

/** Adjugate over determinant; independent of the engine's inverse. */
inline QMatrix oracle_inverse(const QMatrix& m)
{
    std::size_t n = m.rows();
    Rational d = oracle_det(m);
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            QMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, a = 0; r < n; ++r)
            {
                if (r == j)
                    continue;
                for (std::size_t c = 0, b = 0; c < n; ++c)
                {
                    if (c != i)
                        minor(a, b++) = m(r, c);
                }
                ++a;
            }
            Rational cof = oracle_det(minor);
            inv(i, j) = ((i + j) % 2 == 0 ? cof : Rational(-cof)) / d;
        }
    }
    return inv;
}

/** 0/1 matrix with ones at (row0 + k, col0 + k) for k < count. */
inline QMatrix partial_identity(std::size_t rows, std::size_t cols, std::size_t row0, std::size_t col0,
                                std::size_t count)
{
    QMatrix m(rows, cols);
    for (std::size_t k = 0; k < count; ++k)
        m(row0 + k, col0 + k) = 1;
    return m;
}

/**
 * A valid zig-zag with every dimension at most `max_dim`: a normal form with
 * chosen ranks, moved by random automorphisms of all four spaces.
 */
inline ZigZag random_valid_zigzag(Rng& rng, std::size_t max_dim)
{
    std::uniform_int_distribution<std::size_t> pick(0, max_dim);
    for (;;)
    {
        std::size_t em = pick(rng), ez = pick(rng);
        std::size_t ra = std::uniform_int_distribution<std::size_t>(0, em)(rng);
        std::size_t rg = std::uniform_int_distribution<std::size_t>(0, ez)(rng);
        std::size_t rb = pick(rng);
        std::size_t a = ra + rb, b = rb + rg;
        if (a > max_dim || b > max_dim)
            continue;
        ZigZag z;
        bool zero_open = em == 0 && ez == 0 && std::bernoulli_distribution(0.5)(rng);
        z.open_label = zero_open ? kZeroLabel : "Q_U[3]";
        z.e_minus = em;
        z.e_zero = ez;
        z.a_dim = a;
        z.b_dim = b;
        QMatrix gm = random_invertible(rng, em), ga = random_invertible(rng, a);
        QMatrix gb = random_invertible(rng, b), g0 = random_invertible(rng, ez);
        z.alpha = ga * partial_identity(a, em, 0, 0, ra) * oracle_inverse(gm);
        z.beta = gb * partial_identity(b, a, 0, ra, rb) * oracle_inverse(ga);
        z.gamma = g0 * partial_identity(ez, b, 0, rb, rg) * oracle_inverse(gb);
        return z;
    }
}

/** Intertwining and invertibility checked by hand, not via verify_iso. */
inline bool oracle_iso(const ZigZag& z1, const ZigZag& z2, const ZigZagIso& w)
{
    for (const QMatrix* m : {&w.e_minus, &w.a, &w.b, &w.e_zero})
    {
        if (!m->is_square() || oracle_det(*m) == 0)
            return false;
    }
    if (w.e_minus.rows() != z1.e_minus || w.a.rows() != z1.a_dim || w.b.rows() != z1.b_dim ||
        w.e_zero.rows() != z1.e_zero)
        return false;
    return w.a * z1.alpha == z2.alpha * w.e_minus && w.b * z1.beta == z2.beta * w.a &&
           w.e_zero * z1.gamma == z2.gamma * w.b;
}

/** Exactness at the middle of f then g from composite and rank counts. */
inline bool oracle_exact(const QMatrix& f, const QMatrix& g)
{
    return (g * f).is_zero() && oracle_rank(f) + oracle_rank(g) == f.rows();
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> fixture_names()
{
    return {"table1", "three_nodes", "reversed_nodes", "spaces_maps", "general", "gluing", "monodromy"};
}

inline std::string fixture(const std::string& stem)
{
    return std::string(ZZ_FIXTURES_DIR) + "/" + stem + ".zzl";
}

/** Random text drawn from a mix of grammar tokens and raw bytes. */
inline std::string fuzz_input(Rng& rng)
{
    static const std::vector<std::string> tokens = {
        "space", "map", "zigzag", "extension", "nodes", "gluing", "dim", "ext", "class", "u",
        "open", "eminus", "ezero", "A", "B", "alpha", "beta", "gamma", "psi", "v", "N", "blocks",
        "{", "}", "[", "]", "(", ")", ",", ";", ":", "=", "->", "-", "/", "0", "1", "2", "1/0",
        "-2/4", "99999999999999999999", "Q_U[3]", "\"q\"", "\"", "#", "\n", " ", "sky", "ic", "V"};
    std::uniform_int_distribution<int> len(0, 40);
    std::uniform_int_distribution<std::size_t> tok(0, tokens.size() - 1);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> mode(0, 9);
    std::string s;
    int n = len(rng);
    for (int i = 0; i < n; ++i)
    {
        if (mode(rng) == 0)
            s += static_cast<char>(byte(rng));
        else
            s += tokens[tok(rng)] + (mode(rng) < 6 ? " " : "");
    }
    return s;
}

/** All partitions of n into parts of size at most `max_part`, largest part first. */
inline std::vector<std::vector<std::size_t>> partitions(std::size_t n, std::size_t max_part)
{
    if (n == 0)
        return {{}};
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t p = std::min(n, max_part); p >= 1; --p)
    {
        for (auto rest : partitions(n - p, p))
        {
            rest.insert(rest.begin(), p);
            out.push_back(std::move(rest));
        }
    }
    return out;
}

/**
 * Nilpotent Jordan matrix: inside each block, column k maps to column k + 1,
 * so the first column of a block of size s generates a chain of length s.
 */
inline QMatrix jordan_nilpotent(const std::vector<std::size_t>& sizes)
{
    std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    QMatrix j(n, n);
    std::size_t start = 0;
    for (std::size_t s : sizes)
    {
        for (std::size_t k = 0; k + 1 < s; ++k)
            j(start + k + 1, start + k) = 1;
        start += s;
    }
    return j;
}

/**
 * Weight of every standard basis vector for `jordan_nilpotent(sizes)`: the
 * chain vector N^i v in a block of size s sits in weight center + s - 1 - 2i.
 */
inline std::vector<int> jordan_weights(const std::vector<std::size_t>& sizes, int center)
{
    std::vector<int> w;
    for (std::size_t s : sizes)
    {
        for (std::size_t i = 0; i < s; ++i)
            w.push_back(center + static_cast<int>(s) - 1 - 2 * static_cast<int>(i));
    }
    return w;
}

/** Span of the columns of `basis` whose weight is at most `weight`. */
inline QMatrix weight_columns(const QMatrix& basis, const std::vector<int>& weights, int weight)
{
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < weights.size(); ++k)
    {
        if (weights[k] <= weight)
            keep.push_back(k);
    }
    QMatrix m(basis.rows(), keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c)
    {
        for (std::size_t i = 0; i < basis.rows(); ++i)
            m(i, c) = basis(i, keep[c]);
    }
    return m;
}

/** Extension of the rank-one skyscraper by an IC term over boundary (1, 1). */
inline ExtensionPresentation odp(const Rational& c)
{
    return make_extension(std_ic("Q_U[3]", 1, 1), std_skyscraper(1), c);
}

/** Local datum at one ordinary double point with the given class. */
inline NodeDatum odp_node(const std::string& label, const Rational& c)
{
    return {label, odp(c), std::nullopt};
}

/** Node labels p1..pr with classes read from the low bits of `mask`. */
inline std::vector<NodeDatum> odp_nodes(std::size_t r, unsigned mask)
{
    std::vector<NodeDatum> nodes;
    for (std::size_t k = 0; k < r; ++k)
        nodes.push_back(odp_node("p" + std::to_string(k + 1), (mask >> k) & 1u));
    return nodes;
}

/**
 * Rank-one gluing blocks on consecutive ranges of Psi: u_k is a row with
 * every entry nonzero and v_k a column in its kernel with every entry nonzero
 * (range size >= 2), so u_k v_k = 0. Returns the blocks and the Psi dim,
 * which includes `inert` trailing coordinates.
 */
inline std::pair<std::vector<NodeGluing>, std::size_t> random_gluing(Rng& rng, std::size_t nodes,
                                                                       std::size_t inert = 0)
{
    std::uniform_int_distribution<std::size_t> size(2, 3);
    std::uniform_int_distribution<int> entry(1, 3);
    std::bernoulli_distribution sign(0.5);
    std::vector<NodeGluing> blocks;
    std::size_t begin = 0;
    for (std::size_t k = 0; k < nodes; ++k)
    {
        std::size_t m = size(rng);
        QMatrix u(1, m), v(m, 1);
        for (std::size_t j = 0; j < m; ++j)
            u(0, j) = sign(rng) ? entry(rng) : -entry(rng);
        // v = (w, x) with u . v = 0 and every entry nonzero.
        Rational partial = 0;
        for (std::size_t j = 0; j + 1 < m; ++j)
        {
            v(j, 0) = entry(rng);
            partial += u(0, j) * v(j, 0);
        }
        if (partial == 0)
        {
            v(0, 0) += 1;
            partial += u(0, 0);
        }
        v(m - 1, 0) = -partial / u(0, m - 1);
        blocks.push_back({{"n" + std::to_string(k + 1), begin, begin + m}, u, v});
        begin += m;
    }
    return {blocks, begin + inert};
}

}   // namespace zz::test

#endif

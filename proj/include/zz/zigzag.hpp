#ifndef ZZ_ZIGZAG_HPP
#define ZZ_ZIGZAG_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>
#include <nlohmann/json.hpp>
#include "zz/linalg.hpp"
#include "zz/report.hpp"

namespace zz {

/// Label of the zero open part.
inline constexpr const char* kZeroLabel = "0";
/// Largest space dimension accepted by the isomorphism tests.
inline constexpr std::size_t kIsoSizeBound = 6;

/**
 * A zig-zag at an isolated point:
 *
 *     E- --alpha--> A --beta--> B --gamma--> E0
 *
 * where L is the open part (an opaque label), E- and E0 are the boundary
 * spaces H^{-1} and H^0 of i^* Rj_* L, and A, B are the point terms. A
 * zig-zag is valid when it is exact at A and at B; `validate` reports
 * violations instead of throwing.
 */
struct ZigZag
{
    std::string open_label = kZeroLabel;
    std::size_t e_minus = 0;
    std::size_t e_zero = 0;
    std::size_t a_dim = 0;
    std::size_t b_dim = 0;
    QMatrix alpha;   // a_dim x e_minus
    QMatrix beta;    // b_dim x a_dim
    QMatrix gamma;   // e_zero x b_dim

    bool has_zero_open_part() const { return open_label == kZeroLabel; }
    std::size_t max_dim() const;

    friend bool operator==(const ZigZag&, const ZigZag&) = default;
};

/** Shapes plus exactness at A and B. */
Report validate(const ZigZag& z);
bool is_valid(const ZigZag& z);

/** Rank profile that forgets the maps. */
struct CompressedShape
{
    std::string open_label;
    std::size_t e_minus = 0, e_zero = 0, a_dim = 0, b_dim = 0;
    std::size_t rank_alpha = 0, rank_beta = 0, rank_gamma = 0;

    friend bool operator==(const CompressedShape&, const CompressedShape&) = default;
};

CompressedShape compressed_shape(const ZigZag& z);
std::string to_string(const CompressedShape& s);

/** (L, 0, 0, 0, 0, 0) over the given boundary. */
ZigZag std_ic(const std::string& open_label, std::size_t e_minus, std::size_t e_zero);
/** (0, Q^r, Q^r, 0, id, 0). Throws ZeroRank when r = 0. */
ZigZag std_skyscraper(std::size_t r);
/** (L, Q, Q, 0, id, 0) over the given boundary. */
ZigZag std_corrected(const std::string& open_label, std::size_t e_minus, std::size_t e_zero);
/** The zero object: label "0", every space zero. */
ZigZag zero_zigzag();

/** Open label of a direct sum; "0" is the unit. */
std::string sum_label(const std::string& a, const std::string& b);
/** Block-diagonal sum; boundary dimensions add. */
ZigZag direct_sum(const ZigZag& a, const ZigZag& b);

/**
 * Transpose-and-swap duality: (L, B*, A*, gamma^T, beta^T, alpha^T) with the
 * boundary roles exchanged. The open label is kept: every open part handled
 * here is treated as a self-dual local system.
 */
ZigZag dualize(const ZigZag& z);

/** Invertible maps on E-, A, B, E0. */
struct ZigZagIso
{
    QMatrix e_minus, a, b, e_zero;
};

/** True iff `w` is invertible and carries z1's maps onto z2's. */
bool verify_iso(const ZigZag& z1, const ZigZag& z2, const ZigZagIso& w);

enum class IsoMode
{
    /// Boundary spaces may move by arbitrary automorphisms.
    BoundaryFree,
    /// Boundary spaces are fixed pointwise.
    BoundaryFixed,
};

struct IsoResult
{
    bool isomorphic = false;
    std::optional<ZigZagIso> witness;
    std::string reason;

    explicit operator bool() const { return isomorphic; }
};

/**
 * Decide isomorphism of two valid zig-zags. Every positive answer carries a
 * verified witness; negative answers name the invariant that differs.
 * Throws SizeBound if any dimension exceeds 6 and NotExact on invalid input.
 */
IsoResult is_isomorphic(const ZigZag& z1, const ZigZag& z2, IsoMode mode = IsoMode::BoundaryFree);

/** One point term of a multi-node zig-zag. */
struct PointTerm
{
    std::string label;
    std::size_t a_dim = 0, b_dim = 0;
    QMatrix alpha, beta, gamma;

    friend bool operator==(const PointTerm&, const PointTerm&) = default;
};

/**
 * Finitely many point terms over one open part with shared boundary; the
 * total object stacks the point terms block-diagonally.
 */
struct MultiZigZag
{
    std::string open_label = kZeroLabel;
    std::size_t e_minus = 0, e_zero = 0;
    std::vector<PointTerm> nodes;

    ZigZag total() const;
    friend bool operator==(const MultiZigZag&, const MultiZigZag&) = default;
};

/** One rank-one skyscraper per label. Throws DuplicateNode on repeated labels. */
MultiZigZag multi_node_skyscrapers(const std::vector<std::string>& labels);

nlohmann::json to_json(const ZigZag& z);
std::string to_text(const ZigZag& z);

}   // namespace zz

#endif

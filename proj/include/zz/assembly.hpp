#ifndef ZZ_ASSEMBLY_HPP
#define ZZ_ASSEMBLY_HPP

#include <optional>
#include <string>
#include <vector>
#include "zz/extension.hpp"
#include "zz/monodromy.hpp"

namespace zz {

/// Vertex name reserved for the bulk sector.
inline constexpr const char* kBulkVertex = "bulk";

/** Local gluing maps at one node: u : Psi_k -> Q^r, v : Q^r -> Psi_k. */
struct GluingBlock
{
    QMatrix u;
    QMatrix v;
};

struct NodeDatum
{
    std::string label;
    ExtensionPresentation local;   // IC-type sub, rank-one skyscraper quotient
    std::optional<GluingBlock> gluing;
};

/**
 * One bulk label plus node-indexed local data, together with the global
 * shadow: the IC-type bulk term extended by one rank-one skyscraper per
 * node, in node order, with the per-node normalized classes.
 */
struct FiniteNodeDatum
{
    std::string bulk_label;
    std::string open_label;
    std::vector<NodeDatum> nodes;
    ExtensionPresentation shadow;

    std::vector<std::string> node_labels() const;
    /** The shadow quotient as labelled rank-one point terms. */
    MultiZigZag shadow_quotient() const;
};

/**
 * Combine local data over one bulk label. The bulk IC shadow has the common
 * open label of the local sub-objects and boundary dimensions summed over
 * the nodes. Throws DuplicateNode, NonRankOneQuotient, NotICType,
 * OpenLabelMismatch and NotNilpotent (for a local gluing block).
 */
FiniteNodeDatum assemble(const std::string& bulk_label, const std::string& open_label,
                         const std::vector<NodeDatum>& nodes);

const ExtensionPresentation& global_shadow(const FiniteNodeDatum& s);

/**
 * Rebuild the corrected extension over all nodes from the bulk IC term, the
 * node count and the per-node classes recomputed from the local data, and
 * compare it with the stored shadow component by component.
 */
Report verify_shadow_compat(const FiniteNodeDatum& s);

/** Coordinates [begin, end) of Psi owned by one node. */
struct NodeRange
{
    std::string label;
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    friend bool operator==(const NodeRange&, const NodeRange&) = default;
};

struct NodeGluing
{
    NodeRange range;
    QMatrix u;   // r_k x |range|
    QMatrix v;   // |range| x r_k
};

/**
 * Divisor-gluing shadow (Psi, M'', u, v) with N = v u. Coordinates of Psi
 * outside every node range form the inert remainder. `n` is stored so a
 * supplied N can be checked against v u.
 */
struct GluingQuadruple
{
    std::size_t psi_dim = 0;
    std::vector<NodeRange> decomposition;
    std::vector<std::size_t> m2_dims;
    QMatrix u;   // M'' x Psi
    QMatrix v;   // Psi x M''
    QMatrix n;   // Psi x Psi

    /** Row offset of node k inside M''. */
    std::size_t m2_offset(std::size_t k) const;
    NilpotentOperator nilpotent() const { return NilpotentOperator(n); }
};

/**
 * Place each node's (u_k, v_k) into global maps and derive N = v u. With
 * `expected_n`, that matrix is stored instead so `verify_gluing` compares it.
 * Throws ShapeMismatch and NotNilpotent (naming the node).
 */
GluingQuadruple assemble_gluing(const std::vector<NodeGluing>& blocks, std::size_t psi_dim,
                                const std::optional<QMatrix>& expected_n = std::nullopt);

/**
 * N = v u entrywise, N nilpotent, each node's M'' block rank one, and u, v
 * supported on the node ranges. Filtration compatibilities are reported as
 * not checked.
 */
Report verify_gluing(const GluingQuadruple& g);

nlohmann::json to_json(const FiniteNodeDatum& s);
nlohmann::json to_json(const GluingQuadruple& g);

}   // namespace zz

#endif

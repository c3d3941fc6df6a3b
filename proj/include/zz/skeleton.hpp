#ifndef ZZ_SKELETON_HPP
#define ZZ_SKELETON_HPP

#include <string>
#include <vector>
#include <nlohmann/json.hpp>
#include "zz/assembly.hpp"

namespace zz {

enum class EdgeTag
{
    Phi,   // node -> bulk
    Psi,   // bulk -> node
};

struct SkeletonEdge
{
    std::string from;
    std::string to;
    EdgeTag tag;
    std::size_t index;   // 1-based node position

    friend bool operator==(const SkeletonEdge&, const SkeletonEdge&) = default;
};

struct NodeAnnotation
{
    Rational normalized_class;
    std::size_t quotient_rank = 0;

    friend bool operator==(const NodeAnnotation&, const NodeAnnotation&) = default;
};

/** Star graph: the bulk vertex in the middle, one vertex per node. */
struct Skeleton
{
    std::string bulk_vertex = kBulkVertex;
    std::string bulk_label;
    std::vector<std::string> node_vertices;
    std::vector<SkeletonEdge> edges;
    std::vector<NodeAnnotation> annotations;   // parallel to node_vertices

    std::size_t vertex_count() const { return 1 + node_vertices.size(); }
    friend bool operator==(const Skeleton&, const Skeleton&) = default;
};

Skeleton skeleton_of(const FiniteNodeDatum& s);

std::string to_string(EdgeTag tag);
/** Deterministic digraph text: bulk first, then nodes; edges by node, Phi before Psi. */
std::string to_dot(const Skeleton& k);
nlohmann::json to_json(const Skeleton& k);

}   // namespace zz

#endif

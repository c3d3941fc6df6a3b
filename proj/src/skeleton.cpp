#include "zz/skeleton.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include "zz/json_util.hpp"

namespace zz {

namespace {

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + '"';
}

/** Bare identifiers and numerals stay unquoted; everything else is quoted. */
std::string dot_id(const std::string& s)
{
    auto ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    bool bare = !s.empty() && std::all_of(s.begin(), s.end(), ident) &&
                !std::isdigit(static_cast<unsigned char>(s.front()));
    bool numeral = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
    });
    return bare || numeral ? s : quoted(s);
}

}   // namespace

Skeleton skeleton_of(const FiniteNodeDatum& s)
{
    Skeleton k;
    k.bulk_label = s.bulk_label;
    for (std::size_t i = 0; i < s.nodes.size(); ++i)
    {
        const std::string& v = s.nodes[i].label;
        k.node_vertices.push_back(v);
        k.edges.push_back({v, k.bulk_vertex, EdgeTag::Phi, i + 1});
        k.edges.push_back({k.bulk_vertex, v, EdgeTag::Psi, i + 1});
        Rational c = i < s.shadow.class_values.size() ? s.shadow.class_values[i] : Rational(0);
        k.annotations.push_back({c, s.nodes[i].local.quot.a_dim});
    }
    return k;
}

std::string to_string(EdgeTag tag)
{
    return tag == EdgeTag::Phi ? "Phi" : "Psi";
}

std::string to_dot(const Skeleton& k)
{
    std::ostringstream out;
    out << "digraph skeleton {\n";
    out << "  " << dot_id(k.bulk_vertex) << " [label=" << quoted(k.bulk_label) << "];\n";
    for (std::size_t i = 0; i < k.node_vertices.size(); ++i)
    {
        const NodeAnnotation& a = k.annotations[i];
        out << "  " << dot_id(k.node_vertices[i]) << " [class=" << dot_id(to_string(a.normalized_class))
            << ", rank=" << a.quotient_rank << "];\n";
    }
    for (const auto& e : k.edges)
    {
        out << "  " << dot_id(e.from) << " -> " << dot_id(e.to) << " [label="
            << quoted(to_string(e.tag) + "_" + std::to_string(e.index)) << "];\n";
    }
    out << "}\n";
    return out.str();
}

nlohmann::json to_json(const Skeleton& k)
{
    nlohmann::json vertices = nlohmann::json::array();
    vertices.push_back({{"id", k.bulk_vertex}, {"kind", "bulk"}, {"label", k.bulk_label}});
    for (std::size_t i = 0; i < k.node_vertices.size(); ++i)
    {
        vertices.push_back({{"id", k.node_vertices[i]},
                            {"kind", "node"},
                            {"class", to_json(k.annotations[i].normalized_class)},
                            {"rank", k.annotations[i].quotient_rank}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : k.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"tag", to_string(e.tag)}, {"index", e.index}});
    return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

}   // namespace zz

#include "zz/assembly.hpp"

#include <set>
#include "zz/error.hpp"
#include "zz/json_util.hpp"

namespace zz {

namespace {

constexpr const char* kFiltrationNotice =
    "filtrations: not checked (weight and Hodge compatibilities of the gluing data are outside this engine)";
constexpr const char* kTwistNotice = "display: Tate twists are suppressed at the rational level";

bool is_ic_type(const ZigZag& z)
{
    return z.a_dim == 0 && z.b_dim == 0;
}

ExtensionPresentation build_shadow(const std::string& open_label, std::size_t e_minus, std::size_t e_zero,
                                   const std::vector<Rational>& classes)
{
    ZigZag quot = classes.empty() ? zero_zigzag() : std_skyscraper(classes.size());
    return make_extension(std_ic(open_label, e_minus, e_zero), quot, classes);
}

std::string join_values(const std::vector<Rational>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

}   // namespace

std::vector<std::string> FiniteNodeDatum::node_labels() const
{
    std::vector<std::string> out;
    for (const auto& n : nodes)
        out.push_back(n.label);
    return out;
}

MultiZigZag FiniteNodeDatum::shadow_quotient() const
{
    return multi_node_skyscrapers(node_labels());
}

FiniteNodeDatum assemble(const std::string& bulk_label, const std::string& open_label,
                         const std::vector<NodeDatum>& nodes)
{
    std::set<std::string> seen;
    std::size_t e_minus = 0, e_zero = 0;
    std::vector<Rational> classes;
    for (const auto& n : nodes)
    {
        if (n.label == kBulkVertex)
            throw Error(ErrorKind::DuplicateNode, "node label '" + n.label + "' is reserved for the bulk vertex");
        if (!seen.insert(n.label).second)
            throw Error(ErrorKind::DuplicateNode, "node " + n.label + " listed twice");
        if (n.local.quot.a_dim != 1 || n.local.quot.b_dim != 1)
            throw Error(ErrorKind::NonRankOneQuotient, "node " + n.label + " has a quotient of dims (" +
                        std::to_string(n.local.quot.a_dim) + "," + std::to_string(n.local.quot.b_dim) + ")");
        if (!is_ic_type(n.local.sub))
            throw Error(ErrorKind::NotICType, "node " + n.label + " has a sub-object with nonzero point terms");
        if (n.local.sub.open_label != open_label)
            throw Error(ErrorKind::OpenLabelMismatch, "node " + n.label + " has open part " +
                        n.local.sub.open_label + ", expected " + open_label);
        if (n.gluing && !is_nilpotent(n.gluing->v * n.gluing->u))
            throw Error(ErrorKind::NotNilpotent, "node " + n.label + ": v u is not nilpotent");
        e_minus += n.local.sub.e_minus;
        e_zero += n.local.sub.e_zero;
        classes.push_back(extension_class(n.local).normalized);
    }
    return {bulk_label, open_label, nodes, build_shadow(open_label, e_minus, e_zero, classes)};
}

const ExtensionPresentation& global_shadow(const FiniteNodeDatum& s)
{
    return s.shadow;
}

Report verify_shadow_compat(const FiniteNodeDatum& s)
{
    Report rep;
    std::size_t e_minus = 0, e_zero = 0;
    std::vector<Rational> classes;
    for (const auto& n : s.nodes)
    {
        e_minus += n.local.sub.e_minus;
        e_zero += n.local.sub.e_zero;
        classes.push_back(extension_class(n.local).normalized);
    }
    ExtensionPresentation expected = build_shadow(s.open_label, e_minus, e_zero, classes);
    const ExtensionPresentation& got = s.shadow;

    rep.add("bulk IC shadow", got.sub == expected.sub,
            "open " + got.sub.open_label + ", E-=" + std::to_string(got.sub.e_minus) +
                ", E0=" + std::to_string(got.sub.e_zero));
    rep.add("quotient summands", got.quot == expected.quot,
            std::to_string(got.quot.a_dim) + " rank-one summands for " + std::to_string(s.nodes.size()) + " nodes");
    rep.add("class vector length", got.class_values.size() == classes.size(),
            std::to_string(got.class_values.size()) + " vs " + std::to_string(classes.size()));
    for (std::size_t k = 0; k < s.nodes.size(); ++k)
    {
        const std::string& label = s.nodes[k].label;
        bool has = k < got.class_values.size();
        bool ok = has && got.class_values[k] == classes[k];
        std::string detail = classes[k] == 0 ? "split" : "non-split";
        if (!ok)
            detail += has ? ": stored " + to_string(got.class_values[k]) + ", recomputed " + to_string(classes[k])
                          : ": missing from shadow";
        rep.add("node " + label + " class", ok, detail);
        if (classes[k] == 0)
            rep.notices.push_back("node " + label + " is split");
    }
    Report total = validate(total_zigzag(got));
    rep.add("shadow total exact", total.passed(),
            total.passed() ? "" : total.failures().front().name);
    rep.add("shadow matches direct construction", got == expected, "classes " + join_values(classes));
    return rep;
}

std::size_t GluingQuadruple::m2_offset(std::size_t k) const
{
    std::size_t off = 0;
    for (std::size_t i = 0; i < k && i < m2_dims.size(); ++i)
        off += m2_dims[i];
    return off;
}

GluingQuadruple assemble_gluing(const std::vector<NodeGluing>& blocks, std::size_t psi_dim,
                                const std::optional<QMatrix>& expected_n)
{
    GluingQuadruple g;
    g.psi_dim = psi_dim;
    std::vector<bool> used(psi_dim, false);
    std::set<std::string> seen;
    std::size_t m2 = 0;
    for (const auto& b : blocks)
    {
        const NodeRange& r = b.range;
        if (!seen.insert(r.label).second)
            throw Error(ErrorKind::DuplicateNode, "node " + r.label + " listed twice");
        if (r.begin > r.end || r.end > psi_dim)
            throw Error(ErrorKind::ShapeMismatch, "node " + r.label + ": range [" + std::to_string(r.begin) + "," +
                        std::to_string(r.end) + ") outside Psi of dim " + std::to_string(psi_dim));
        for (std::size_t i = r.begin; i < r.end; ++i)
        {
            if (used[i])
                throw Error(ErrorKind::ShapeMismatch, "node " + r.label + " overlaps another node range");
            used[i] = true;
        }
        std::size_t rk = b.u.rows();
        if (b.u.cols() != r.size() || b.v.rows() != r.size() || b.v.cols() != rk)
            throw Error(ErrorKind::ShapeMismatch, "node " + r.label + ": u must be r x " + std::to_string(r.size()) +
                        " and v " + std::to_string(r.size()) + " x r");
        if (!is_nilpotent(b.v * b.u))
            throw Error(ErrorKind::NotNilpotent, "node " + r.label + ": v u is not nilpotent");
        g.decomposition.push_back(r);
        g.m2_dims.push_back(rk);
        m2 += rk;
    }
    g.u = QMatrix(m2, psi_dim);
    g.v = QMatrix(psi_dim, m2);
    std::size_t off = 0;
    for (const auto& b : blocks)
    {
        for (std::size_t i = 0; i < b.u.rows(); ++i)
        {
            for (std::size_t j = 0; j < b.range.size(); ++j)
            {
                g.u(off + i, b.range.begin + j) = b.u(i, j);
                g.v(b.range.begin + j, off + i) = b.v(j, i);
            }
        }
        off += b.u.rows();
    }
    QMatrix derived = g.v * g.u;
    if (!is_nilpotent(derived))
        throw Error(ErrorKind::NotNilpotent, "assembled v u is not nilpotent");
    if (expected_n)
    {
        if (expected_n->rows() != psi_dim || expected_n->cols() != psi_dim)
            throw Error(ErrorKind::ShapeMismatch, "N must be " + std::to_string(psi_dim) + "x" + std::to_string(psi_dim));
        g.n = *expected_n;
    }
    else
    {
        g.n = derived;
    }
    return g;
}

Report verify_gluing(const GluingQuadruple& g)
{
    Report rep;
    std::size_t m2 = g.m2_offset(g.m2_dims.size());
    bool shapes = g.u.rows() == m2 && g.u.cols() == g.psi_dim && g.v.rows() == g.psi_dim && g.v.cols() == m2 &&
                  g.n.rows() == g.psi_dim && g.n.cols() == g.psi_dim && g.decomposition.size() == g.m2_dims.size();
    rep.add("shapes", shapes, "Psi dim " + std::to_string(g.psi_dim) + ", M'' dim " + std::to_string(m2));
    if (!shapes)
    {
        rep.notices.push_back(kFiltrationNotice);
        return rep;
    }

    QMatrix vu = g.v * g.u;
    std::string mismatch;
    for (std::size_t i = 0; i < g.psi_dim && mismatch.empty(); ++i)
    {
        for (std::size_t j = 0; j < g.psi_dim; ++j)
        {
            if (vu(i, j) != g.n(i, j))
            {
                mismatch = "entry (" + std::to_string(i) + "," + std::to_string(j) + "): v u = " + to_string(vu(i, j)) +
                           ", N = " + to_string(g.n(i, j));
                break;
            }
        }
    }
    rep.add("N = v u", mismatch.empty(), mismatch);
    bool nil = is_nilpotent(g.n);
    rep.add("N nilpotent", nil, nil ? "" : "N = " + to_string(g.n));

    // Each node's M'' rows and columns touch only its own Psi range.
    std::string leak;
    std::vector<bool> used(g.psi_dim, false);
    for (std::size_t k = 0; k < g.decomposition.size() && leak.empty(); ++k)
    {
        const NodeRange& r = g.decomposition[k];
        if (r.begin > r.end || r.end > g.psi_dim)
        {
            leak = "node " + r.label + " range out of bounds";
            break;
        }
        for (std::size_t i = r.begin; i < r.end; ++i)
        {
            if (used[i])
                leak = "node " + r.label + " overlaps another node range";
            used[i] = true;
        }
        std::size_t off = g.m2_offset(k);
        for (std::size_t a = off; a < off + g.m2_dims[k] && leak.empty(); ++a)
        {
            for (std::size_t j = 0; j < g.psi_dim; ++j)
            {
                bool inside = j >= r.begin && j < r.end;
                if (!inside && g.u(a, j) != 0)
                    leak = "node " + r.label + ": u touches Psi coordinate " + std::to_string(j);
                else if (!inside && g.v(j, a) != 0)
                    leak = "node " + r.label + ": v touches Psi coordinate " + std::to_string(j);
                if (!leak.empty())
                    break;
            }
        }
    }
    rep.add("blocks respect decomposition", leak.empty(), leak);

    for (std::size_t k = 0; k < g.decomposition.size(); ++k)
    {
        const NodeRange& r = g.decomposition[k];
        std::size_t rk = g.m2_dims[k];
        rep.add("node " + r.label + " M'' rank one", rk == 1, "rank " + std::to_string(rk));
        QMatrix uk = g.u.block(g.m2_offset(k), r.begin, rk, r.size());
        QMatrix vk = g.v.block(r.begin, g.m2_offset(k), r.size(), rk);
        bool local_nil = is_nilpotent(vk * uk);
        rep.add("node " + r.label + " v u nilpotent", local_nil);
    }
    std::size_t inert = 0;
    for (bool b : used)
        inert += b ? 0 : 1;
    if (inert > 0)
        rep.notices.push_back("inert remainder of Psi: " + std::to_string(inert) +
                              " coordinates, constrained only by global nilpotency");
    rep.notices.push_back(kFiltrationNotice);
    rep.notices.push_back(kTwistNotice);
    return rep;
}

nlohmann::json to_json(const FiniteNodeDatum& s)
{
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : s.nodes)
    {
        nlohmann::json j = {{"label", n.label}, {"local", to_json(n.local)},
                            {"class", to_json(extension_class(n.local).normalized)}};
        if (n.gluing)
            j["gluing"] = {{"u", to_json(n.gluing->u)}, {"v", to_json(n.gluing->v)}};
        nodes.push_back(std::move(j));
    }
    return {{"bulk", s.bulk_label}, {"open", s.open_label}, {"nodes", std::move(nodes)},
            {"shadow", to_json(s.shadow)}};
}

nlohmann::json to_json(const GluingQuadruple& g)
{
    nlohmann::json dec = nlohmann::json::array();
    for (std::size_t k = 0; k < g.decomposition.size(); ++k)
    {
        const auto& r = g.decomposition[k];
        dec.push_back({{"label", r.label}, {"begin", r.begin}, {"end", r.end}, {"rank", g.m2_dims[k]}});
    }
    return {{"psi", g.psi_dim}, {"decomposition", std::move(dec)}, {"u", to_json(g.u)},
            {"v", to_json(g.v)}, {"N", to_json(g.n)}};
}

}   // namespace zz

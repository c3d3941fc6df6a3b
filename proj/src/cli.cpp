#include "zz/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <CLI11.hpp>
#include "zz/error.hpp"
#include "zz/json_util.hpp"
#include "zz/monodromy.hpp"
#include "zz/skeleton.hpp"
#include "zz/zzl.hpp"

namespace zz::cli {

using nlohmann::json;

namespace {

/// Boundary dimensions of the ordinary double point used by the tables.
constexpr std::size_t kOdpBoundary = 1;
constexpr const char* kOpenLabel = "Q_U[3]";
constexpr std::size_t kMaxTableNodes = 5;

std::string space_text(std::size_t n)
{
    if (n == 0)
        return "0";
    return n == 1 ? "Q" : "Q^" + std::to_string(n);
}

std::string map_text(const QMatrix& m)
{
    if (m.is_zero())
        return "0";
    if (m.is_square() && m == QMatrix::identity(m.rows()))
        return "id";
    return to_string(m);
}

/** (L, A, B, alpha, beta, gamma) */
std::string tuple_text(const ZigZag& z)
{
    return "(" + z.open_label + "," + space_text(z.a_dim) + "," + space_text(z.b_dim) + "," + map_text(z.alpha) + "," +
           map_text(z.beta) + "," + map_text(z.gamma) + ")";
}

std::string yes_no(bool b)
{
    return b ? "yes" : "no";
}

TableRow row(int table, std::string object, const ZigZag& z, std::string comment, std::vector<std::pair<std::string, bool>> checks)
{
    TableRow r{table, std::move(object), tuple_text(z), std::move(comment), true, {}};
    for (const auto& [name, ok] : checks)
    {
        if (!ok)
        {
            r.verified = false;
            r.detail += (r.detail.empty() ? "" : "; ") + name;
        }
    }
    return r;
}

}   // namespace

std::vector<TableRow> build_tables()
{
    std::vector<TableRow> rows;
    ZigZag ic = std_ic(kOpenLabel, kOdpBoundary, kOdpBoundary);
    ZigZag sky = std_skyscraper(1);
    ZigZag corrected = std_corrected(kOpenLabel, kOdpBoundary, kOdpBoundary);
    ExtensionPresentation split_ext = make_extension(ic, sky, Rational(0));
    ExtensionPresentation corrected_ext = make_extension(ic, sky, Rational(1));

    rows.push_back(row(1, "IC", ic, "no point terms",
                       {{"valid", is_valid(ic)},
                        {"no point terms", ic.a_dim == 0 && ic.b_dim == 0},
                        {"self-dual", is_isomorphic(dualize(ic), ic).isomorphic}}));
    rows.push_back(row(1, "skyscraper", sky, "rank one, supported at the point",
                       {{"valid", is_valid(sky)},
                        {"zero open part", sky.has_zero_open_part()},
                        {"beta = id", sky.beta == QMatrix::identity(1)},
                        {"self-dual", is_isomorphic(dualize(sky), sky).isomorphic}}));
    rows.push_back(row(1, "corrected P", corrected, "class 1, same shape as the split sum",
                       {{"valid", is_valid(corrected)},
                        {"equals total of class-1 extension", total_zigzag(corrected_ext) == corrected},
                        {"non-split", !extension_class(corrected_ext).split()},
                        {"self-dual", check_self_duality(corrected_ext).self_dual}}));

    // r-fold node sum, checked for every r up to the table bound.
    std::vector<std::pair<std::string, bool>> multi_checks;
    for (std::size_t r = 1; r <= kMaxTableNodes; ++r)
    {
        std::vector<std::string> labels;
        ZigZag folded = zero_zigzag();
        for (std::size_t k = 1; k <= r; ++k)
        {
            labels.push_back("p" + std::to_string(k));
            folded = direct_sum(folded, sky);
        }
        ZigZag total = multi_node_skyscrapers(labels).total();
        multi_checks.push_back({"r=" + std::to_string(r) + " componentwise sum", total == folded});
        multi_checks.push_back({"r=" + std::to_string(r) + " equals rank-r skyscraper", total == std_skyscraper(r)});
        multi_checks.push_back({"r=" + std::to_string(r) + " valid", is_valid(total)});
    }
    TableRow multi = row(1, "node sum (r nodes)", sky, "one summand per node, r = 1.." + std::to_string(kMaxTableNodes),
                         multi_checks);
    multi.zigzag = "sum_{k=1}^{r} " + multi.zigzag;
    rows.push_back(std::move(multi));

    ZigZag split_total = total_zigzag(split_ext);
    rows.push_back(row(2, "split extension", split_total, "class 0",
                       {{"valid", is_valid(split_total)},
                        {"class split", extension_class(split_ext).split()},
                        {"same shape as IC + skyscraper",
                         compressed_shape(split_total) == compressed_shape(direct_sum(ic, sky))}}));

    // General endpoint with nonzero B: E- = E0 = A = B = Q, alpha = id, beta = 0, gamma = id.
    ZigZag endpoint{kOpenLabel, 1, 1, 1, 1, QMatrix::identity(1), QMatrix(1, 1), QMatrix::identity(1)};
    QMatrix u = QMatrix::identity(1);
    ExtensionPresentation general = make_extension(endpoint, sky, u);
    ZigZag general_total = total_zigzag(general);
    QMatrix expected_beta = block_assemble({{{endpoint.beta, u}, {std::nullopt, QMatrix::identity(1)}}}, {1, 1}, {1, 1});
    TableRow g = row(2, "general extension E", general_total, "class = u mod im beta",
                     {{"valid", is_valid(general_total)},
                      {"beta = [beta, u; 0, 1]", general_total.beta == expected_beta},
                      {"class nonzero modulo im beta", !extension_class(general).split()}});
    g.zigzag = "(" + std::string(kOpenLabel) + ",A+Q,B+Q,alpha_E,[beta, u; 0, 1],gamma_E) e.g. beta=" +
               to_string(general_total.beta);
    rows.push_back(std::move(g));

    ZigZag corrected_total = total_zigzag(corrected_ext);
    rows.push_back(row(2, "corrected non-split P", corrected_total, "class 1, self-dual",
                       {{"valid", is_valid(corrected_total)},
                        {"same shape as split", compressed_shape(corrected_total) == compressed_shape(split_total)},
                        {"normalized classes differ",
                         extension_class(corrected_ext).normalized != extension_class(split_ext).normalized},
                        {"not isomorphic to split", !ext_isomorphic(corrected_ext, split_ext).isomorphic},
                        {"self-dual", check_self_duality(corrected_ext).self_dual}}));
    return rows;
}

namespace {

struct Options
{
    std::string format;
    std::string out;
    std::string file;
    std::string name;
    int center = 0;
    std::string alpha, delta, pairing;
    std::string bulk = "C_bulk";
};

CommandResult usage(const std::string& message)
{
    return {kUsageError, {}, message + "\n"};
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

json diagnostics_json(const std::vector<zzl::Diagnostic>& ds)
{
    json out = json::array();
    for (const auto& d : ds)
    {
        out.push_back({{"code", d.code},
                       {"category", zzl::to_string(d.category)},
                       {"severity", d.severity == zzl::Severity::Error ? "error" : "warning"},
                       {"message", d.message},
                       {"line", d.position.line},
                       {"column", d.position.column}});
    }
    return out;
}

/** Read and parse; on failure `result` holds the exit code and diagnostics. */
struct Loaded
{
    std::optional<zzl::Document> doc;
    CommandResult result;
};

Loaded load(const Options& o, bool validate)
{
    std::ifstream in(o.file, std::ios::binary);
    if (!in)
        return {std::nullopt, usage("cannot read " + o.file)};
    std::stringstream buf;
    buf << in.rdbuf();
    zzl::ParseResult pr = zzl::parse(buf.str(), {validate});
    if (pr.ok())
        return {std::move(pr.document), {}};

    CommandResult r;
    r.exit_code = pr.only_validation_failures() ? kCheckFailed : kUsageError;
    std::string text;
    for (const auto& d : pr.diagnostics)
        text += o.file + ":" + zzl::to_string(d) + "\n";
    if (o.format == "json")
        r.payload = dump({{"status", "fail"}, {"file", o.file}, {"diagnostics", diagnostics_json(pr.diagnostics)}});
    else
        r.payload = text;
    return {std::nullopt, r};
}

CommandResult render(const Options& o, const Report& rep, const json& extra, const std::string& text_prefix)
{
    CommandResult r;
    r.exit_code = rep.passed() ? kSuccess : kCheckFailed;
    if (o.format == "json")
    {
        json j = rep.to_json();
        for (auto it = extra.begin(); it != extra.end(); ++it)
            j[it.key()] = it.value();
        r.payload = dump(j);
    }
    else
    {
        r.payload = text_prefix + rep.to_text();
    }
    return r;
}

const QMatrix* find_map(const zzl::Document& d, const std::string& name)
{
    auto it = d.maps.find(name);
    return it == d.maps.end() ? nullptr : &it->second.matrix;
}

std::optional<std::vector<Rational>> as_vector(const QMatrix& m)
{
    if (m.cols() == 1)
        return m.col(0);
    if (m.rows() == 1)
        return m.entries();
    return std::nullopt;
}

std::string vector_text(const std::vector<Rational>& v)
{
    return to_string(QMatrix(1, v.size(), v));
}

// ---------------------------------------------------------------------------
// Subcommands

CommandResult cmd_check(const Options& o)
{
    Loaded l = load(o, true);
    if (!l.doc)
        return l.result;
    const zzl::Document& d = *l.doc;
    Report rep;
    rep.add("parse", true,
            std::to_string(d.spaces.size()) + " spaces, " + std::to_string(d.maps.size()) + " maps, " +
                std::to_string(d.zigzags.size()) + " zigzags, " + std::to_string(d.extensions.size()) +
                " extensions, " + std::to_string(d.gluings.size()) + " gluings");
    for (const auto& [name, z] : d.zigzags)
    {
        Report v = validate(z.value);
        rep.add("zigzag " + name, v.passed(), v.passed() ? "exact at A and B" : v.failures().front().name);
    }
    for (const auto& [name, e] : d.extensions)
    {
        ExtClass c = extension_class(e.value);
        rep.add("extension " + name, true, c.split() ? "split" : "non-split, class " + to_string(c.value));
    }
    if (d.nodes && !d.nodes->names.empty())
    {
        std::vector<NodeDatum> nodes = d.node_data();
        FiniteNodeDatum s = assemble(o.bulk, nodes.front().local.sub.open_label, nodes);
        Report sc = verify_shadow_compat(s);
        rep.add("nodes shadow", sc.passed(), std::to_string(nodes.size()) + " nodes");
    }
    for (const auto& [name, g] : d.gluings)
    {
        Report gr = verify_gluing(g.value);
        rep.add("gluing " + name, gr.passed(), gr.passed() ? "N = v u" : gr.failures().front().name);
        for (const auto& n : gr.notices)
            rep.notices.push_back("gluing " + name + ": " + n);
    }
    return render(o, rep, {{"file", o.file}, {"diagnostics", json::array()}}, o.file + "\n");
}

CommandResult cmd_dual(const Options& o)
{
    Loaded l = load(o, true);
    if (!l.doc)
        return l.result;
    const zzl::Document& d = *l.doc;
    if (auto it = d.zigzags.find(o.name); it != d.zigzags.end())
    {
        const ZigZag& z = it->second.value;
        ZigZag dz = dualize(z);
        Report rep;
        rep.add("dual valid", is_valid(dz));
        rep.add("dualize twice is the identity", dualize(dz) == z);
        json extra = {{"name", o.name}, {"dual", to_json(dz)}};
        if (z.max_dim() <= kIsoSizeBound)
        {
            IsoResult iso = is_isomorphic(dz, z);
            rep.notices.push_back(std::string("dual isomorphic to original: ") + yes_no(iso.isomorphic) +
                                  (iso.reason.empty() ? "" : " (" + iso.reason + ")"));
            extra["self_dual"] = iso.isomorphic;
        }
        zzl::Document out;
        out.zigzags[o.name + "_dual"] = {o.name + "_dual", dz, {}};
        return render(o, rep, extra, zzl::serialize(out));
    }
    if (auto it = d.extensions.find(o.name); it != d.extensions.end())
    {
        const ExtensionPresentation& e = it->second.value;
        if (e.regime() != Regime::Collapsed)
            return {kCheckFailed, {}, "extension " + o.name + ": dual presentations need a sub-object with B = 0\n"};
        ExtensionPresentation de = dual_presentation(e);
        SelfDuality sd = check_self_duality(e);
        Report rep;
        rep.add("self-dual", sd.self_dual, sd.reason);
        return render(o, rep, {{"name", o.name}, {"dual", to_json(de)}},
                      "dual of " + o.name + ": class " + vector_text(de.class_values) + "\n");
    }
    return usage("no zigzag or extension named '" + o.name + "' in " + o.file);
}

CommandResult cmd_ext_class(const Options& o)
{
    Loaded l = load(o, true);
    if (!l.doc)
        return l.result;
    auto it = l.doc->extensions.find(o.name);
    if (it == l.doc->extensions.end())
        return usage("no extension named '" + o.name + "' in " + o.file);
    const ExtensionPresentation& e = it->second.value;
    ExtClass c = extension_class(e);
    CompressedShape shape = compressed_shape(total_zigzag(e));
    json j = {{"name", o.name}, {"class", to_json(c)}, {"shape", to_string(shape)}};
    std::ostringstream text;
    text << "extension " << o.name << "\n"
         << "  regime: " << (e.regime() == Regime::Block ? "block" : "collapsed") << "\n"
         << "  class: " << to_string(c.value) << "\n"
         << "  normalized: " << to_string(c.normalized) << (c.split() ? " (split)" : " (non-split)") << "\n"
         << "  normalizer: " << to_string(c.normalizer) << "\n"
         << "  rank: " << c.rank << "\n"
         << "  total shape: " << to_string(shape) << "\n";
    if (e.regime() == Regime::Collapsed && std::max(e.sub.max_dim(), e.quot.max_dim()) <= kIsoSizeBound)
    {
        SelfDuality sd = check_self_duality(e);
        j["self_dual"] = sd.self_dual;
        text << "  self-dual: " << yes_no(sd.self_dual) << "\n";
    }
    return {kSuccess, o.format == "json" ? dump(j) : text.str(), {}};
}

std::optional<FiniteNodeDatum> assembled(const zzl::Document& d, const Options& o)
{
    if (!d.nodes)
        return std::nullopt;
    std::vector<NodeDatum> nodes = d.node_data();
    std::string open = nodes.empty() ? kZeroLabel : nodes.front().local.sub.open_label;
    return assemble(o.bulk, open, nodes);
}

CommandResult cmd_assemble(const Options& o)
{
    Loaded l = load(o, true);
    if (!l.doc)
        return l.result;
    auto s = assembled(*l.doc, o);
    if (!s)
        return usage(o.file + " has no nodes block");
    Report rep = verify_shadow_compat(*s);
    const ExtensionPresentation& sh = global_shadow(*s);
    std::ostringstream text;
    text << "bulk: " << s->bulk_label << "\n"
         << "nodes:";
    for (const auto& n : s->nodes)
        text << ' ' << n.label;
    text << "\nshadow sub: " << to_text(sh.sub) << "\n"
         << "shadow quotient: " << space_text(sh.quot.a_dim) << " (" << s->nodes.size() << " rank-one summands)\n"
         << "class vector: " << vector_text(sh.class_values) << "\n";
    return render(o, rep, {{"datum", to_json(*s)}}, text.str());
}

CommandResult cmd_gluing(const Options& o)
{
    Loaded l = load(o, false);
    if (!l.doc)
        return l.result;
    auto it = l.doc->gluings.find(o.name);
    if (it == l.doc->gluings.end())
        return usage("no gluing named '" + o.name + "' in " + o.file);
    const GluingQuadruple& g = it->second.value;
    Report rep = verify_gluing(g);
    std::string text = "gluing " + o.name + "\n  N = " + to_string(g.n) + "\n  v u = " + to_string(g.v * g.u) + "\n";
    return render(o, rep, {{"name", o.name}, {"gluing", to_json(g)}}, text);
}

CommandResult cmd_skeleton(const Options& o)
{
    Loaded l = load(o, true);
    if (!l.doc)
        return l.result;
    auto s = assembled(*l.doc, o);
    if (!s)
        return usage(o.file + " has no nodes block");
    Skeleton k = skeleton_of(*s);
    return {kSuccess, o.format == "json" ? dump(to_json(k)) : to_dot(k), {}};
}

CommandResult cmd_tables(const Options& o)
{
    std::vector<TableRow> rows = build_tables();
    bool all = std::all_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.verified; });
    CommandResult r;
    r.exit_code = all ? kSuccess : kCheckFailed;
    if (o.format == "json")
    {
        json arr = json::array();
        for (const auto& t : rows)
        {
            arr.push_back({{"table", t.table}, {"object", t.object}, {"zigzag", t.zigzag}, {"comment", t.comment},
                           {"verified", t.verified}, {"detail", t.detail}});
        }
        r.payload = dump({{"status", all ? "pass" : "fail"}, {"rows", arr}});
        return r;
    }
    std::ostringstream out;
    int current = 0;
    for (const auto& t : rows)
    {
        if (t.table != current)
        {
            current = t.table;
            out << (current == 1 ? "Standard zig-zags (L, A, B, alpha, beta, gamma)\n"
                                 : "Extension templates\n");
        }
        out << "  " << (t.verified ? "VERIFIED" : "FAILED  ") << "  " << t.object << "  " << t.zigzag << "  -- "
            << t.comment;
        if (!t.verified)
            out << " [" << t.detail << "]";
        out << "\n";
    }
    r.payload = out.str();
    return r;
}

CommandResult cmd_wfilt(const Options& o)
{
    Loaded l = load(o, true);
    if (!l.doc)
        return l.result;
    const QMatrix* m = find_map(*l.doc, o.name);
    if (!m)
        return usage("no map named '" + o.name + "' in " + o.file);
    NilpotentOperator n(*m);
    WeightFiltration w = weight_filtration(n, o.center);
    Report rep = check_weight_filtration(n, w);
    json steps = json::array();
    std::ostringstream text;
    text << "weight filtration of " << o.name << " (index " << n.index() << ", center " << o.center << ")\n";
    for (const auto& s : w.steps)
    {
        steps.push_back({{"weight", s.weight}, {"dim", s.space.dim()}, {"graded", w.graded_dim(s.weight)},
                         {"basis", to_json(s.space.basis())}});
        text << "  W_" << s.weight << ": dim " << s.space.dim() << ", graded " << w.graded_dim(s.weight)
             << ", basis " << to_string(s.space.basis()) << "\n";
    }
    return render(o, rep, {{"name", o.name}, {"center", o.center}, {"index", n.index()}, {"steps", steps}},
                  text.str());
}

CommandResult cmd_nlog(const Options& o)
{
    Loaded l = load(o, true);
    if (!l.doc)
        return l.result;
    const QMatrix* m = find_map(*l.doc, o.name);
    if (!m)
        return usage("no map named '" + o.name + "' in " + o.file);
    NilpotentOperator n = nilpotent_log(*m);
    Report rep;
    rep.add("exp(log T) = T", unipotent_exp(n) == *m);
    rep.add("N nilpotent", true, "index " + std::to_string(n.index()));
    return render(o, rep, {{"name", o.name}, {"N", to_json(n.matrix())}, {"index", n.index()}},
                  "N = log " + o.name + " = " + to_string(n.matrix()) + "\n");
}

CommandResult cmd_pl(const Options& o)
{
    Loaded l = load(o, true);
    if (!l.doc)
        return l.result;
    const QMatrix* a = find_map(*l.doc, o.alpha);
    const QMatrix* d = find_map(*l.doc, o.delta);
    const QMatrix* g = find_map(*l.doc, o.pairing);
    if (!a || !d || !g)
        return usage("pl needs maps named by --alpha, --delta and --pairing in " + o.file);
    auto av = as_vector(*a);
    auto dv = as_vector(*d);
    if (!av || !dv)
        return usage("--alpha and --delta must name row or column vectors");
    if (!g->is_square())
        return usage("--pairing must name a square matrix");
    Pairing q(*g);
    std::vector<Rational> t = pl_transform(*av, *dv, q);
    QMatrix op = pl_operator(*dv, q);
    QMatrix shift = op - QMatrix::identity(op.rows());
    Report rep;
    rep.add("T(alpha) = operator * alpha", op * *av == t);
    if (q.is_skew())
        rep.add("(T - I)^2 = 0", (shift * shift).is_zero());
    else
        rep.notices.push_back("pairing is not skew; unipotence not asserted");
    return render(o, rep, {{"T_alpha", to_json(t)}, {"operator", to_json(op)}, {"skew", q.is_skew()}},
                  "T(alpha) = " + vector_text(t) + "\nT = " + to_string(op) + "\n");
}

}   // namespace

CommandResult run(const std::vector<std::string>& args)
{
    Options o;
    CLI::App app{"Exact zig-zag engine for perverse data at isolated singular points", "zzl"};
    app.require_subcommand(1);
    std::function<CommandResult(const Options&)> action;

    auto common = [&](CLI::App* sub, std::vector<std::string> formats) {
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
        sub->add_option("--out", o.out, "write output to this path");
    };
    auto with_file = [&](const char* name, const char* help, bool named) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("FILE", o.file, ".zzl input")->required();
        if (named)
            sub->add_option("NAME", o.name, "declaration name")->required();
        return sub;
    };

    CLI::App* check = with_file("check", "parse and validate a file", false);
    common(check, {"text", "json"});
    check->callback([&] { action = cmd_check; });

    CLI::App* dual = with_file("dual", "dualize a zigzag or extension", true);
    common(dual, {"text", "json"});
    dual->callback([&] { action = cmd_dual; });

    CLI::App* ext = with_file("ext-class", "extension class of a presentation", true);
    common(ext, {"text", "json"});
    ext->callback([&] { action = cmd_ext_class; });

    CLI::App* asmb = with_file("assemble", "assemble the nodes block into the global shadow", false);
    common(asmb, {"text", "json"});
    asmb->add_option("--bulk", o.bulk, "bulk label");
    asmb->callback([&] { action = cmd_assemble; });

    CLI::App* glue = with_file("gluing", "verify a gluing quadruple", true);
    common(glue, {"text", "json"});
    glue->callback([&] { action = cmd_gluing; });

    CLI::App* skel = with_file("skeleton", "export the node skeleton", false);
    skel->add_option("--format", o.format, "output format")->check(CLI::IsMember({"dot", "json"}));
    skel->add_option("--out", o.out, "write output to this path");
    skel->add_option("--bulk", o.bulk, "bulk label");
    skel->callback([&] { action = cmd_skeleton; });

    CLI::App* tables = app.add_subcommand("tables", "rebuild and verify the standard-object tables");
    common(tables, {"text", "json"});
    tables->callback([&] { action = cmd_tables; });

    CLI::App* wfilt = with_file("wfilt", "monodromy weight filtration of a nilpotent map", true);
    common(wfilt, {"text", "json"});
    wfilt->add_option("--center", o.center, "center weight")->required();
    wfilt->callback([&] { action = cmd_wfilt; });

    CLI::App* nlog = with_file("nlog", "logarithm of a unipotent map", true);
    common(nlog, {"text", "json"});
    nlog->callback([&] { action = cmd_nlog; });

    CLI::App* pl = with_file("pl", "Picard-Lefschetz transformation", false);
    common(pl, {"text", "json"});
    pl->add_option("--alpha", o.alpha, "map holding the vector to transform")->required();
    pl->add_option("--delta", o.delta, "map holding the vanishing cycle")->required();
    pl->add_option("--pairing", o.pairing, "map holding the Gram matrix")->required();
    pl->callback([&] { action = cmd_pl; });

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        return {kSuccess, app.help(), {}};
    }
    catch (const CLI::CallForAllHelp&)
    {
        return {kSuccess, app.help("", CLI::AppFormatMode::All), {}};
    }
    catch (const CLI::ParseError& e)
    {
        std::string help = app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help();
        return {kUsageError, {}, std::string(e.what()) + "\n" + help};
    }
    // The format default depends on the subcommand; skeleton defaults to dot.
    if (o.format.empty())
        o.format = skel->parsed() ? "dot" : "text";

    CommandResult r;
    try
    {
        r = action(o);
    }
    catch (const zz::Error& e)
    {
        r = {kCheckFailed, {}, std::string(e.what()) + "\n"};
        if (o.format == "json")
            r.payload = dump({{"status", "fail"}, {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}});
    }
    catch (const std::exception& e)
    {
        r = {kUsageError, {}, std::string("error: ") + e.what() + "\n"};
    }

    if (!o.out.empty() && !r.payload.empty())
    {
        std::ofstream f(o.out, std::ios::binary);
        if (!f)
            return {kUsageError, {}, "cannot write " + o.out + "\n"};
        f << r.payload;
        r.payload.clear();
    }
    return r;
}

}   // namespace zz::cli

#ifndef ZZ_ZZL_HPP
#define ZZ_ZZL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>
#include <nlohmann/json.hpp>
#include "zz/assembly.hpp"

namespace zz::zzl {

/// Largest dimension accepted for a declared space or zig-zag term.
inline constexpr std::size_t kMaxDim = 1024;

enum class Category
{
    Lexical,
    Syntax,
    Semantic,
    Validation,
};

enum class Severity
{
    Error,
    Warning,
};

struct Position
{
    std::size_t line = 1;
    std::size_t column = 1;

    friend bool operator==(const Position&, const Position&) = default;
};

struct Span
{
    Position begin;
    Position end;
};

struct Diagnostic
{
    std::string code;   // e.g. "lex.bad-rational", "semantic.dimension"
    Category category = Category::Syntax;
    Severity severity = Severity::Error;
    std::string message;
    Position position;
};

std::string to_string(Category c);
/** "LINE:COL: error[CODE]: MESSAGE" */
std::string to_string(const Diagnostic& d);

struct SpaceItem
{
    std::string name;
    std::size_t dim = 0;
    Span span;
};

struct MapItem
{
    std::string name;
    std::string source;
    std::string target;
    QMatrix matrix;   // dim target x dim source
    Span span;
};

struct ZigZagItem
{
    std::string name;
    ZigZag value;
    Span span;
};

struct ExtensionItem
{
    std::string name;
    std::string sub;
    std::string quot;
    ExtensionPresentation value;
    Span span;
};

/** Node order is semantic. */
struct NodesItem
{
    std::vector<std::string> names;
    Span span;
};

struct GluingItem
{
    std::string name;
    GluingQuadruple value;
    bool explicit_n = false;   // N was written out rather than derived
    Span span;
};

/**
 * A resolved document. Names are unique per kind; cross-references have been
 * replaced by values. Equality is structural and ignores spans.
 */
struct Document
{
    std::map<std::string, SpaceItem> spaces;
    std::map<std::string, MapItem> maps;
    std::map<std::string, ZigZagItem> zigzags;
    std::map<std::string, ExtensionItem> extensions;
    std::optional<NodesItem> nodes;
    std::map<std::string, GluingItem> gluings;

    bool empty() const;
    /** Local node data in declaration order of the `nodes` block. */
    std::vector<NodeDatum> node_data() const;
};

bool operator==(const Document& a, const Document& b);

struct ParseOptions
{
    /// Run exactness and gluing checks; their failures become Validation diagnostics.
    bool validate = true;
};

struct ParseResult
{
    std::optional<Document> document;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return document.has_value(); }
    /** True when every diagnostic is a validation failure. */
    bool only_validation_failures() const;
};

/** Never throws; on failure the result holds diagnostics and no document. */
ParseResult parse(std::string_view text, const ParseOptions& options = {});

/** Canonical text: kind-then-name order, rationals in lowest terms. */
std::string serialize(const Document& d);

/** Canonical JSON export (sorted keys). */
nlohmann::json to_json(const Document& d);

/** Bare label if every character is a label character, otherwise a quoted string. */
std::string render_label(const std::string& label);
std::string render_matrix(const QMatrix& m);

}   // namespace zz::zzl

#endif

#include "zz/zzl.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>
#include "zz/error.hpp"
#include "zz/json_util.hpp"

namespace zz::zzl {

// ---------------------------------------------------------------------------
// Diagnostics

std::string to_string(Category c)
{
    switch (c)
    {
    case Category::Lexical: return "lexical";
    case Category::Syntax: return "syntax";
    case Category::Semantic: return "semantic";
    case Category::Validation: return "validation";
    }
    return "unknown";
}

std::string to_string(const Diagnostic& d)
{
    std::ostringstream out;
    out << d.position.line << ':' << d.position.column << ": "
        << (d.severity == Severity::Error ? "error" : "warning") << '[' << d.code << "]: " << d.message;
    return out.str();
}

bool ParseResult::only_validation_failures() const
{
    return !diagnostics.empty() && std::all_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
        return d.category == Category::Validation;
    });
}

namespace {

bool is_label_char(char c)
{
    unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) || std::string_view("_[]().+*'-").find(c) != std::string_view::npos;
}

bool is_ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool is_digit(char c)
{
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok
{
    End,
    Ident,
    Number,
    String,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Equals,
    Arrow,
};

std::string describe(Tok t)
{
    switch (t)
    {
    case Tok::End: return "end of input";
    case Tok::Ident: return "name";
    case Tok::Number: return "number";
    case Tok::String: return "string";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Arrow: return "'->'";
    }
    return "token";
}

struct Token
{
    Tok kind = Tok::End;
    std::string text;
    Position pos;
    Position end;
};

/** Thrown for the first lexical or syntax error; parsing stops there. */
struct Failure
{
    Diagnostic diag;
};

[[noreturn]] void fail(Category cat, std::string code, std::string message, Position pos)
{
    throw Failure{{std::move(code), cat, Severity::Error, std::move(message), pos}};
}

std::string printable(char c)
{
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isprint(u))
        return std::string("'") + c + "'";
    static const char* hex = "0123456789abcdef";
    return std::string("byte 0x") + hex[u >> 4] + hex[u & 15];
}

class Lexer
{
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next()
    {
        skip_space();
        Token t;
        t.pos = here();
        if (at_end())
        {
            t.end = t.pos;
            return t;
        }
        char c = src_[i_];
        if (is_ident_start(c))
        {
            std::size_t b = i_;
            while (!at_end() && is_ident_char(src_[i_]))
                advance();
            t.kind = Tok::Ident;
            t.text = std::string(src_.substr(b, i_ - b));
        }
        else if (is_digit(c) || (c == '-' && peek_char(1) != '>'))
        {
            t.kind = Tok::Number;
            t.text = number(t.pos);
        }
        else if (c == '"')
        {
            t.kind = Tok::String;
            t.text = string_literal(t.pos);
        }
        else
        {
            advance();
            switch (c)
            {
            case '{': t.kind = Tok::LBrace; break;
            case '}': t.kind = Tok::RBrace; break;
            case '[': t.kind = Tok::LBracket; break;
            case ']': t.kind = Tok::RBracket; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case ',': t.kind = Tok::Comma; break;
            case ';': t.kind = Tok::Semi; break;
            case ':': t.kind = Tok::Colon; break;
            case '=': t.kind = Tok::Equals; break;
            case '-':
                advance();
                t.kind = Tok::Arrow;
                break;
            default:
                fail(Category::Lexical, "lex.unexpected-char", "unexpected character " + printable(c), t.pos);
            }
        }
        t.end = here();
        return t;
    }

    /** A bare run of label characters or a quoted string. */
    Token label()
    {
        skip_space();
        Token t;
        t.pos = here();
        if (!at_end() && src_[i_] == '"')
        {
            t.kind = Tok::String;
            t.text = string_literal(t.pos);
        }
        else
        {
            std::size_t b = i_;
            while (!at_end() && is_label_char(src_[i_]))
                advance();
            if (i_ == b)
                fail(Category::Syntax, "syntax.expected", "expected an open-part label", t.pos);
            t.kind = Tok::Ident;
            t.text = std::string(src_.substr(b, i_ - b));
        }
        t.end = here();
        return t;
    }

  private:
    bool at_end() const { return i_ >= src_.size(); }
    Position here() const { return {line_, col_}; }
    char peek_char(std::size_t k) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }

    void advance()
    {
        if (src_[i_] == '\n')
        {
            ++line_;
            col_ = 1;
        }
        else
        {
            ++col_;
        }
        ++i_;
    }

    void skip_space()
    {
        while (!at_end())
        {
            char c = src_[i_];
            if (c == '#')
            {
                while (!at_end() && src_[i_] != '\n')
                    advance();
            }
            else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v')
            {
                advance();
            }
            else
            {
                break;
            }
        }
    }

    std::string digits()
    {
        std::size_t b = i_;
        while (!at_end() && is_digit(src_[i_]))
            advance();
        return std::string(src_.substr(b, i_ - b));
    }

    // ["-"] NAT ["/" NAT], with nothing number-like glued to the end.
    std::string number(Position start)
    {
        std::string text;
        if (src_[i_] == '-')
        {
            text += '-';
            advance();
            if (at_end() || !is_digit(src_[i_]))
                fail(Category::Lexical, "lex.bad-rational", "'-' must be followed by digits", start);
        }
        text += digits();
        if (!at_end() && src_[i_] == '/')
        {
            advance();
            if (at_end() || !is_digit(src_[i_]))
                fail(Category::Lexical, "lex.bad-rational", "missing denominator in '" + text + "/'", start);
            std::string den = digits();
            if (std::all_of(den.begin(), den.end(), [](char c) { return c == '0'; }))
                fail(Category::Lexical, "lex.bad-rational", "zero denominator in '" + text + "/" + den + "'", start);
            text += '/' + den;
        }
        if (!at_end() && (src_[i_] == '.' || src_[i_] == '/' || is_ident_char(src_[i_])))
            fail(Category::Lexical, "lex.bad-rational",
                 "malformed rational literal near '" + text + src_[i_] + "'", start);
        return text;
    }

    std::string string_literal(Position start)
    {
        advance();   // opening quote
        std::string out;
        while (true)
        {
            if (at_end() || src_[i_] == '\n')
                fail(Category::Lexical, "lex.unterminated-string", "unterminated string", start);
            char c = src_[i_];
            advance();
            if (c == '"')
                break;
            if (c == '\\')
            {
                if (at_end())
                    fail(Category::Lexical, "lex.unterminated-string", "unterminated string", start);
                char e = src_[i_];
                if (e != '"' && e != '\\')
                    fail(Category::Lexical, "lex.bad-escape", "unknown escape \\" + std::string(1, e), here());
                advance();
                out += e;
                continue;
            }
            out += c;
        }
        return out;
    }

    std::string_view src_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

// ---------------------------------------------------------------------------
// Raw syntax tree

struct RawMatrix
{
    std::vector<std::vector<Rational>> rows;
    Position pos;
};

struct RawValue
{
    enum Kind
    {
        Nat,
        Name,
        Matrix,
        Label,
    } kind = Nat;
    std::size_t nat = 0;
    bool nat_overflow = false;
    std::string text;
    RawMatrix matrix;
    Position pos;
};

struct RawField
{
    std::string key;
    Position key_pos;
    RawValue value;
};

struct RawItem
{
    std::string kind;   // space, map, zigzag, extension, nodes, gluing
    std::string name;
    Position name_pos;
    Span span;
    // space
    RawValue dim;
    // map
    std::string source, target;
    Position source_pos, target_pos;
    RawMatrix matrix;
    // zigzag, gluing
    std::vector<RawField> fields;
    // extension
    std::string sub, quot;
    Position sub_pos, quot_pos;
    std::string class_kind;   // "scalar", "row", "u"
    Rational scalar;
    RawMatrix class_matrix;
    Position class_pos;
    // nodes
    std::vector<std::pair<std::string, Position>> names;
};

class Parser
{
  public:
    explicit Parser(std::string_view src) : lex_(src) {}

    std::vector<RawItem> document()
    {
        std::vector<RawItem> items;
        while (peek().kind != Tok::End)
            items.push_back(item());
        return items;
    }

  private:
    Token peek()
    {
        Lexer copy = lex_;
        return copy.next();
    }

    Token take()
    {
        Token t = lex_.next();
        last_end_ = t.end;
        return t;
    }

    Token expect(Tok kind, const std::string& what)
    {
        Token t = take();
        if (t.kind != kind)
            fail(Category::Syntax, "syntax.expected",
                 "expected " + what + ", found " + (t.text.empty() ? describe(t.kind) : "'" + t.text + "'"), t.pos);
        return t;
    }

    Token keyword(const std::string& word)
    {
        Token t = take();
        if (t.kind != Tok::Ident || t.text != word)
            fail(Category::Syntax, "syntax.expected",
                 "expected '" + word + "', found " + (t.text.empty() ? describe(t.kind) : "'" + t.text + "'"), t.pos);
        return t;
    }

    bool accept(Tok kind)
    {
        if (peek().kind != kind)
            return false;
        take();
        return true;
    }

    RawValue nat(const Token& t)
    {
        RawValue v;
        v.kind = RawValue::Nat;
        v.pos = t.pos;
        v.text = t.text;
        if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos)
            fail(Category::Syntax, "syntax.expected", "expected a natural number, found '" + t.text + "'", t.pos);
        std::size_t n = 0;
        for (char c : t.text)
        {
            if (n > kMaxDim)
            {
                v.nat_overflow = true;
                break;
            }
            n = n * 10 + static_cast<std::size_t>(c - '0');
        }
        v.nat = n;
        v.nat_overflow = v.nat_overflow || n > kMaxDim;
        return v;
    }

    Rational rational()
    {
        Token t = expect(Tok::Number, "a rational number");
        auto q = parse_rational(t.text);
        if (!q)
            fail(Category::Lexical, "lex.bad-rational", "malformed rational literal '" + t.text + "'", t.pos);
        return *q;
    }

    RawMatrix matrix()
    {
        RawMatrix m;
        m.pos = expect(Tok::LBracket, "'['").pos;
        if (accept(Tok::RBracket))
            return m;
        while (true)
        {
            std::vector<Rational> row{rational()};
            while (accept(Tok::Comma))
                row.push_back(rational());
            m.rows.push_back(std::move(row));
            Token t = take();
            if (t.kind == Tok::RBracket)
                break;
            if (t.kind != Tok::Semi)
                fail(Category::Syntax, "syntax.expected", "expected ',', ';' or ']' in matrix", t.pos);
        }
        return m;
    }

    /** NAT, NAME or matrix. */
    RawValue value()
    {
        Token t = peek();
        if (t.kind == Tok::Number)
            return nat(take());
        if (t.kind == Tok::Ident)
        {
            take();
            RawValue v;
            v.kind = RawValue::Name;
            v.text = t.text;
            v.pos = t.pos;
            return v;
        }
        if (t.kind == Tok::LBracket)
        {
            RawValue v;
            v.kind = RawValue::Matrix;
            v.matrix = matrix();
            v.pos = v.matrix.pos;
            return v;
        }
        fail(Category::Syntax, "syntax.expected", "expected a number, a name or a matrix", t.pos);
    }

    std::vector<RawField> fields()
    {
        std::vector<RawField> out;
        expect(Tok::LBrace, "'{'");
        while (!accept(Tok::RBrace))
        {
            Token key = expect(Tok::Ident, "a field name");
            expect(Tok::Equals, "'='");
            RawField f{key.text, key.pos, {}};
            if (key.text == "open")
            {
                Token l = lex_.label();
                last_end_ = l.end;
                f.value.kind = RawValue::Label;
                f.value.text = l.text;
                f.value.pos = l.pos;
            }
            else
            {
                f.value = value();
            }
            out.push_back(std::move(f));
            if (!accept(Tok::Comma))
            {
                expect(Tok::RBrace, "',' or '}'");
                break;
            }
        }
        return out;
    }

    RawItem item()
    {
        Token kw = take();
        if (kw.kind != Tok::Ident)
            fail(Category::Syntax, "syntax.expected", "expected a declaration", kw.pos);
        RawItem it;
        it.kind = kw.text;
        it.span.begin = kw.pos;
        if (kw.text == "nodes")
        {
            it.name = "nodes";
            it.name_pos = kw.pos;
            expect(Tok::LBrace, "'{'");
            if (!accept(Tok::RBrace))
            {
                do
                {
                    Token n = expect(Tok::Ident, "a node name");
                    it.names.emplace_back(n.text, n.pos);
                } while (accept(Tok::Comma));
                expect(Tok::RBrace, "',' or '}'");
            }
            it.span.end = last_end_;
            return it;
        }
        if (kw.text != "space" && kw.text != "map" && kw.text != "zigzag" && kw.text != "extension" &&
            kw.text != "gluing")
            fail(Category::Syntax, "syntax.unknown-declaration", "unknown declaration '" + kw.text + "'", kw.pos);
        Token name = expect(Tok::Ident, "a name");
        it.name = name.text;
        it.name_pos = name.pos;

        if (kw.text == "space")
        {
            keyword("dim");
            it.dim = nat(take());
        }
        else if (kw.text == "map")
        {
            expect(Tok::Colon, "':'");
            Token s = expect(Tok::Ident, "a source space");
            expect(Tok::Arrow, "'->'");
            Token t = expect(Tok::Ident, "a target space");
            expect(Tok::Equals, "'='");
            it.source = s.text;
            it.source_pos = s.pos;
            it.target = t.text;
            it.target_pos = t.pos;
            it.matrix = matrix();
        }
        else if (kw.text == "zigzag" || kw.text == "gluing")
        {
            it.fields = fields();
        }
        else
        {
            expect(Tok::Equals, "'='");
            keyword("ext");
            expect(Tok::LParen, "'('");
            Token s = expect(Tok::Ident, "a sub-object name");
            expect(Tok::Comma, "','");
            Token q = expect(Tok::Ident, "a quotient name");
            expect(Tok::RParen, "')'");
            it.sub = s.text;
            it.sub_pos = s.pos;
            it.quot = q.text;
            it.quot_pos = q.pos;
            Token c = take();
            it.class_pos = c.pos;
            if (c.kind == Tok::Ident && c.text == "class")
            {
                if (peek().kind == Tok::LBracket)
                {
                    it.class_kind = "row";
                    it.class_matrix = matrix();
                }
                else
                {
                    it.class_kind = "scalar";
                    it.scalar = rational();
                }
            }
            else if (c.kind == Tok::Ident && c.text == "u")
            {
                it.class_kind = "u";
                it.class_matrix = matrix();
            }
            else
            {
                fail(Category::Syntax, "syntax.expected", "expected 'class' or 'u'", c.pos);
            }
        }
        it.span.end = last_end_;
        return it;
    }

    Lexer lex_;
    Position last_end_;
};

// ---------------------------------------------------------------------------
// Resolution

class Resolver
{
  public:
    Resolver(std::vector<RawItem> items, const ParseOptions& opt) : raw_(std::move(items)), opt_(opt) {}

    ParseResult run()
    {
        collect();
        for (auto* it : by_kind("space"))
            space(*it);
        for (auto* it : by_kind("map"))
            map(*it);
        for (auto* it : by_kind("zigzag"))
            zigzag(*it);
        for (auto* it : by_kind("extension"))
            extension(*it);
        for (auto* it : by_kind("nodes"))
            nodes(*it);
        for (auto* it : by_kind("gluing"))
            gluing(*it);
        if (doc_.nodes && opt_.validate)
            check_nodes();

        ParseResult r;
        std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return std::tie(a.position.line, a.position.column) < std::tie(b.position.line, b.position.column);
        });
        r.diagnostics = std::move(diags_);
        if (r.diagnostics.empty())
            r.document = std::move(doc_);
        return r;
    }

  private:
    void error(Category cat, std::string code, std::string message, Position pos)
    {
        diags_.push_back({std::move(code), cat, Severity::Error, std::move(message), pos});
    }

    std::vector<RawItem*> by_kind(const std::string& kind)
    {
        std::vector<RawItem*> out;
        for (auto& it : items_)
        {
            if (it.raw.kind == kind && !it.duplicate)
                out.push_back(&it.raw);
        }
        return out;
    }

    void collect()
    {
        std::set<std::pair<std::string, std::string>> seen;
        for (auto& raw : raw_)
        {
            bool dup = !seen.insert({raw.kind, raw.name}).second;
            if (dup)
            {
                if (raw.kind == "nodes")
                    error(Category::Semantic, "semantic.duplicate", "only one nodes block is allowed", raw.name_pos);
                else
                    error(Category::Semantic, "semantic.duplicate", raw.kind + " '" + raw.name + "' declared twice",
                          raw.name_pos);
            }
            items_.push_back({std::move(raw), dup});
        }
    }

    std::optional<std::size_t> dim_of(const RawValue& v, const std::string& what)
    {
        if (v.kind == RawValue::Nat)
        {
            if (v.nat_overflow)
            {
                error(Category::Semantic, "semantic.limit",
                      what + " = " + v.text + " exceeds the limit " + std::to_string(kMaxDim), v.pos);
                return std::nullopt;
            }
            return v.nat;
        }
        if (v.kind == RawValue::Name)
        {
            auto it = doc_.spaces.find(v.text);
            if (it == doc_.spaces.end())
            {
                error(Category::Semantic, "semantic.unresolved", "unknown space '" + v.text + "' for " + what, v.pos);
                return std::nullopt;
            }
            return it->second.dim;
        }
        error(Category::Semantic, "semantic.value", what + " must be a dimension or a space name", v.pos);
        return std::nullopt;
    }

    /** Shape errors are reported at `at` when given (the field key), else at the matrix. */
    std::optional<QMatrix> literal(const RawMatrix& m, std::size_t rows, std::size_t cols, const std::string& what,
                                   std::optional<Position> at = std::nullopt)
    {
        Position where = at.value_or(m.pos);
        std::string want = std::to_string(rows) + "x" + std::to_string(cols);
        if (m.rows.empty())
        {
            if (rows * cols == 0)
                return QMatrix(rows, cols);
            error(Category::Semantic, "semantic.dimension", "DimensionMismatch: " + what + " must be " + want + ", got []",
                  where);
            return std::nullopt;
        }
        std::size_t width = m.rows.front().size();
        for (const auto& row : m.rows)
        {
            if (row.size() != width)
            {
                error(Category::Semantic, "semantic.dimension", "DimensionMismatch: " + what + " has rows of unequal length",
                      where);
                return std::nullopt;
            }
        }
        if (m.rows.size() != rows || width != cols)
        {
            error(Category::Semantic, "semantic.dimension",
                  "DimensionMismatch: " + what + " must be " + want + ", got " + std::to_string(m.rows.size()) + "x" +
                      std::to_string(width),
                  where);
            return std::nullopt;
        }
        std::vector<Rational> entries;
        for (const auto& row : m.rows)
            entries.insert(entries.end(), row.begin(), row.end());
        return QMatrix(rows, cols, std::move(entries));
    }

    std::optional<QMatrix> matrix_of(const RawValue& v, std::size_t rows, std::size_t cols, const std::string& what,
                                     std::optional<Position> at = std::nullopt)
    {
        if (v.kind == RawValue::Matrix)
            return literal(v.matrix, rows, cols, what, at);
        if (v.kind == RawValue::Name)
        {
            auto it = doc_.maps.find(v.text);
            if (it == doc_.maps.end())
            {
                error(Category::Semantic, "semantic.unresolved", "unknown map '" + v.text + "' for " + what, v.pos);
                return std::nullopt;
            }
            const QMatrix& m = it->second.matrix;
            if (m.rows() != rows || m.cols() != cols)
            {
                error(Category::Semantic, "semantic.dimension",
                      "DimensionMismatch: " + what + " must be " + std::to_string(rows) + "x" + std::to_string(cols) +
                          ", map '" + v.text + "' is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()),
                      at.value_or(v.pos));
                return std::nullopt;
            }
            return m;
        }
        error(Category::Semantic, "semantic.value", what + " must be a matrix or a map name", v.pos);
        return std::nullopt;
    }

    /** Fields by key; reports unknown, duplicate and missing keys. */
    std::optional<std::map<std::string, const RawField*>> keyed(const RawItem& it, const std::set<std::string>& required,
                                                               const std::set<std::string>& optional)
    {
        std::map<std::string, const RawField*> out;
        bool ok = true;
        for (const auto& f : it.fields)
        {
            if (!required.count(f.key) && !optional.count(f.key))
            {
                error(Category::Semantic, "semantic.key", "unknown key '" + f.key + "' in " + it.kind + " " + it.name,
                      f.key_pos);
                ok = false;
            }
            else if (!out.emplace(f.key, &f).second)
            {
                error(Category::Semantic, "semantic.key", "key '" + f.key + "' given twice in " + it.kind + " " + it.name,
                      f.key_pos);
                ok = false;
            }
        }
        for (const auto& k : required)
        {
            if (!out.count(k))
            {
                error(Category::Semantic, "semantic.key", "missing key '" + k + "' in " + it.kind + " " + it.name,
                      it.name_pos);
                ok = false;
            }
        }
        if (!ok)
            return std::nullopt;
        return out;
    }

    void space(const RawItem& it)
    {
        auto d = dim_of(it.dim, "space " + it.name);
        if (d)
            doc_.spaces[it.name] = {it.name, *d, it.span};
    }

    void map(const RawItem& it)
    {
        auto s = doc_.spaces.find(it.source);
        auto t = doc_.spaces.find(it.target);
        if (s == doc_.spaces.end())
            error(Category::Semantic, "semantic.unresolved", "unknown space '" + it.source + "'", it.source_pos);
        if (t == doc_.spaces.end())
            error(Category::Semantic, "semantic.unresolved", "unknown space '" + it.target + "'", it.target_pos);
        if (s == doc_.spaces.end() || t == doc_.spaces.end())
            return;
        auto m = literal(it.matrix, t->second.dim, s->second.dim, "map " + it.name);
        if (m)
            doc_.maps[it.name] = {it.name, it.source, it.target, *m, it.span};
    }

    void zigzag(const RawItem& it)
    {
        auto f = keyed(it, {"open", "eminus", "ezero", "A", "B", "alpha", "beta", "gamma"}, {});
        if (!f)
            return;
        const RawField& open = *f->at("open");
        auto em = dim_of(f->at("eminus")->value, "eminus");
        auto ez = dim_of(f->at("ezero")->value, "ezero");
        auto a = dim_of(f->at("A")->value, "A");
        auto b = dim_of(f->at("B")->value, "B");
        if (!em || !ez || !a || !b)
            return;
        auto alpha = matrix_of(f->at("alpha")->value, *a, *em, "alpha", f->at("alpha")->key_pos);
        auto beta = matrix_of(f->at("beta")->value, *b, *a, "beta", f->at("beta")->key_pos);
        auto gamma = matrix_of(f->at("gamma")->value, *ez, *b, "gamma", f->at("gamma")->key_pos);
        if (!alpha || !beta || !gamma)
            return;
        ZigZag z{open.value.text, *em, *ez, *a, *b, *alpha, *beta, *gamma};
        if (opt_.validate)
        {
            for (const auto& c : validate(z).failures())
            {
                Position pos = open.value.pos;
                if (c.name == "exact at A")
                    pos = f->at("beta")->value.pos;
                else if (c.name == "exact at B")
                    pos = f->at("gamma")->value.pos;
                error(Category::Validation, c.name == "zero open part" ? "validation.open-part" : "validation.not-exact",
                      "NotExact: zigzag " + it.name + " " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"),
                      pos);
            }
        }
        doc_.zigzags[it.name] = {it.name, std::move(z), it.span};
    }

    const ZigZag* zigzag_ref(const std::string& name, Position pos)
    {
        auto it = doc_.zigzags.find(name);
        if (it != doc_.zigzags.end())
            return &it->second.value;
        bool declared = std::any_of(items_.begin(), items_.end(), [&](const Entry& e) {
            return e.raw.kind == "zigzag" && e.raw.name == name;
        });
        if (!declared)
            error(Category::Semantic, "semantic.unresolved", "unknown zigzag '" + name + "'", pos);
        return nullptr;
    }

    void extension(const RawItem& it)
    {
        const ZigZag* sub = zigzag_ref(it.sub, it.sub_pos);
        const ZigZag* quot = zigzag_ref(it.quot, it.quot_pos);
        if (!sub || !quot)
            return;
        try
        {
            ExtensionPresentation e;
            if (it.class_kind == "scalar")
            {
                e = make_extension(*sub, *quot, it.scalar);
            }
            else if (it.class_kind == "row")
            {
                if (it.class_matrix.rows.size() > 1)
                {
                    error(Category::Semantic, "semantic.dimension", "class row must be a single row", it.class_matrix.pos);
                    return;
                }
                std::vector<Rational> row = it.class_matrix.rows.empty() ? std::vector<Rational>{}
                                                                         : it.class_matrix.rows.front();
                e = make_extension(*sub, *quot, row);
            }
            else
            {
                auto u = literal(it.class_matrix, sub->b_dim, quot->a_dim, "u");
                if (!u)
                    return;
                e = make_extension(*sub, *quot, *u);
            }
            doc_.extensions[it.name] = {it.name, it.sub, it.quot, std::move(e), it.span};
        }
        catch (const Error& ex)
        {
            bool semantic = ex.kind() == ErrorKind::ShapeMismatch || ex.kind() == ErrorKind::RegimeMismatch ||
                            ex.kind() == ErrorKind::NotPointSupported;
            error(semantic ? Category::Semantic : Category::Validation,
                  semantic ? "semantic.extension" : "validation.extension",
                  "extension " + it.name + ": " + ex.what(), it.class_pos);
        }
    }

    void nodes(const RawItem& it)
    {
        NodesItem n;
        n.span = it.span;
        std::set<std::string> seen;
        for (const auto& [name, pos] : it.names)
        {
            if (!seen.insert(name).second)
                error(Category::Semantic, "semantic.duplicate", "DuplicateNode: node " + name + " listed twice", pos);
            else if (!doc_.extensions.count(name) &&
                     std::none_of(items_.begin(), items_.end(), [&](const Entry& e) {
                         return e.raw.kind == "extension" && e.raw.name == name;
                     }))
                error(Category::Semantic, "semantic.unresolved", "unknown extension '" + name + "' in nodes", pos);
            n.names.push_back(name);
        }
        nodes_pos_ = it.name_pos;
        doc_.nodes = std::move(n);
    }

    void check_nodes()
    {
        std::vector<NodeDatum> data;
        for (const auto& name : doc_.nodes->names)
        {
            auto it = doc_.extensions.find(name);
            if (it == doc_.extensions.end())
                return;
            data.push_back({name, it->second.value, std::nullopt});
        }
        if (data.empty())
            return;
        try
        {
            assemble("C_bulk", data.front().local.sub.open_label, data);
        }
        catch (const Error& ex)
        {
            error(Category::Validation, "validation.nodes", ex.what(), nodes_pos_);
        }
    }

    void gluing(const RawItem& it)
    {
        auto f = keyed(it, {"psi", "u", "v"}, {"N", "blocks"});
        if (!f)
            return;
        auto psi = dim_of(f->at("psi")->value, "psi");
        if (!psi)
            return;
        const RawValue& uv = f->at("u")->value;
        std::size_t m2 = 0;
        if (uv.kind == RawValue::Matrix)
            m2 = uv.matrix.rows.size();
        else if (uv.kind == RawValue::Name && doc_.maps.count(uv.text))
            m2 = doc_.maps.at(uv.text).matrix.rows();
        auto u = matrix_of(uv, m2, *psi, "u", f->at("u")->key_pos);
        auto v = matrix_of(f->at("v")->value, *psi, m2, "v", f->at("v")->key_pos);
        if (!u || !v)
            return;

        GluingQuadruple g;
        g.psi_dim = *psi;
        g.u = *u;
        g.v = *v;
        if (f->count("blocks"))
        {
            const RawValue& bv = f->at("blocks")->value;
            if (bv.kind != RawValue::Matrix)
            {
                error(Category::Semantic, "semantic.value", "blocks must be a [begin, end, rank; ...] table", bv.pos);
                return;
            }
            std::size_t total = 0;
            for (const auto& row : bv.matrix.rows)
            {
                bool ok = row.size() == 3;
                std::array<std::size_t, 3> vals{};
                for (std::size_t k = 0; ok && k < 3; ++k)
                {
                    const Rational& x = row[k];
                    ok = x >= 0 && denominator(x) == 1 && x <= Rational(static_cast<long>(kMaxDim));
                    if (ok)
                        vals[k] = numerator(x).convert_to<std::size_t>();
                }
                if (!ok || vals[0] > vals[1] || vals[1] > *psi)
                {
                    error(Category::Semantic, "semantic.value",
                          "each block row must be begin, end, rank with 0 <= begin <= end <= psi", bv.pos);
                    return;
                }
                g.decomposition.push_back({"", vals[0], vals[1]});
                g.m2_dims.push_back(vals[2]);
                total += vals[2];
            }
            if (total != m2)
            {
                error(Category::Semantic, "semantic.dimension",
                      "DimensionMismatch: block ranks sum to " + std::to_string(total) + " but u has " +
                          std::to_string(m2) + " rows",
                      bv.pos);
                return;
            }
        }
        else
        {
            // One rank-one node per row of u, spanning the support of that row and of v's column.
            for (std::size_t i = 0; i < m2; ++i)
            {
                std::size_t lo = *psi, hi = 0;
                for (std::size_t j = 0; j < *psi; ++j)
                {
                    if (g.u(i, j) != 0 || g.v(j, i) != 0)
                    {
                        lo = std::min(lo, j);
                        hi = std::max(hi, j + 1);
                    }
                }
                if (lo > hi)
                    lo = hi = 0;
                g.decomposition.push_back({"", lo, hi});
                g.m2_dims.push_back(1);
            }
        }
        bool explicit_n = f->count("N") > 0;
        if (explicit_n)
        {
            auto n = matrix_of(f->at("N")->value, *psi, *psi, "N", f->at("N")->key_pos);
            if (!n)
                return;
            g.n = *n;
        }
        else
        {
            g.n = g.v * g.u;
        }
        label_nodes(g);
        if (opt_.validate)
        {
            Report rep = verify_gluing(g);
            for (const auto& c : rep.failures())
                error(Category::Validation, "validation.gluing",
                      "gluing " + it.name + ": " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"),
                      it.name_pos);
        }
        doc_.gluings[it.name] = {it.name, std::move(g), explicit_n, it.span};
    }

    /** Node labels come from the nodes block when the counts agree. */
    void label_nodes(GluingQuadruple& g)
    {
        bool from_nodes = doc_.nodes && doc_.nodes->names.size() == g.decomposition.size();
        for (std::size_t k = 0; k < g.decomposition.size(); ++k)
            g.decomposition[k].label = from_nodes ? doc_.nodes->names[k] : "n" + std::to_string(k + 1);
    }

    struct Entry
    {
        RawItem raw;
        bool duplicate = false;
    };

    std::vector<RawItem> raw_;
    std::vector<Entry> items_;
    ParseOptions opt_;
    Document doc_;
    std::vector<Diagnostic> diags_;
    Position nodes_pos_;
};

}   // namespace

ParseResult parse(std::string_view text, const ParseOptions& options)
{
    ParseResult r;
    try
    {
        Parser p(text);
        return Resolver(p.document(), options).run();
    }
    catch (const Failure& f)
    {
        r.diagnostics.push_back(f.diag);
    }
    catch (const std::exception& e)
    {
        r.diagnostics.push_back({"internal", Category::Semantic, Severity::Error, e.what(), {1, 1}});
    }
    return r;
}

// ---------------------------------------------------------------------------
// Document

bool Document::empty() const
{
    return spaces.empty() && maps.empty() && zigzags.empty() && extensions.empty() && !nodes && gluings.empty();
}

std::vector<NodeDatum> Document::node_data() const
{
    std::vector<NodeDatum> out;
    if (!nodes)
        return out;
    for (const auto& name : nodes->names)
    {
        auto it = extensions.find(name);
        if (it != extensions.end())
            out.push_back({name, it->second.value, std::nullopt});
    }
    return out;
}

bool operator==(const Document& a, const Document& b)
{
    auto same = [](const auto& x, const auto& y, auto eq) {
        if (x.size() != y.size())
            return false;
        return std::equal(x.begin(), x.end(), y.begin(),
                          [&](const auto& p, const auto& q) { return p.first == q.first && eq(p.second, q.second); });
    };
    bool spaces = same(a.spaces, b.spaces, [](const SpaceItem& x, const SpaceItem& y) { return x.dim == y.dim; });
    bool maps = same(a.maps, b.maps, [](const MapItem& x, const MapItem& y) {
        return x.source == y.source && x.target == y.target && x.matrix == y.matrix;
    });
    bool zigzags =
        same(a.zigzags, b.zigzags, [](const ZigZagItem& x, const ZigZagItem& y) { return x.value == y.value; });
    bool exts = same(a.extensions, b.extensions, [](const ExtensionItem& x, const ExtensionItem& y) {
        return x.sub == y.sub && x.quot == y.quot && x.value == y.value;
    });
    bool nodes = a.nodes.has_value() == b.nodes.has_value() && (!a.nodes || a.nodes->names == b.nodes->names);
    bool gluings = same(a.gluings, b.gluings, [](const GluingItem& x, const GluingItem& y) {
        const auto& g = x.value;
        const auto& h = y.value;
        return x.explicit_n == y.explicit_n && g.psi_dim == h.psi_dim && g.decomposition == h.decomposition &&
               g.m2_dims == h.m2_dims && g.u == h.u && g.v == h.v && g.n == h.n;
    });
    return spaces && maps && zigzags && exts && nodes && gluings;
}

// ---------------------------------------------------------------------------
// Serialization

std::string render_label(const std::string& label)
{
    bool bare = !label.empty() && std::all_of(label.begin(), label.end(), is_label_char);
    if (bare)
        return label;
    std::string out = "\"";
    for (char c : label)
    {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + '"';
}

std::string render_matrix(const QMatrix& m)
{
    if (m.empty())
        return "[]";
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        if (i)
            out += "; ";
        for (std::size_t j = 0; j < m.cols(); ++j)
            out += (j ? ", " : "") + zz::to_string(m(i, j));
    }
    return out + "]";
}

namespace {

std::string render_row(const std::vector<Rational>& row)
{
    std::string out = "[";
    for (std::size_t i = 0; i < row.size(); ++i)
        out += (i ? ", " : "") + zz::to_string(row[i]);
    return out + "]";
}

}   // namespace

std::string serialize(const Document& d)
{
    std::ostringstream out;
    for (const auto& [name, s] : d.spaces)
        out << "space " << name << " dim " << s.dim << "\n";
    for (const auto& [name, m] : d.maps)
        out << "map " << name << " : " << m.source << " -> " << m.target << " = " << render_matrix(m.matrix) << "\n";
    for (const auto& [name, z] : d.zigzags)
    {
        const ZigZag& v = z.value;
        out << "zigzag " << name << " {\n"
            << "  open = " << render_label(v.open_label) << ",\n"
            << "  eminus = " << v.e_minus << ",\n"
            << "  ezero = " << v.e_zero << ",\n"
            << "  A = " << v.a_dim << ",\n"
            << "  B = " << v.b_dim << ",\n"
            << "  alpha = " << render_matrix(v.alpha) << ",\n"
            << "  beta = " << render_matrix(v.beta) << ",\n"
            << "  gamma = " << render_matrix(v.gamma) << "\n"
            << "}\n";
    }
    for (const auto& [name, e] : d.extensions)
    {
        out << "extension " << name << " = ext(" << e.sub << ", " << e.quot << ") ";
        const ExtensionPresentation& p = e.value;
        if (p.regime() == Regime::Block)
            out << "u " << render_matrix(p.u_block);
        else if (p.class_values.size() == 1)
            out << "class " << zz::to_string(p.class_values.front());
        else
            out << "class " << render_row(p.class_values);
        out << "\n";
    }
    if (d.nodes)
    {
        out << "nodes {";
        for (std::size_t i = 0; i < d.nodes->names.size(); ++i)
            out << (i ? ", " : " ") << d.nodes->names[i];
        out << (d.nodes->names.empty() ? "}" : " }") << "\n";
    }
    for (const auto& [name, g] : d.gluings)
    {
        const GluingQuadruple& q = g.value;
        out << "gluing " << name << " {\n"
            << "  psi = " << q.psi_dim << ",\n"
            << "  u = " << render_matrix(q.u) << ",\n"
            << "  v = " << render_matrix(q.v) << ",\n";
        if (g.explicit_n)
            out << "  N = " << render_matrix(q.n) << ",\n";
        out << "  blocks = [";
        for (std::size_t k = 0; k < q.decomposition.size(); ++k)
            out << (k ? "; " : "") << q.decomposition[k].begin << ", " << q.decomposition[k].end << ", " << q.m2_dims[k];
        out << "]\n}\n";
    }
    return out.str();
}

nlohmann::json to_json(const Document& d)
{
    nlohmann::json j = nlohmann::json::object();
    nlohmann::json spaces = nlohmann::json::object();
    for (const auto& [name, s] : d.spaces)
        spaces[name] = {{"dim", s.dim}};
    nlohmann::json maps = nlohmann::json::object();
    for (const auto& [name, m] : d.maps)
        maps[name] = {{"source", m.source}, {"target", m.target}, {"matrix", zz::to_json(m.matrix)}};
    nlohmann::json zigzags = nlohmann::json::object();
    for (const auto& [name, z] : d.zigzags)
        zigzags[name] = zz::to_json(z.value);
    nlohmann::json exts = nlohmann::json::object();
    for (const auto& [name, e] : d.extensions)
    {
        nlohmann::json x = zz::to_json(e.value);
        x["sub_name"] = e.sub;
        x["quot_name"] = e.quot;
        exts[name] = std::move(x);
    }
    nlohmann::json gluings = nlohmann::json::object();
    for (const auto& [name, g] : d.gluings)
    {
        nlohmann::json x = zz::to_json(g.value);
        x["explicit_N"] = g.explicit_n;
        gluings[name] = std::move(x);
    }
    j["spaces"] = std::move(spaces);
    j["maps"] = std::move(maps);
    j["zigzags"] = std::move(zigzags);
    j["extensions"] = std::move(exts);
    j["nodes"] = d.nodes ? nlohmann::json(d.nodes->names) : nlohmann::json(nullptr);
    j["gluings"] = std::move(gluings);
    return j;
}

}   // namespace zz::zzl

#include <catch_amalgamated.hpp>

#include "support.hpp"
#include "zz/zzl.hpp"

using namespace zz;
using namespace zz::zzl;
using zz::test::Rng;

namespace {

const char* kSky = "zigzag sky { open = 0, eminus = 0, ezero = 0, A = 1, B = 1, alpha = [], beta = [1], gamma = [] }";


/** Every diagnostic sits on an existing line, at most one past its end. */
bool positions_valid(const std::string& text, const ParseResult& r)
{
    std::vector<std::size_t> lengths;
    std::size_t cur = 0;
    for (char c : text)
    {
        if (c == '\n')
        {
            lengths.push_back(cur);
            cur = 0;
        }
        else
        {
            ++cur;
        }
    }
    lengths.push_back(cur);
    for (const auto& d : r.diagnostics)
    {
        if (d.position.line < 1 || d.position.line > lengths.size() || d.position.column < 1 ||
            d.position.column > lengths[d.position.line - 1] + 1)
            return false;
    }
    return true;
}

std::string first_code(const ParseResult& r)
{
    return r.diagnostics.empty() ? "" : r.diagnostics.front().code;
}

}   // namespace

TEST_CASE("parse examples", "[zzl]")
{
    ParseResult r = parse(kSky);
    REQUIRE(r.ok());
    CHECK(r.diagnostics.empty());
    CHECK(r.document->zigzags.at("sky").value == std_skyscraper(1));

    ParseResult empty = parse("");
    REQUIRE(empty.ok());
    CHECK(empty.document->empty());
    CHECK(parse("  # only a comment\n\n").document->empty());

    std::string bad = "zigzag sky { open = 0, eminus = 0, ezero = 0, A = 1, B = 1, alpha = [], beta = [1,0], gamma = [] }";
    ParseResult d = parse(bad);
    CHECK_FALSE(d.ok());
    REQUIRE(d.diagnostics.size() >= 1);
    CHECK(d.diagnostics.front().code == "semantic.dimension");
    CHECK(d.diagnostics.front().category == Category::Semantic);
    CHECK(d.diagnostics.front().position == Position{1, bad.find("beta") + 1});
    CHECK(d.diagnostics.front().message.find("DimensionMismatch") != std::string::npos);
}

TEST_CASE("diagnostic codes by category", "[zzl]")
{
    CHECK(first_code(parse("space V dim 1/0")) == "lex.bad-rational");
    CHECK(first_code(parse("map f : V -> V = [1/0]")) == "lex.bad-rational");
    CHECK(first_code(parse("space V dim 1\n@")) == "lex.unexpected-char");
    CHECK(first_code(parse("zigzag z { open = \"abc")) == "lex.unterminated-string");
    CHECK(first_code(parse("space V")) == "syntax.expected");
    CHECK(first_code(parse("widget w")) == "syntax.unknown-declaration");
    CHECK(first_code(parse("space V dim 1\nspace V dim 2")) == "semantic.duplicate");
    CHECK(first_code(parse("map f : V -> V = [1]")) == "semantic.unresolved");
    CHECK(first_code(parse("space V dim 99999")) == "semantic.limit");

    ParseResult lex = parse("space V dim 1/0");
    CHECK(lex.diagnostics.front().category == Category::Lexical);
    CHECK(lex.diagnostics.front().position == Position{1, 13});
    CHECK(to_string(lex.diagnostics.front()).rfind("1:13: error[lex.bad-rational]", 0) == 0);
}

TEST_CASE("validation failures are separate from parse errors", "[zzl]")
{
    std::string text = test::read_file(test::fixture("corrupted"));
    ParseResult r = parse(text);
    CHECK_FALSE(r.ok());
    CHECK(r.only_validation_failures());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics.front().code == "validation.not-exact");
    CHECK(r.diagnostics.front().message.find("at A") != std::string::npos);
    CHECK(positions_valid(text, r));

    ParseResult lax = parse(text, {false});
    REQUIRE(lax.ok());
    CHECK_FALSE(is_valid(lax.document->zigzags.at("bad").value));

    for (const char* stem : {"gluing_bad", "gluing_wrong_n"})
    {
        ParseResult g = parse(test::read_file(test::fixture(stem)));
        CHECK_FALSE(g.ok());
        CHECK(g.only_validation_failures());
        CHECK(first_code(g) == "validation.gluing");
    }
    for (const char* stem : {"malformed_rational", "malformed_syntax", "malformed_dimension", "malformed_unresolved",
                             "malformed_duplicate"})
    {
        std::string t = test::read_file(test::fixture(stem));
        ParseResult m = parse(t);
        CHECK_FALSE(m.ok());
        CHECK_FALSE(m.only_validation_failures());
        CHECK(positions_valid(t, m));
    }
}

TEST_CASE("parse then serialize is the identity on the fixture corpus", "[zzl]")
{
    for (const auto& stem : test::fixture_names())
    {
        INFO(stem);
        ParseResult r = parse(test::read_file(test::fixture(stem)));
        REQUIRE(r.ok());
        std::string text = serialize(*r.document);
        ParseResult again = parse(text);
        REQUIRE(again.ok());
        CHECK(*again.document == *r.document);
        CHECK(serialize(*again.document) == text);
        CHECK(to_json(*again.document).dump() == to_json(*r.document).dump());
    }
}

TEST_CASE("serialization rules", "[zzl]")
{
    ParseResult r = parse(test::read_file(test::fixture("three_nodes")));
    REQUIRE(r.ok());
    std::string text = serialize(*r.document);
    CHECK(text.find("class -1/2") != std::string::npos);
    CHECK(text.find("-2/4") == std::string::npos);

    ParseResult rev = parse(test::read_file(test::fixture("reversed_nodes")));
    REQUIRE(rev.ok());
    REQUIRE(rev.document->nodes);
    CHECK(rev.document->nodes->names == std::vector<std::string>{"p2", "p1"});
    std::string rtext = serialize(*rev.document);
    CHECK(rtext.find("nodes { p2, p1 }") != std::string::npos);
    CHECK(parse(rtext).document->nodes->names == std::vector<std::string>{"p2", "p1"});

    // Kind-then-name order regardless of input order.
    ParseResult mixed = parse(std::string(kSky) + "\nspace B dim 1\nspace A dim 2\n");
    REQUIRE(mixed.ok());
    std::string m = serialize(*mixed.document);
    CHECK(m.find("space A") < m.find("space B"));
    CHECK(m.find("space B") < m.find("zigzag sky"));
}

TEST_CASE("document contents", "[zzl]")
{
    ParseResult sm = parse(test::read_file(test::fixture("spaces_maps")));
    REQUIRE(sm.ok());
    const Document& d = *sm.document;
    CHECK(d.spaces.at("P").dim == 1);
    CHECK(d.maps.at("inc").matrix == QMatrix::identity(1));
    CHECK(d.maps.at("none").matrix.cols() == 0);
    const ZigZag& z = d.zigzags.at("via_maps").value;
    CHECK(z.open_label == "Q_U[3]");
    CHECK(z.alpha == QMatrix::identity(1));

    ParseResult t1 = parse(test::read_file(test::fixture("table1")));
    REQUIRE(t1.ok());
    CHECK(t1.document->zigzags.at("ic").value == std_ic("Q_U[3]", 1, 1));
    CHECK(t1.document->zigzags.at("corrected").value == std_corrected("Q_U[3]", 1, 1));
    CHECK(t1.document->zigzags.at("sky3").value == std_skyscraper(3));
    CHECK(t1.document->extensions.at("P").value == test::odp(1));
    CHECK(t1.document->extensions.at("split").value == test::odp(0));

    ParseResult gen = parse(test::read_file(test::fixture("general")));
    REQUIRE(gen.ok());
    CHECK(gen.document->extensions.at("E_half").value.u_block == QMatrix::from_rows({{Rational(1, 2)}}));

    ParseResult three = parse(test::read_file(test::fixture("three_nodes")));
    REQUIRE(three.ok());
    std::vector<NodeDatum> nodes = three.document->node_data();
    REQUIRE(nodes.size() == 3);
    CHECK(nodes[2].label == "p3");
    CHECK(nodes[2].local.class_scalar() == Rational(-1, 2));

    ParseResult gl = parse(test::read_file(test::fixture("gluing")));
    REQUIRE(gl.ok());
    const GluingItem& pair = gl.document->gluings.at("pair");
    CHECK(pair.explicit_n);
    CHECK(pair.value.decomposition.size() == 2);
    CHECK(verify_gluing(pair.value).passed());
    CHECK(gl.document->gluings.at("single").value.n == QMatrix::from_rows({{0, 0}, {1, 0}}));
}

TEST_CASE("labels", "[zzl]")
{
    CHECK(render_label("Q_U[3]") == "Q_U[3]");
    CHECK(render_label("two words") == "\"two words\"");
    CHECK(render_matrix(QMatrix::from_rows({{1, Rational(-1, 2)}, {0, 3}})) == "[1, -1/2; 0, 3]");
    CHECK(render_matrix(QMatrix(0, 2)) == "[]");
    ParseResult r = parse("zigzag z { open = \"a \\\"b\\\"\", eminus = 0, ezero = 0, A = 0, B = 0, alpha = [], beta = [], gamma = [] }");
    REQUIRE(r.ok());
    CHECK(r.document->zigzags.at("z").value.open_label == "a \"b\"");
    CHECK(*parse(serialize(*r.document)).document == *r.document);
}

TEST_CASE("fuzzed inputs yield diagnostics, never crashes", "[zzl][fuzz]")
{
    Rng rng(0xf022);
    std::vector<std::string> corpus;
    for (const auto& stem : test::fixture_names())
        corpus.push_back(test::read_file(test::fixture(stem)));
    std::size_t failures = 0;
    for (int i = 0; i < 2000; ++i)
    {
        std::string text;
        if (i % 2 == 0)
        {
            text = test::fuzz_input(rng);
        }
        else
        {
            text = corpus[static_cast<std::size_t>(i) % corpus.size()];
            std::uniform_int_distribution<std::size_t> pos(0, text.size() - 1);
            for (int k = 0; k < 3; ++k)
                text[pos(rng)] = static_cast<char>(std::uniform_int_distribution<int>(0, 255)(rng));
        }
        ParseResult r;
        REQUIRE_NOTHROW(r = parse(text));
        if (!r.ok())
        {
            ++failures;
            CHECK_FALSE(r.diagnostics.empty());
        }
        CHECK(positions_valid(text, r));
    }
    CHECK(failures > 0);
}

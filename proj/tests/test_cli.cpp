#include <catch_amalgamated.hpp>

#include <cstdio>
#include "support.hpp"
#include "zz/cli.hpp"

using namespace zz::cli;
using zz::test::fixture;

namespace {

CommandResult run_args(std::vector<std::string> args)
{
    return run(args);
}

}   // namespace

TEST_CASE("tables are rebuilt and verified", "[cli]")
{
    std::vector<TableRow> rows = build_tables();
    REQUIRE(rows.size() == 7);
    CHECK(std::count_if(rows.begin(), rows.end(), [](const TableRow& r) { return r.table == 1; }) == 4);
    CHECK(std::count_if(rows.begin(), rows.end(), [](const TableRow& r) { return r.table == 2; }) == 3);
    for (const auto& r : rows)
    {
        INFO(r.object << ": " << r.detail);
        CHECK(r.verified);
    }

    CommandResult res = run_args({"tables"});
    CHECK(res.exit_code == kSuccess);
    std::size_t verified = 0;
    for (std::size_t p = res.payload.find("VERIFIED"); p != std::string::npos; p = res.payload.find("VERIFIED", p + 1))
        ++verified;
    CHECK(verified == 7);
    CHECK(res.payload.find("(Q_U[3],0,0,0,0,0)") != std::string::npos);
    CHECK(res.payload.find("(0,Q,Q,0,id,0)") != std::string::npos);
}

TEST_CASE("exit-code contract on the fixture corpus", "[cli]")
{
    for (const auto& stem : zz::test::fixture_names())
    {
        INFO(stem);
        CHECK(run_args({"check", fixture(stem)}).exit_code == kSuccess);
    }
    for (const char* stem : {"corrupted", "gluing_bad", "gluing_wrong_n"})
    {
        INFO(stem);
        CHECK(run_args({"check", fixture(stem)}).exit_code == kCheckFailed);
    }
    for (const char* stem : {"malformed_rational", "malformed_syntax", "malformed_dimension", "malformed_unresolved",
                             "malformed_duplicate"})
    {
        INFO(stem);
        CHECK(run_args({"check", fixture(stem)}).exit_code == kUsageError);
    }
    CommandResult bad = run_args({"check", fixture("corrupted")});
    CHECK(bad.payload.find("at A") != std::string::npos);
    CHECK(bad.payload.find(":4:") != std::string::npos);
}

TEST_CASE("usage errors", "[cli]")
{
    CHECK(run_args({}).exit_code == kUsageError);
    CHECK(run_args({"frobnicate"}).exit_code == kUsageError);
    CHECK(run_args({"check"}).exit_code == kUsageError);
    CHECK(run_args({"check", fixture("no_such_file")}).exit_code == kUsageError);
    CHECK(run_args({"dual", fixture("table1"), "missing"}).exit_code == kUsageError);
    CHECK(run_args({"wfilt", fixture("monodromy"), "N3"}).exit_code == kUsageError);
    CHECK(run_args({"tables", "--format", "yaml"}).exit_code == kUsageError);
    CommandResult r = run_args({"frobnicate"});
    CHECK_FALSE(r.errors.empty());
}

TEST_CASE("subcommands delegate to the engine", "[cli]")
{
    CommandResult dual = run_args({"dual", fixture("table1"), "corrected"});
    CHECK(dual.exit_code == kSuccess);

    CommandResult ext = run_args({"ext-class", fixture("three_nodes"), "p3", "--format", "json"});
    REQUIRE(ext.exit_code == kSuccess);
    auto j = nlohmann::json::parse(ext.payload);
    CHECK(j.dump().find("\"-1/2\"") != std::string::npos);

    CommandResult assembled = run_args({"assemble", fixture("three_nodes"), "--format", "json"});
    CHECK(assembled.exit_code == kSuccess);
    CHECK(run_args({"assemble", fixture("table1")}).exit_code != kSuccess);

    CHECK(run_args({"gluing", fixture("gluing"), "pair"}).exit_code == kSuccess);
    CommandResult glued = run_args({"gluing", fixture("gluing"), "inert"});
    CHECK(glued.exit_code == kSuccess);
    CHECK(glued.payload.find("filtrations: not checked") != std::string::npos);
    CHECK(run_args({"gluing", fixture("gluing_bad"), "identity"}).exit_code == kCheckFailed);

    CommandResult n = run_args({"nlog", fixture("monodromy"), "T3"});
    CHECK(n.exit_code == kSuccess);
    CHECK(n.payload.find("-1/2") != std::string::npos);
    CHECK(run_args({"nlog", fixture("monodromy"), "N3"}).exit_code == kCheckFailed);

    CHECK(run_args({"wfilt", fixture("monodromy"), "N3", "--center", "3"}).exit_code == kSuccess);
    CHECK(run_args({"wfilt", fixture("monodromy"), "T", "--center", "0"}).exit_code == kCheckFailed);

    CommandResult pl = run_args({"pl", fixture("monodromy"), "--alpha", "alpha", "--delta", "delta", "--pairing",
                                 "form", "--format", "json"});
    REQUIRE(pl.exit_code == kSuccess);
    CHECK(nlohmann::json::parse(pl.payload).at("T_alpha") == nlohmann::json::array({"-1", "1"}));
}

TEST_CASE("skeleton output matches the golden file", "[cli]")
{
    CommandResult dot = run_args({"skeleton", fixture("three_nodes"), "--format", "dot"});
    CHECK(dot.exit_code == kSuccess);
    CHECK(dot.payload == zz::test::read_file(std::string(ZZ_GOLDEN_DIR) + "/three_nodes.dot"));
    CHECK(run_args({"skeleton", fixture("three_nodes")}).payload == dot.payload);
    CommandResult json = run_args({"skeleton", fixture("three_nodes"), "--format", "json"});
    CHECK(nlohmann::json::parse(json.payload).at("edges").size() == 6);
}

TEST_CASE("JSON output is byte-stable", "[cli]")
{
    std::vector<std::vector<std::string>> commands = {
        {"check", fixture("table1"), "--format", "json"},
        {"check", fixture("corrupted"), "--format", "json"},
        {"dual", fixture("table1"), "P", "--format", "json"},
        {"ext-class", fixture("general"), "E", "--format", "json"},
        {"assemble", fixture("three_nodes"), "--format", "json"},
        {"gluing", fixture("gluing"), "pair", "--format", "json"},
        {"skeleton", fixture("three_nodes"), "--format", "json"},
        {"tables", "--format", "json"},
        {"wfilt", fixture("monodromy"), "N3", "--center", "0", "--format", "json"},
        {"nlog", fixture("monodromy"), "T", "--format", "json"},
    };
    for (const auto& c : commands)
    {
        INFO(c.front());
        CommandResult a = run_args(c), b = run_args(c);
        CHECK(a.payload == b.payload);
        CHECK(a.exit_code == b.exit_code);
        // Canonical: re-dumping with sorted keys changes nothing.
        CHECK(nlohmann::json::parse(a.payload).dump(2) + "\n" == a.payload);
    }
}

TEST_CASE("--out writes the payload to a file", "[cli]")
{
    std::string path = "cli_out_test.txt";
    CommandResult r = run_args({"tables", "--out", path});
    CHECK(r.exit_code == kSuccess);
    CHECK(r.payload.empty());
    std::string text = zz::test::read_file(path);
    CHECK(text.find("VERIFIED") != std::string::npos);
    std::remove(path.c_str());
}

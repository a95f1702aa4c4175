#include "centriscan/teal/detectors.hpp"
#include "corpus.hpp"
#include "path_oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace centriscan;
using namespace centriscan::teal;

namespace {

TealAnalysis run(std::string_view src, const AnalyzerConfig& config = {})
{
    return analyze_program(src, "t.teal", config);
}

bool has_message(const Diagnostics& ds, std::string_view needle)
{
    return std::ranges::any_of(ds, [&](const Diagnostic& d) { return d.message.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("teal guard points")
{
    SUBCASE("assert form")
    {
        const auto a = run(testing::read_corpus("teal/row1_assert.teal"));
        REQUIRE(a.guards.size() == 1);
        CHECK(a.guards[0].form == GuardForm::AssertGuard);
        CHECK(a.guards[0].instruction == 4);
        CHECK(a.guards[0].privileged_source == "app_global_get[\"manager\"]");
        CHECK(a.guards[0].loc.line == 5);
    }
    SUBCASE("branch form")
    {
        const auto a = run(testing::read_corpus("teal/row2_branch.teal"));
        REQUIRE(a.guards.size() == 1);
        const auto& g = a.guards[0];
        CHECK(g.form == GuardForm::BranchGuard);
        CHECK(g.privileged_source == "app_global_get[\"Creator\"]");
        REQUIRE(g.fail_target.has_value());
        CHECK(a.cfg.blocks[*g.fail_target].label == "failed");
        REQUIRE(g.pass_edge.has_value());
        CHECK(g.pass_edge->to == 1);
    }
    SUBCASE("branch towards success is not a guard")
    {
        const auto a = run("txn Sender\nglobal CreatorAddress\n==\nbz done\nint 1\nreturn\ndone:\nint 1\nreturn\n");
        CHECK(a.guards.empty());
        CHECK(has_message(a.diagnostics, "not treated as a guard"));
    }
    SUBCASE("disjunction is noted")
    {
        const auto a = run("txn Sender\nglobal CreatorAddress\n==\nint 1\n||\nassert\n");
        REQUIRE(a.guards.size() == 1);
        CHECK(a.guards[0].weakened);
        CHECK_FALSE(a.diagnostics.empty());
    }
    SUBCASE("inequality branch with bnz")
    {
        const auto a = run("txn Sender\naddr ABC\n!=\nbnz bad\nint 1\nreturn\nbad:\nerr\n");
        REQUIRE(a.guards.size() == 1);
        CHECK(a.guards[0].privileged_source == "addr ABC");
    }
}

TEST_CASE("teal fund points")
{
    CHECK(run(testing::read_corpus("teal/row3_balance.teal")).fund_points.size() == 1);
    CHECK(run("int 0\nbyte \"color\"\nint 5\napp_local_put\n").fund_points.empty());
    CHECK(run("byte \"TotalBalance\"\nint 5\napp_global_put\n").fund_points.size() == 1);
    AnalyzerConfig exact;
    exact.balance_substring = false;
    CHECK(run("byte \"TotalBalance\"\nint 5\napp_global_put\n", exact).fund_points.empty());

    const auto dynamic = run("int 0\ntxna ApplicationArgs 0\nint 5\napp_local_put\n");
    CHECK(dynamic.fund_points.empty());
    CHECK_FALSE(dynamic.diagnostics.empty());
}

TEST_CASE("teal guardedness examples")
{
    SUBCASE("concatenation")
    {
        const auto a = run(testing::read_corpus("teal/rows1_3_combined.teal"));
        REQUIRE(a.guardedness.points.size() == 1);
        CHECK(a.guardedness.points[0].status == Guardedness::Guarded);
        CHECK(a.guardedness.points[0].cutting_guards.size() == 1);
    }
    SUBCASE("put before the guard")
    {
        const auto a = run("int 0\nbyte \"MyBalance\"\nint 5\napp_local_put\n"
                           "byte \"manager\"\napp_global_get\ntxn Sender\n==\nassert\n");
        REQUIRE(a.guardedness.points.size() == 1);
        CHECK(a.guardedness.points[0].status == Guardedness::Unguarded);
        CHECK(a.guardedness.points[0].witness == std::vector<std::size_t>{0});
    }
    SUBCASE("guarded branch")
    {
        const auto a = run("txn Sender\nglobal CreatorAddress\n==\nbz fail\n"
                           "int 0\nbyte \"MyBalance\"\nint 5\napp_local_put\nint 1\nreturn\nfail:\nerr\n");
        REQUIRE(a.guardedness.points.size() == 1);
        CHECK(a.guardedness.points[0].status == Guardedness::Guarded);
    }
    SUBCASE("parallel branch")
    {
        const auto src = testing::read_corpus("negative/parallel_guard.teal");
        const auto a = run(src);
        REQUIRE(a.guardedness.points.size() == 1);
        const auto& pg = a.guardedness.points[0];
        CHECK(pg.status == Guardedness::Unguarded);
        CHECK(pg.witness.size() == 2);
        CHECK(oracle::witness_valid(a.cfg, a.guards, a.fund_points[0], pg.witness));
    }
    SUBCASE("guard on only one of two merging paths")
    {
        const auto a = run("txna ApplicationArgs 0\nbnz side\n"
                           "byte \"manager\"\napp_global_get\ntxn Sender\n==\nassert\n"
                           "side:\nint 0\nbyte \"MyBalance\"\nint 5\napp_local_put\nint 1\nreturn\n");
        REQUIRE(a.guardedness.points.size() == 1);
        CHECK(a.guardedness.points[0].status == Guardedness::Unguarded);
    }
    SUBCASE("dead code")
    {
        const auto a = run("err\nint 0\nbyte \"MyBalance\"\nint 5\napp_local_put\n");
        REQUIRE(a.guardedness.points.size() == 1);
        CHECK(a.guardedness.points[0].status == Guardedness::NotApplicable);
    }
    SUBCASE("subroutine body is a root")
    {
        const auto a = run("byte \"manager\"\napp_global_get\ntxn Sender\n==\nassert\ncallsub pay\nint 1\nreturn\n"
                           "pay:\nint 0\nbyte \"MyBalance\"\nint 5\napp_local_put\nretsub\n");
        REQUIRE(a.guardedness.points.size() == 1);
        CHECK(a.guardedness.points[0].status == Guardedness::Unguarded);
    }
}

TEST_CASE("guardedness agrees with explicit path enumeration")
{
    std::mt19937 rng(2024);
    int guarded = 0;
    int unguarded = 0;
    int dead = 0;
    for (int iter = 0; iter < 600; ++iter) {
        const auto rc = oracle::random_case(rng);
        const oracle::PathOracle o{rc.cfg, rc.guards};
        const auto result = compute_guardedness(rc.cfg, rc.guards, rc.points);
        REQUIRE(result.points.size() == rc.points.size());
        for (std::size_t i = 0; i < rc.points.size(); ++i) {
            const auto expect = o.status(rc.points[i]);
            CHECK(result.points[i].status == expect);
            switch (expect) {
            case Guardedness::Guarded:
                ++guarded;
                CHECK_FALSE(result.points[i].cutting_guards.empty());
                break;
            case Guardedness::Unguarded:
                ++unguarded;
                CHECK(oracle::witness_valid(rc.cfg, rc.guards, rc.points[i], result.points[i].witness));
                break;
            case Guardedness::NotApplicable:
                ++dead;
                break;
            }
        }
    }
    // The generator must exercise every outcome.
    CHECK(guarded > 20);
    CHECK(unguarded > 20);
    CHECK(dead > 5);
}

TEST_CASE("guardedness is monotone in the guard set")
{
    std::mt19937 rng(99);
    for (int iter = 0; iter < 400; ++iter) {
        const auto rc = oracle::random_case(rng);
        const auto full = compute_guardedness(rc.cfg, rc.guards, rc.points);
        std::vector<GuardPoint> fewer = rc.guards;
        if (!fewer.empty()) {
            fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(rng() % fewer.size()));
        }
        const auto reduced = compute_guardedness(rc.cfg, fewer, rc.points);
        const auto none = compute_guardedness(rc.cfg, std::vector<GuardPoint>{}, rc.points);
        for (std::size_t i = 0; i < rc.points.size(); ++i) {
            if (reduced.points[i].status == Guardedness::Guarded) {
                CHECK(full.points[i].status == Guardedness::Guarded);
            }
            CHECK(none.points[i].status != Guardedness::Guarded);
        }
    }
}

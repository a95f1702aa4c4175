#include "centriscan/cli.hpp"
#include "centriscan/scan.hpp"
#include "corpus.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace centriscan;

namespace {

struct Outcome
{
    int code = -1;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string write_temp(const std::string& name, const std::string& content)
{
    const auto dir = std::filesystem::temp_directory_path() / "centriscan_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_CASE("cli exit codes")
{
    SUBCASE("clean file")
    {
        const auto o = invoke({"scan", testing::corpus_path("cli/clean.sol")});
        CHECK(o.code == kExitClean);
        CHECK(o.out.empty());
        CHECK(o.err.find("0 finding(s)") != std::string::npos);
    }
    SUBCASE("major finding as json")
    {
        const auto o = invoke({"scan", "--format", "json", testing::corpus_path("cli/owner_drain.sol")});
        CHECK(o.code == kExitFindings);
        const auto j = nlohmann::json::parse(o.out);
        CHECK(j["counts"]["major"] == 1);
        CHECK(j["findings"].size() == 1);
        CHECK(j["findings"][0]["kind"] == "CENTRALIZATION_RISK");
        CHECK(o.err.empty());
    }
    SUBCASE("missing path")
    {
        const auto o = invoke({"scan", "missing_dir/"});
        CHECK(o.code == kExitUsage);
        CHECK(o.err.find("missing_dir/") != std::string::npos);
    }
    SUBCASE("usage errors")
    {
        CHECK(invoke({}).code == kExitUsage);
        CHECK(invoke({"scan"}).code == kExitUsage);
        CHECK(invoke({"scan", "--format", "xml", "x.sol"}).code == kExitUsage);
        CHECK(invoke({"lint", "x.sol"}).code == kExitUsage);
    }
    SUBCASE("version")
    {
        const auto o = invoke({"--version"});
        CHECK(o.code == 0);
        CHECK(o.out.find(std::string(kToolVersion)) != std::string::npos);
    }
}

TEST_CASE("cli config handling")
{
    const auto gov_teal = write_temp("gov.teal", "byte \"gov\"\napp_global_get\ntxn Sender\n==\nassert\n"
                                                 "int 0\nbyte \"MyBalance\"\nint 5\napp_local_put\n");
    const auto good = write_temp("good.conf", "# keys\nowner_keys = gov, council\n");
    const auto bad = write_temp("bad.conf", "owner_keys = gov\nfrobnicate = 1\n");

    const auto plain = invoke({"scan", "--format", "json", gov_teal});
    CHECK(nlohmann::json::parse(plain.out)["counts"]["major"] == 0);

    const auto with = invoke({"scan", "--format", "json", "--config", good, gov_teal});
    CHECK(with.code == kExitFindings);
    CHECK(nlohmann::json::parse(with.out)["counts"]["major"] == 1);
    CHECK(nlohmann::json::parse(with.out)["config_fingerprint"] !=
          nlohmann::json::parse(plain.out)["config_fingerprint"]);

    const auto broken = invoke({"scan", "--config", bad, gov_teal});
    CHECK(broken.code == kExitUsage);
    CHECK(broken.err.find("line 2") != std::string::npos);
}

TEST_CASE("fail-on threshold is monotone")
{
    const std::string levels[] = {"none", "major", "warning", "info"};
    for (const char* rel : {"cli/owner_drain.sol", "solidity/row4_balance.sol", "solidity/row1_modifier.sol",
                            "cli/clean.sol"}) {
        CAPTURE(rel);
        int previous = kExitClean;
        for (const auto& level : levels) {
            const int code = invoke({"scan", "--fail-on", level, testing::corpus_path(rel)}).code;
            CHECK(code >= previous);
            CHECK(code <= kExitFindings);
            previous = code;
        }
    }
    CHECK(invoke({"scan", "--fail-on", "warning", testing::corpus_path("solidity/row4_balance.sol")}).code ==
          kExitFindings);
    CHECK(invoke({"scan", "--fail-on", "major", testing::corpus_path("solidity/row4_balance.sol")}).code == kExitClean);
    CHECK(invoke({"scan", "--fail-on", "none", testing::corpus_path("cli/owner_drain.sol")}).code == kExitClean);
}

TEST_CASE("cli output is idempotent and parallel matches serial")
{
    const std::string root = testing::corpus_path("");
    const auto a = invoke({"scan", "--format", "json", "--fail-on", "none", root});
    const auto b = invoke({"scan", "--format", "json", "--fail-on", "none", root});
    CHECK(a.code == kExitClean);
    CHECK(a.out == b.out);

    const std::vector<std::string> inputs{root};
    const auto found = discover_files(inputs);
    CHECK(found.files.size() > 20);
    const auto serial = risk::render_json(scan_serial(found.files, {}));
    const auto parallel = risk::render_json(scan_parallel(found.files, {}));
    CHECK(serial == parallel);
}

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "centriscan/risk/report.hpp"
#include "centriscan/scan.hpp"
#include "centriscan/sol/detectors.hpp"
#include "centriscan/sol/parser.hpp"
#include "centriscan/teal/detectors.hpp"
#include "corpus.hpp"
#include "path_oracle.hpp"
#include "synthetic.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace centriscan;
using risk::FindingKind;

namespace {

struct Check
{
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what)
    {
        if (!ok) {
            failures.push_back(what);
        }
    }
};

std::vector<risk::Finding> findings_of(const std::string& rel)
{
    const auto path = testing::corpus_path(rel);
    return analyze_source(path, testing::read_file(path), {}).findings;
}

std::vector<risk::Finding> findings_of_text(const std::string& name, const std::string& text)
{
    return analyze_source(name, text, {}).findings;
}

std::set<FindingKind> kinds(const std::vector<risk::Finding>& fs)
{
    std::set<FindingKind> out;
    for (const auto& f : fs) {
        out.insert(f.kind);
    }
    return out;
}

std::string kinds_text(const std::set<FindingKind>& ks)
{
    std::string s = "{";
    for (const auto k : ks) {
        s += (s.size() > 1 ? "," : "") + std::string(risk::to_string(k));
    }
    return s + "}";
}

// --- criterion 1 ---------------------------------------------------------

void table_one(Check& c)
{
    const AnalyzerConfig config;
    struct Row
    {
        const char* file;
        std::optional<sol::GuardForm> guard;
        bool balance_write;
    };
    const Row rows[] = {
        {"solidity/row1_modifier.sol", sol::GuardForm::ModifierGuard, false},
        {"solidity/row2_require.sol", sol::GuardForm::RequireGuard, false},
        {"solidity/row3_if.sol", sol::GuardForm::IfGuard, false},
        {"solidity/row4_balance.sol", std::nullopt, true},
    };
    for (const auto& row : rows) {
        const auto unit = sol::parse_solidity(testing::read_corpus(row.file), row.file);
        c.expect(unit.contracts.size() == 1, std::string(row.file) + ": one contract");
        if (unit.contracts.size() != 1) {
            continue;
        }
        const auto& contract = unit.contracts.front();
        const auto guards = sol::find_sender_guards(contract, config);
        const auto symbols = sol::collect_state_vars(contract);
        const auto funds = sol::find_fund_modifications(contract, symbols.symbols, config);
        c.expect(guards.size() == (row.guard ? 1u : 0u), std::string(row.file) + ": guard site count");
        if (row.guard && guards.size() == 1) {
            c.expect(guards[0].form == *row.guard, std::string(row.file) + ": guard form");
        }
        c.expect(funds.size() == (row.balance_write ? 1u : 0u), std::string(row.file) + ": fund site count");
        if (row.balance_write && funds.size() == 1) {
            c.expect(funds[0].kind == sol::FundModKind::BalanceMappingWrite, std::string(row.file) + ": fund kind");
        }
    }
    const auto combined = findings_of("solidity/rows1_4_combined.sol");
    c.expect(combined.size() == 1 && combined[0].kind == FindingKind::CentralizationRisk &&
                 combined[0].severity == Severity::Major,
             "combined contract: exactly one MAJOR centralization risk");
}

// --- criterion 2 ---------------------------------------------------------

void table_two(Check& c)
{
    const AnalyzerConfig config;
    const auto row1 = teal::analyze_program(testing::read_corpus("teal/row1_assert.teal"), "row1", config);
    c.expect(row1.guards.size() == 1 && row1.guards[0].form == teal::GuardForm::AssertGuard, "row 1: one assert guard");
    c.expect(row1.fund_points.empty(), "row 1: no fund point");
    const auto row2 = teal::analyze_program(testing::read_corpus("teal/row2_branch.teal"), "row2", config);
    c.expect(row2.guards.size() == 1 && row2.guards[0].form == teal::GuardForm::BranchGuard, "row 2: one branch guard");
    c.expect(row2.fund_points.empty(), "row 2: no fund point");
    const auto row3 = teal::analyze_program(testing::read_corpus("teal/row3_balance.teal"), "row3", config);
    c.expect(row3.fund_points.size() == 1 && row3.guards.empty(), "row 3: one fund point, no guard");

    const auto combined = findings_of("teal/rows1_3_combined.teal");
    c.expect(combined.size() == 1 && combined[0].kind == FindingKind::CentralizationRisk,
             "guard + put: one centralization risk");
    const auto put = findings_of("teal/row3_balance.teal");
    c.expect(put.size() == 1 && put[0].kind == FindingKind::UnprotectedFundModification,
             "put alone: one unprotected fund modification");
}

// --- criterion 3 ---------------------------------------------------------

void negatives(Check& c)
{
    // Hand-derived expectation per file: the single finding kind it must yield.
    const std::map<std::string, FindingKind> expected{
        {"guard_only.sol", FindingKind::PrivilegedFunction},
        {"nested_mapping.sol", FindingKind::PrivilegedFunction},
        {"nonmapping_write.sol", FindingKind::PrivilegedFunction},
        {"nonsender_require.sol", FindingKind::UnprotectedFundModification},
        {"require_neq.sol", FindingKind::UnprotectedFundModification},
        {"self_compare.sol", FindingKind::UnprotectedFundModification},
        {"branch_to_success.teal", FindingKind::UnprotectedFundModification},
        {"dynamic_key.teal", FindingKind::PrivilegedFunction},
        {"int_assert.teal", FindingKind::UnprotectedFundModification},
        {"nonbalance_key.teal", FindingKind::PrivilegedFunction},
        {"nonowner_key.teal", FindingKind::UnprotectedFundModification},
        {"parallel_guard.teal", FindingKind::UnprotectedFundModification},
        {"self_compare.teal", FindingKind::UnprotectedFundModification},
    };
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(testing::corpus_path("negative"))) {
        const auto name = entry.path().filename().string();
        ++seen;
        const auto fs = findings_of("negative/" + name);
        c.expect(std::ranges::none_of(fs, [](const risk::Finding& f) { return f.kind == FindingKind::CentralizationRisk; }),
                 name + ": no centralization risk");
        const auto it = expected.find(name);
        if (it == expected.end()) {
            c.expect(false, name + ": no expectation recorded");
            continue;
        }
        c.expect(fs.size() == 1 && fs[0].kind == it->second, name + ": expected " +
                                                                   std::string(risk::to_string(it->second)) + ", got " +
                                                                   kinds_text(kinds(fs)));
        if (it->second == FindingKind::PrivilegedFunction && fs.size() == 1) {
            c.expect(fs[0].severity == Severity::Info, name + ": privileged finding at INFO");
        }
    }
    c.expect(seen >= 8 && seen == expected.size(), "negative corpus size");
}

// --- criterion 4 ---------------------------------------------------------

void guardedness_oracle(Check& c)
{
    std::mt19937 rng(20240601);
    std::size_t points = 0;
    std::size_t disagreements = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto rc = oracle::random_case(rng);
        const oracle::PathOracle o{rc.cfg, rc.guards};
        const auto got = teal::compute_guardedness(rc.cfg, rc.guards, rc.points);
        for (std::size_t k = 0; k < rc.points.size(); ++k) {
            ++points;
            if (got.points[k].status != o.status(rc.points[k])) {
                ++disagreements;
            }
        }
    }
    c.expect(disagreements == 0, std::to_string(disagreements) + " of " + std::to_string(points) + " points disagree");
}

// --- criterion 5 ---------------------------------------------------------

bool total_on(const std::string& name, std::string input, std::string& why)
{
    try {
        std::string sane = input;
        sanitize_utf8(sane);
        const auto r = analyze_source(name, std::move(input), {});
        for (const auto& d : r.diagnostics) {
            if (d.message.find("analysis aborted") != std::string::npos) {
                why = d.message;
                return false;
            }
        }
        for (const auto& f : r.findings) {
            if (!location_in_bounds(sane, f.loc)) {
                why = "finding location out of bounds";
                return false;
            }
            for (const auto& e : f.evidence) {
                if (!location_in_bounds(sane, e.loc)) {
                    why = "evidence location out of bounds";
                    return false;
                }
            }
        }
        return true;
    } catch (const std::exception& e) {
        why = e.what();
        return false;
    }
}

std::vector<std::string> seeds_with_extension(std::string_view ext)
{
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(testing::corpus_path(""))) {
        if (entry.is_regular_file() && entry.path().extension() == ext) {
            out.push_back(testing::read_file(entry.path().string()));
        }
    }
    out.push_back(ext == ".sol" ? synthetic::solidity_file(120, 1) : synthetic::teal_file(120, 1));
    return out;
}

void fuzz(Check& c, const std::string& ext)
{
    const auto seeds = seeds_with_extension(ext);
    std::mt19937 rng(ext == ".sol" ? 41 : 43);
    std::size_t failures = 0;
    std::string first;
    for (int i = 0; i < 10000; ++i) {
        std::string input;
        const auto& seed = seeds[rng() % seeds.size()];
        switch (i % 3) {
        case 0:  // random bytes
            input.resize(rng() % 400);
            for (auto& ch : input) {
                ch = static_cast<char>(rng() % 256);
            }
            break;
        case 1:  // truncated real source
            input = seed.substr(0, rng() % (seed.size() + 1));
            break;
        default:  // byte-level mutations of real source
            input = seed;
            for (int m = 0; m < 1 + static_cast<int>(rng() % 6) && !input.empty(); ++m) {
                const auto at = rng() % input.size();
                switch (rng() % 3) {
                case 0:
                    input.erase(at, 1 + rng() % 8);
                    break;
                case 1:
                    input.insert(at, 1, "{}();[]=\"/\n"[rng() % 11]);
                    break;
                default:
                    input[at] = static_cast<char>(rng() % 256);
                    break;
                }
            }
            break;
        }
        std::string why;
        if (!total_on("fuzz" + ext, std::move(input), why)) {
            if (failures++ == 0) {
                first = why;
            }
        }
    }
    c.expect(failures == 0, std::to_string(failures) + " failing inputs, first: " + first);
}

// --- criterion 6 ---------------------------------------------------------

void determinism(Check& c)
{
    const std::vector<std::string> root{testing::corpus_path("")};
    const auto found = discover_files(root);
    const AnalyzerConfig config;
    const auto first = risk::render_json(scan_parallel(found.files, config));
    const auto second = risk::render_json(scan_parallel(found.files, config));
    c.expect(first == second, "two scans differ");
    c.expect(first == risk::render_json(scan_serial(found.files, config)), "serial and parallel differ");

    std::mt19937 rng(6);
    for (int i = 0; i < 10; ++i) {
        auto order = found.files;
        std::ranges::shuffle(order, rng);
        c.expect(risk::render_json(scan_parallel(order, config)) == first, "shuffled order changes the report");
    }
}

// --- criterion 7 ---------------------------------------------------------

struct Mutation
{
    const char* file;
    std::vector<int> delete_lines;  // 1-based
    int insert_after;               // 1-based line after which the extra guard goes
    std::string extra_guard;
    std::set<FindingKind> before;
    std::set<FindingKind> after_delete;
};

std::string edit_lines(const std::string& text, const std::vector<int>& drop, int insert_after, const std::string& extra)
{
    std::istringstream in(text);
    std::string out;
    int n = 0;
    for (std::string line; std::getline(in, line);) {
        ++n;
        if (std::ranges::find(drop, n) == drop.end()) {
            out += line + "\n";
        }
        if (n == insert_after) {
            out += extra;
        }
    }
    return out;
}

void monotonicity(Check& c)
{
    using K = FindingKind;
    const std::string teal_assert = "byte \"manager\"\napp_global_get\ntxn Sender\n==\nassert\n";
    const Mutation cases[] = {
        {"solidity/row1_modifier.sol", {6}, 6, "        require(msg.sender == owner);\n", {K::PrivilegedFunction}, {}},
        {"solidity/row2_require.sol", {6}, 5, "        require(msg.sender == owner);\n", {K::PrivilegedFunction}, {}},
        {"solidity/row3_if.sol", {6, 7}, 5, "        require(msg.sender == owner);\n", {K::PrivilegedFunction}, {}},
        {"solidity/rows1_4_combined.sol", {6}, 10, "        require(msg.sender == owner);\n",
         {K::CentralizationRisk}, {K::UnprotectedFundModification}},
        {"cli/owner_drain.sol", {6}, 10, "        require(msg.sender == owner);\n", {K::CentralizationRisk},
         {K::UnprotectedFundModification}},
        {"teal/row1_assert.teal", {1, 2, 3, 4, 5}, 0, teal_assert, {K::PrivilegedFunction}, {}},
        {"teal/row2_branch.teal", {2, 3, 4, 5, 6, 7, 8}, 1, teal_assert, {K::PrivilegedFunction}, {}},
        {"teal/rows1_3_combined.teal", {1, 2, 3, 4, 5}, 0, teal_assert, {K::CentralizationRisk},
         {K::UnprotectedFundModification}},
    };
    for (const auto& m : cases) {
        const auto text = testing::read_corpus(m.file);
        const std::string name = testing::corpus_path(m.file);
        const auto base = kinds(findings_of_text(name, text));
        c.expect(base == m.before, std::string(m.file) + ": baseline " + kinds_text(base));

        const auto removed = kinds(findings_of_text(name, edit_lines(text, m.delete_lines, -1, "")));
        c.expect(removed == m.after_delete, std::string(m.file) + ": guard deleted gives " + kinds_text(removed));

        // Line 0 means "prepend".
        const auto doubled_text = m.insert_after == 0 ? m.extra_guard + text : edit_lines(text, {}, m.insert_after, m.extra_guard);
        const auto doubled = kinds(findings_of_text(name, doubled_text));
        c.expect(doubled == base, std::string(m.file) + ": second guard gives " + kinds_text(doubled));
    }
}

// --- criterion 8 ---------------------------------------------------------

void throughput(Check& c, double& scan_ms)
{
    const auto dir = std::filesystem::temp_directory_path() / "centriscan_acceptance_synth";
    std::filesystem::remove_all(dir);
    const auto paths = synthetic::write_corpus(dir, 100, 500);
    std::size_t lines = 0;
    for (const auto& p : paths) {
        const auto text = testing::read_file(p);
        lines += static_cast<std::size_t>(std::ranges::count(text, '\n'));
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = scan_parallel(paths, {});
    scan_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::filesystem::remove_all(dir);
    c.expect(report.files_scanned == 100, "files scanned");
    c.expect(lines >= 100 * 450, "synthetic files are about 500 lines (" + std::to_string(lines) + " total)");
    c.expect(!report.findings.empty(), "synthetic corpus produces findings");
    c.expect(scan_ms < 1000.0, "scan took " + std::to_string(scan_ms) + " ms");
}

struct Criterion
{
    int id;
    std::string name;
    double budget_ms;  // 0: no runtime bound
    std::function<void(Check&)> body;
};

}  // namespace

int main()
{
    double scan_ms = 0;
    const std::vector<Criterion> criteria{
        {1, "solidity pattern corpus", 1000, table_one},
        {2, "teal pattern corpus", 1000, table_two},
        {3, "negative corpus", 0, negatives},
        {4, "guardedness vs path enumeration (1000 random CFGs)", 10000, guardedness_oracle},
        {5, "robustness (10000 fuzzed inputs per frontend)", 0,
         [](Check& c) {
             fuzz(c, ".sol");
             fuzz(c, ".teal");
         }},
        {6, "determinism", 0, determinism},
        {7, "monotonicity under guard deletion and duplication", 0, monotonicity},
        {8, "throughput (100 files x 500 lines)", 0, [&](Check& c) { throughput(c, scan_ms); }},
    };

    int failed = 0;
    for (const auto& crit : criteria) {
        Check check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            crit.body(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (crit.budget_ms > 0 && ms >= crit.budget_ms) {
            check.expect(false, "runtime " + std::to_string(ms) + " ms exceeds " + std::to_string(crit.budget_ms) + " ms");
        }
        const bool ok = check.failures.empty();
        failed += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << " [" << crit.id << "] " << crit.name << " (" << ms << " ms";
        if (crit.id == 8) {
            std::cout << ", scan " << scan_ms << " ms";
        }
        std::cout << ")\n";
        for (const auto& f : check.failures) {
            std::cout << "    " << f << "\n";
        }
    }
    return failed == 0 ? 0 : 1;
}

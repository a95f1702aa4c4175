#pragma once

#include "centriscan/config.hpp"
#include "centriscan/teal/abstract.hpp"
#include "centriscan/teal/cfg.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace centriscan::teal {

enum class GuardForm { AssertGuard, BranchGuard };

[[nodiscard]] std::string_view to_string(GuardForm form);

struct GuardPoint
{
    std::size_t block = 0;
    std::size_t instruction = 0;
    GuardForm form = GuardForm::AssertGuard;
    std::string privileged_source;
    std::optional<std::size_t> fail_target;  // BranchGuard only
    /// Edge taken when the sender matches. Absent when the pass side leaves the program.
    std::optional<Edge> pass_edge;
    bool weakened = false;
    SourceLoc loc;
};

struct FundModPoint
{
    std::size_t block = 0;
    std::size_t instruction = 0;
    std::string opcode;
    std::string key;
    SourceLoc loc;
};

enum class Guardedness { Guarded, Unguarded, NotApplicable };

[[nodiscard]] std::string_view to_string(Guardedness g);

struct PointGuardedness
{
    Guardedness status = Guardedness::Unguarded;
    /// Unguarded only: root-to-point block path avoiding every guard.
    std::vector<std::size_t> witness;
    /// Guarded only: indices into the guard list that lie between a root and the point.
    std::vector<std::size_t> cutting_guards;
};

struct GuardednessResult
{
    std::vector<PointGuardedness> points;  // parallel to the fund point list
    Diagnostics diagnostics;
};

/// True when every terminal block reachable from `start` ends in `err`, or in
/// `return` of a modeled zero. Falling off the program end does not count.
[[nodiscard]] bool is_failure_region(const Cfg& cfg, std::span<const BlockFacts> facts, const TealProgram& program,
                                     std::size_t start);

[[nodiscard]] std::vector<GuardPoint> find_guard_points(const Cfg& cfg,
                                                        std::span<const BlockFacts> facts,
                                                        const TealProgram& program,
                                                        Diagnostics* diagnostics = nullptr);

[[nodiscard]] std::vector<FundModPoint> find_fund_mod_points(const Cfg& cfg,
                                                             std::span<const BlockFacts> facts,
                                                             const TealProgram& program);

/// Instruction-level reachability from every root. A point is guarded when it
/// is reachable but not once traversal stops at asserts and drops pass edges.
[[nodiscard]] GuardednessResult compute_guardedness(const Cfg& cfg,
                                                    std::span<const GuardPoint> guards,
                                                    std::span<const FundModPoint> fund_points);

struct TealAnalysis
{
    TealProgram program;
    Cfg cfg;
    std::vector<BlockFacts> facts;
    std::vector<GuardPoint> guards;
    std::vector<FundModPoint> fund_points;
    GuardednessResult guardedness;
    Diagnostics diagnostics;  // all stages, sorted by location
};

[[nodiscard]] TealAnalysis analyze_program(std::string_view source, std::string path, const AnalyzerConfig& config);

}  // namespace centriscan::teal

#pragma once

#include "centriscan/config.hpp"
#include "centriscan/sol/ast.hpp"
#include "centriscan/sol/symbols.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace centriscan::sol {

enum class GuardForm { ModifierGuard, RequireGuard, IfGuard };

[[nodiscard]] std::string_view to_string(GuardForm form);

/// A statement comparing msg.sender against some owner expression.
struct GuardSite
{
    GuardForm form = GuardForm::RequireGuard;
    std::string owner_expr;
    std::string rendered;   // e.g. "require(msg.sender == owner)"
    SourceLoc loc;
    std::string enclosing;  // function display name or modifier name
    bool in_modifier = false;
    std::size_t decl_index = 0;  // into contract.modifiers or contract.functions
    ExprPtr condition;           // identity used to match guarding_if_chain entries
};

enum class FundModKind { BalanceMappingWrite, NativeTransfer, SelfDestruct };

[[nodiscard]] std::string_view to_string(FundModKind kind);

struct IfContext
{
    ExprPtr condition;
    bool then_branch = true;
};

struct FundModSite
{
    FundModKind kind = FundModKind::BalanceMappingWrite;
    std::string target;
    SourceLoc loc;
    std::string enclosing;
    std::size_t decl_index = 0;  // into contract.functions
    std::vector<IfContext> guarding_if_chain;  // innermost last
    bool if_guarded = false;                   // set by pair_detections
};

struct RawDetection
{
    std::string contract;
    std::string function;
    SourceLoc function_loc;
    /// Some guard applies to the function (own statement or invoked modifier).
    bool privileged = false;
    /// A require-style or modifier guard covers the whole body.
    bool whole_body_guarded = false;
    std::vector<FundModSite> fund_sites;
    std::vector<GuardSite> guard_sites;

    [[nodiscard]] bool is_guarded(const FundModSite& site) const { return whole_body_guarded || site.if_guarded; }
};

/// Known modifiers (own and in-file bases) mapped to their guard sites.
using ModifierIndex = std::map<std::string, std::vector<GuardSite>, std::less<>>;

[[nodiscard]] std::vector<GuardSite> find_sender_guards(const ContractDecl& contract, const AnalyzerConfig& config);

[[nodiscard]] std::vector<FundModSite> find_fund_modifications(const ContractDecl& contract,
                                                               const SymbolTable& symbols,
                                                               const AnalyzerConfig& config);

/// Index of the contract's own modifiers built from `guards`.
[[nodiscard]] ModifierIndex index_modifiers(const ContractDecl& contract, std::span<const GuardSite> guards);

struct PairingResult
{
    std::vector<RawDetection> detections;
    Diagnostics diagnostics;
};

[[nodiscard]] PairingResult pair_detections(const ContractDecl& contract,
                                            std::span<const GuardSite> guards,
                                            std::span<const FundModSite> fund_sites,
                                            const ModifierIndex& modifiers);

/// Convenience overload resolving modifiers within the contract only.
[[nodiscard]] PairingResult pair_detections(const ContractDecl& contract,
                                            std::span<const GuardSite> guards,
                                            std::span<const FundModSite> fund_sites);

struct SolidityAnalysis
{
    std::vector<RawDetection> detections;
    Diagnostics diagnostics;
};

/// Runs every detector over every contract of the unit. Modifiers and state
/// variables of base contracts declared in the same unit are inherited.
[[nodiscard]] SolidityAnalysis analyze_unit(const SourceUnit& unit, const AnalyzerConfig& config);

}  // namespace centriscan::sol

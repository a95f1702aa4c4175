#include "centriscan/sol/detectors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace centriscan::sol {

std::string_view to_string(GuardForm form)
{
    switch (form) {
    case GuardForm::ModifierGuard:
        return "ModifierGuard";
    case GuardForm::RequireGuard:
        return "RequireGuard";
    case GuardForm::IfGuard:
        return "IfGuard";
    }
    return "?";
}

std::string_view to_string(FundModKind kind)
{
    switch (kind) {
    case FundModKind::BalanceMappingWrite:
        return "BalanceMappingWrite";
    case FundModKind::NativeTransfer:
        return "NativeTransfer";
    case FundModKind::SelfDestruct:
        return "SelfDestruct";
    }
    return "?";
}

namespace {

bool is_sender(const ExprPtr& e, const AnalyzerConfig& config)
{
    if (!e) {
        return false;
    }
    if (e->as<expr::MsgSender>() != nullptr) {
        return true;
    }
    if (!config.tx_origin) {
        return false;
    }
    const auto* m = e->as<expr::Member>();
    if (m == nullptr || m->field != "origin" || !m->base) {
        return false;
    }
    const auto* base = m->base->as<expr::Identifier>();
    return base != nullptr && base->name == "tx";
}

// Owner side of the first `sender <kind> X` comparison reachable through
// && / || chains, or null.
ExprPtr sender_comparison(const ExprPtr& cond, expr::BinaryKind kind, const AnalyzerConfig& config)
{
    if (!cond) {
        return nullptr;
    }
    const auto* bin = cond->as<expr::Binary>();
    if (bin == nullptr) {
        return nullptr;
    }
    if (bin->kind == kind) {
        const bool lhs_sender = is_sender(bin->lhs, config);
        const bool rhs_sender = is_sender(bin->rhs, config);
        if (lhs_sender && !rhs_sender) {
            return bin->rhs;
        }
        if (rhs_sender && !lhs_sender) {
            return bin->lhs;
        }
        return nullptr;
    }
    if (bin->kind == expr::BinaryKind::And || bin->kind == expr::BinaryKind::Or) {
        if (auto owner = sender_comparison(bin->lhs, kind, config)) {
            return owner;
        }
        return sender_comparison(bin->rhs, kind, config);
    }
    return nullptr;
}

bool has_top_level_revert(const std::vector<Stmt>& body)
{
    return std::ranges::any_of(body, [](const Stmt& s) { return s.as<stmt::Revert>() != nullptr; });
}

struct GuardCollector
{
    const AnalyzerConfig& config;
    std::vector<GuardSite>& out;
    std::string enclosing;
    bool in_modifier = false;
    std::size_t decl_index = 0;

    void add(GuardForm form, const ExprPtr& owner, std::string rendered, SourceLoc loc, ExprPtr condition)
    {
        out.push_back(GuardSite{in_modifier ? GuardForm::ModifierGuard : form, render(owner), std::move(rendered), loc,
                                enclosing, in_modifier, decl_index, std::move(condition)});
    }

    void walk(const std::vector<Stmt>& body)
    {
        for (const auto& s : body) {
            if (const auto* req = s.as<stmt::Require>()) {
                if (auto owner = sender_comparison(req->condition, expr::BinaryKind::Eq, config)) {
                    add(GuardForm::RequireGuard, owner, "require(" + render(req->condition) + ")", s.loc,
                        req->condition);
                }
            } else if (const auto* branch = s.as<stmt::If>()) {
                const auto rendered = "if (" + render(branch->condition) + ")";
                if (auto owner = sender_comparison(branch->condition, expr::BinaryKind::Eq, config)) {
                    add(GuardForm::IfGuard, owner, rendered, s.loc, branch->condition);
                } else if (config.revert_guard && has_top_level_revert(branch->then_body)) {
                    // `if (msg.sender != owner) revert();` behaves like a require
                    if (auto neq_owner = sender_comparison(branch->condition, expr::BinaryKind::Neq, config)) {
                        add(GuardForm::RequireGuard, neq_owner, rendered + " revert", s.loc, branch->condition);
                    }
                }
                walk(branch->then_body);
                walk(branch->else_body);
            }
        }
    }
};

template <typename Fn>
void for_each_subexpr(const ExprPtr& e, const Fn& fn)
{
    if (!e) {
        return;
    }
    fn(*e);
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, expr::Member>) {
                for_each_subexpr(node.base, fn);
            } else if constexpr (std::is_same_v<T, expr::Index>) {
                for_each_subexpr(node.base, fn);
                for_each_subexpr(node.index, fn);
            } else if constexpr (std::is_same_v<T, expr::Binary>) {
                for_each_subexpr(node.lhs, fn);
                for_each_subexpr(node.rhs, fn);
            } else if constexpr (std::is_same_v<T, expr::Unary>) {
                for_each_subexpr(node.operand, fn);
            } else if constexpr (std::is_same_v<T, expr::Call>) {
                for_each_subexpr(node.callee, fn);
                for (const auto& opt : node.options) {
                    for_each_subexpr(opt.value, fn);
                }
                for (const auto& arg : node.args) {
                    for_each_subexpr(arg, fn);
                }
            } else if constexpr (std::is_same_v<T, expr::AddressCast>) {
                for_each_subexpr(node.inner, fn);
            }
        },
        e->node);
}

bool is_member_named(const ExprPtr& e, std::string_view field)
{
    const auto* m = e ? e->as<expr::Member>() : nullptr;
    return m != nullptr && m->field == field;
}

bool is_identifier_named(const ExprPtr& e, std::string_view name)
{
    const auto* id = e ? e->as<expr::Identifier>() : nullptr;
    return id != nullptr && id->name == name;
}

struct FundCollector
{
    const SymbolTable& symbols;
    const AnalyzerConfig& config;
    std::vector<FundModSite>& out;
    std::string enclosing;
    std::size_t decl_index = 0;
    std::vector<IfContext> chain;

    void add(FundModKind kind, std::string target, SourceLoc loc)
    {
        out.push_back(FundModSite{kind, std::move(target), loc, enclosing, decl_index, chain, false});
    }

    void check_calls(const ExprPtr& root)
    {
        for_each_subexpr(root, [&](const Expr& e) {
            const auto* call = e.as<expr::Call>();
            if (call == nullptr) {
                return;
            }
            if (config.selfdestruct &&
                (is_identifier_named(call->callee, "selfdestruct") || is_identifier_named(call->callee, "suicide"))) {
                add(FundModKind::SelfDestruct, render(call->callee), e.loc);
                return;
            }
            if (!config.native_transfer) {
                return;
            }
            const bool transfer = is_member_named(call->callee, "transfer") || is_member_named(call->callee, "send");
            const bool value_call =
                is_member_named(call->callee, "call") &&
                std::ranges::any_of(call->options, [](const expr::CallOption& o) { return o.name == "value"; });
            // legacy `addr.call.value(v)(...)`
            const bool legacy_value_call =
                is_member_named(call->callee, "value") &&
                is_member_named(call->callee->as<expr::Member>()->base, "call");
            if (transfer || value_call || legacy_value_call) {
                add(FundModKind::NativeTransfer, render(call->callee), e.loc);
            }
        });
    }

    void check_balance_write(const ExprPtr& lvalue, SourceLoc loc)
    {
        const auto* index = lvalue ? lvalue->as<expr::Index>() : nullptr;
        if (index == nullptr || !index->base) {
            return;
        }
        if (const auto* id = index->base->as<expr::Identifier>()) {
            if (symbols.is_address_to_uint_mapping(id->name)) {
                add(FundModKind::BalanceMappingWrite, id->name, loc);
            }
            return;
        }
        if (!config.nested_mappings) {
            return;
        }
        if (const auto* inner = index->base->as<expr::Index>(); inner != nullptr && inner->base) {
            if (const auto* id = inner->base->as<expr::Identifier>();
                id != nullptr && symbols.is_nested_address_to_uint_mapping(id->name)) {
                add(FundModKind::BalanceMappingWrite, id->name, loc);
            }
        }
    }

    void walk(const std::vector<Stmt>& body)
    {
        for (const auto& s : body) {
            std::visit(
                [&](const auto& node) {
                    using T = std::decay_t<decltype(node)>;
                    if constexpr (std::is_same_v<T, stmt::Require>) {
                        check_calls(node.condition);
                        check_calls(node.message);
                    } else if constexpr (std::is_same_v<T, stmt::If>) {
                        check_calls(node.condition);
                        chain.push_back(IfContext{node.condition, true});
                        walk(node.then_body);
                        chain.back().then_branch = false;
                        walk(node.else_body);
                        chain.pop_back();
                    } else if constexpr (std::is_same_v<T, stmt::Assign>) {
                        check_balance_write(node.lvalue, s.loc);
                        check_calls(node.lvalue);
                        check_calls(node.rvalue);
                    } else if constexpr (std::is_same_v<T, stmt::Call>) {
                        check_calls(node.call);
                    } else if constexpr (std::is_same_v<T, stmt::Revert>) {
                        for (const auto& arg : node.args) {
                            check_calls(arg);
                        }
                    } else if constexpr (std::is_same_v<T, stmt::Return>) {
                        check_calls(node.value);
                    } else if constexpr (std::is_same_v<T, stmt::VarDecl>) {
                        check_calls(node.init);
                    }
                },
                s.node);
        }
    }
};

template <typename T>
void sort_by_location(std::vector<T>& items)
{
    std::ranges::stable_sort(items, [](const T& a, const T& b) { return a.loc < b.loc; });
}

}  // namespace

std::vector<GuardSite> find_sender_guards(const ContractDecl& contract, const AnalyzerConfig& config)
{
    std::vector<GuardSite> out;
    for (std::size_t i = 0; i < contract.modifiers.size(); ++i) {
        GuardCollector{config, out, contract.modifiers[i].name, true, i}.walk(contract.modifiers[i].body);
    }
    for (std::size_t i = 0; i < contract.functions.size(); ++i) {
        GuardCollector{config, out, contract.functions[i].display_name(), false, i}.walk(contract.functions[i].body);
    }
    sort_by_location(out);
    return out;
}

std::vector<FundModSite> find_fund_modifications(const ContractDecl& contract,
                                                 const SymbolTable& symbols,
                                                 const AnalyzerConfig& config)
{
    std::vector<FundModSite> out;
    for (std::size_t i = 0; i < contract.functions.size(); ++i) {
        FundCollector collector{symbols, config, out, contract.functions[i].display_name(), i, {}};
        collector.walk(contract.functions[i].body);
    }
    sort_by_location(out);
    return out;
}

ModifierIndex index_modifiers(const ContractDecl& contract, std::span<const GuardSite> guards)
{
    ModifierIndex index;
    for (std::size_t i = 0; i < contract.modifiers.size(); ++i) {
        auto& entry = index[contract.modifiers[i].name];
        entry.clear();
        for (const auto& g : guards) {
            if (g.in_modifier && g.decl_index == i) {
                entry.push_back(g);
            }
        }
    }
    return index;
}

PairingResult pair_detections(const ContractDecl& contract,
                              std::span<const GuardSite> guards,
                              std::span<const FundModSite> fund_sites,
                              const ModifierIndex& modifiers)
{
    PairingResult result;
    for (std::size_t fi = 0; fi < contract.functions.size(); ++fi) {
        const FunctionDecl& fn = contract.functions[fi];
        RawDetection det;
        det.contract = contract.name;
        det.function = fn.display_name();
        det.function_loc = fn.loc;

        std::set<std::string_view> seen;
        for (const auto& name : fn.modifier_invocations) {
            if (!seen.insert(name).second) {
                continue;
            }
            const auto it = modifiers.find(name);
            if (it == modifiers.end()) {
                result.diagnostics.push_back(Diagnostic{"modifier '" + name + "' invoked by '" + det.function +
                                                            "' is not defined in this file; treated as no guard",
                                                        fn.loc, DiagSeverity::Note});
                continue;
            }
            for (const auto& g : it->second) {
                det.guard_sites.push_back(g);
                det.whole_body_guarded = true;
            }
        }
        for (const auto& g : guards) {
            if (g.in_modifier || g.decl_index != fi) {
                continue;
            }
            det.guard_sites.push_back(g);
            if (g.form == GuardForm::RequireGuard) {
                det.whole_body_guarded = true;
            }
        }
        for (const auto& site : fund_sites) {
            if (site.decl_index != fi) {
                continue;
            }
            FundModSite scoped = site;
            scoped.if_guarded = std::ranges::any_of(scoped.guarding_if_chain, [&](const IfContext& ctx) {
                return ctx.then_branch && std::ranges::any_of(det.guard_sites, [&](const GuardSite& g) {
                           return g.form == GuardForm::IfGuard && g.condition == ctx.condition;
                       });
            });
            det.fund_sites.push_back(std::move(scoped));
        }
        det.privileged = !det.guard_sites.empty();
        if (det.privileged || !det.fund_sites.empty()) {
            result.detections.push_back(std::move(det));
        }
    }
    std::ranges::stable_sort(result.detections,
                             [](const RawDetection& a, const RawDetection& b) { return a.function_loc < b.function_loc; });
    return result;
}

PairingResult pair_detections(const ContractDecl& contract,
                              std::span<const GuardSite> guards,
                              std::span<const FundModSite> fund_sites)
{
    return pair_detections(contract, guards, fund_sites, index_modifiers(contract, guards));
}

namespace {

// In-file ancestors of `contract`, most basic first; unknown bases are skipped.
std::vector<const ContractDecl*> ancestors(const SourceUnit& unit, const ContractDecl& contract)
{
    std::vector<const ContractDecl*> order;
    std::set<const ContractDecl*> visited{&contract};
    std::function<void(const ContractDecl&)> visit = [&](const ContractDecl& c) {
        for (const auto& base_name : c.bases) {
            const ContractDecl* base = unit.find_contract(base_name);
            if (base == nullptr || !visited.insert(base).second) {
                continue;
            }
            visit(*base);
            order.push_back(base);
        }
    };
    visit(contract);
    return order;
}

}  // namespace

SolidityAnalysis analyze_unit(const SourceUnit& unit, const AnalyzerConfig& config)
{
    SolidityAnalysis analysis;
    for (const auto& contract : unit.contracts) {
        SymbolTable symbols;
        ModifierIndex modifiers;
        for (const ContractDecl* base : ancestors(unit, contract)) {
            for (const auto& var : base->state_vars) {
                symbols.insert(var);
            }
            for (auto& [name, sites] : index_modifiers(*base, find_sender_guards(*base, config))) {
                modifiers[name] = std::move(sites);
            }
        }
        auto own = collect_state_vars(contract);
        for (const auto& var : contract.state_vars) {
            symbols.insert(var);
        }
        std::ranges::move(own.diagnostics, std::back_inserter(analysis.diagnostics));

        const auto guards = find_sender_guards(contract, config);
        for (auto& [name, sites] : index_modifiers(contract, guards)) {
            modifiers[name] = std::move(sites);
        }
        const auto fund_sites = find_fund_modifications(contract, symbols, config);
        auto paired = pair_detections(contract, guards, fund_sites, modifiers);
        std::ranges::move(paired.detections, std::back_inserter(analysis.detections));
        std::ranges::move(paired.diagnostics, std::back_inserter(analysis.diagnostics));
    }
    return analysis;
}

}  // namespace centriscan::sol

#include "centriscan/teal/cfg.hpp"

#include <algorithm>
#include <set>

namespace centriscan::teal {

std::string_view to_string(EdgeKind kind)
{
    switch (kind) {
    case EdgeKind::Fallthrough:
        return "fallthrough";
    case EdgeKind::BranchTaken:
        return "branch_taken";
    case EdgeKind::BranchNotTaken:
        return "branch_not_taken";
    }
    return "?";
}

std::size_t Cfg::block_of(std::size_t index) const
{
    const auto it = std::ranges::upper_bound(blocks, index, {}, &BasicBlock::begin);
    return static_cast<std::size_t>(std::distance(blocks.begin(), it)) - 1;
}

std::vector<Edge> Cfg::out_edges(std::size_t block) const
{
    std::vector<Edge> out;
    for (const auto& e : edges) {
        if (e.from == block) {
            out.push_back(e);
        }
    }
    return out;
}

std::vector<std::size_t> Cfg::roots() const
{
    std::vector<std::size_t> out;
    if (blocks.empty()) {
        return out;
    }
    out.push_back(entry);
    for (const auto& call : calls) {
        out.push_back(call.target_block);
    }
    std::ranges::sort(out);
    const auto dup = std::ranges::unique(out);
    out.erase(dup.begin(), dup.end());
    return out;
}

Cfg build_cfg(const TealProgram& program)
{
    Cfg cfg;
    const auto& ins = program.instructions;
    const std::size_t n = ins.size();
    if (n == 0) {
        return cfg;
    }

    std::set<std::size_t> leaders{0};
    for (const auto& [label, index] : program.labels) {
        if (index < n) {
            leaders.insert(index);
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::string_view op = ins[i].opcode;
        if (op == "b" || is_conditional_branch(op) || is_multiway_branch(op) || is_terminator(op)) {
            leaders.insert(i + 1);
        }
    }

    std::vector<std::string_view> label_at(n + 1);
    for (const auto& [label, index] : program.labels) {
        if (label_at[index].empty()) {
            label_at[index] = label;
        }
    }
    for (auto it = leaders.begin(); it != leaders.end(); ++it) {
        const auto next = std::next(it);
        cfg.blocks.push_back(BasicBlock{*it, next == leaders.end() ? n : *next, std::string(label_at[*it])});
    }

    // Resolves a label to a block. Labels at the very end of the program name
    // the program exit and get no edge.
    const auto resolve = [&](const std::string& label, const Instruction& at) -> std::optional<std::size_t> {
        const auto it = program.labels.find(label);
        if (it == program.labels.end()) {
            cfg.diagnostics.push_back(
                Diagnostic{"branch target '" + label + "' is not defined; edge dropped", at.loc(), DiagSeverity::Warning});
            return std::nullopt;
        }
        if (it->second >= n) {
            return std::nullopt;
        }
        return cfg.block_of(it->second);
    };

    for (std::size_t b = 0; b < cfg.blocks.size(); ++b) {
        const Instruction& last = ins[cfg.blocks[b].last()];
        const std::string_view op = last.opcode;
        const bool has_next = b + 1 < cfg.blocks.size();

        if (op == "b") {
            if (!last.immediates.empty()) {
                if (const auto target = resolve(last.immediates.front(), last)) {
                    cfg.edges.push_back(Edge{b, *target, EdgeKind::BranchTaken});
                }
            }
        } else if (is_conditional_branch(op) || is_multiway_branch(op)) {
            for (const auto& label : branch_targets(last)) {
                if (const auto target = resolve(label, last)) {
                    cfg.edges.push_back(Edge{b, *target, EdgeKind::BranchTaken});
                }
            }
            if (has_next) {
                cfg.edges.push_back(Edge{b, b + 1, EdgeKind::BranchNotTaken});
            }
        } else if (!is_terminator(op) && has_next) {
            cfg.edges.push_back(Edge{b, b + 1, EdgeKind::Fallthrough});
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (ins[i].opcode != "callsub" || ins[i].immediates.empty()) {
            continue;
        }
        if (const auto target = resolve(ins[i].immediates.front(), ins[i])) {
            cfg.calls.push_back(CallSite{cfg.block_of(i), i, *target});
        }
    }
    return cfg;
}

}  // namespace centriscan::teal

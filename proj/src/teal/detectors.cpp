#include "centriscan/teal/detectors.hpp"

#include <algorithm>
#include <deque>

namespace centriscan::teal {

std::string_view to_string(GuardForm form)
{
    switch (form) {
    case GuardForm::AssertGuard:
        return "AssertGuard";
    case GuardForm::BranchGuard:
        return "BranchGuard";
    }
    return "?";
}

std::string_view to_string(Guardedness g)
{
    switch (g) {
    case Guardedness::Guarded:
        return "guarded";
    case Guardedness::Unguarded:
        return "unguarded";
    case Guardedness::NotApplicable:
        return "not-applicable";
    }
    return "?";
}

namespace {

std::vector<std::vector<Edge>> adjacency(const Cfg& cfg)
{
    std::vector<std::vector<Edge>> out(cfg.blocks.size());
    for (const auto& e : cfg.edges) {
        out[e.from].push_back(e);
    }
    return out;
}

bool is_failing_exit(const BasicBlock& block, const BlockFacts& facts, const TealProgram& program)
{
    const Instruction& last = program.instructions[block.last()];
    if (last.opcode == "err") {
        return true;
    }
    if (last.opcode != "return" || facts.instructions.empty()) {
        return false;
    }
    const auto& popped = facts.instructions.back().popped;
    return popped.size() == 1 && popped.front() == AbstractValue{value::IntConst{0}};
}

}  // namespace

bool is_failure_region(const Cfg& cfg, std::span<const BlockFacts> facts, const TealProgram& program, std::size_t start)
{
    const auto adj = adjacency(cfg);
    std::vector<char> seen(cfg.blocks.size(), 0);
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    bool any_exit = false;
    while (!queue.empty()) {
        const std::size_t b = queue.front();
        queue.pop_front();
        if (adj[b].empty()) {
            if (!is_failing_exit(cfg.blocks[b], facts[b], program)) {
                return false;
            }
            any_exit = true;
            continue;
        }
        for (const auto& e : adj[b]) {
            if (!seen[e.to]) {
                seen[e.to] = 1;
                queue.push_back(e.to);
            }
        }
    }
    return any_exit;
}

std::vector<GuardPoint> find_guard_points(const Cfg& cfg,
                                          std::span<const BlockFacts> facts,
                                          const TealProgram& program,
                                          Diagnostics* diagnostics)
{
    const auto note = [&](std::string msg, SourceLoc loc) {
        if (diagnostics != nullptr) {
            diagnostics->push_back(Diagnostic{std::move(msg), loc, DiagSeverity::Note});
        }
    };

    std::vector<GuardPoint> out;
    for (std::size_t b = 0; b < cfg.blocks.size(); ++b) {
        const BasicBlock& block = cfg.blocks[b];
        const BlockFacts& bf = facts[b];
        for (std::size_t k = 0; k < bf.instructions.size(); ++k) {
            const auto& f = bf.instructions[k];
            if (!f.guard_point) {
                continue;
            }
            const auto& cmp = std::get<value::SenderCmp>(f.popped.front());
            const std::size_t index = block.begin + k;
            GuardPoint g{b, index, GuardForm::AssertGuard, cmp.source, std::nullopt, std::nullopt, cmp.weakened,
                         program.instructions[index].loc()};
            if (g.weakened) {
                note("weakened guard: sender check on " + g.privileged_source + " is combined with '||'", g.loc);
            }
            out.push_back(std::move(g));
        }

        if (!bf.branch_condition) {
            continue;
        }
        const Instruction& last = program.instructions[block.last()];
        std::optional<Edge> taken;
        std::optional<Edge> not_taken;
        for (const auto& e : cfg.edges) {
            if (e.from != b) {
                continue;
            }
            (e.kind == EdgeKind::BranchTaken ? taken : not_taken) = e;
        }
        // bz jumps on zero: with an `==` condition the jump is the mismatch side.
        const bool fail_is_taken = (last.opcode == "bz") == bf.branch_condition->equal;
        const auto& fail = fail_is_taken ? taken : not_taken;
        const auto& pass = fail_is_taken ? not_taken : taken;
        const bool same_target = taken && not_taken && taken->to == not_taken->to;
        if (!fail || same_target || !is_failure_region(cfg, facts, program, fail->to)) {
            note("sender comparison on " + bf.branch_condition->source +
                     " does not branch to a failure region; not treated as a guard",
                 last.loc());
            continue;
        }
        GuardPoint g{b,     block.last(), GuardForm::BranchGuard, bf.branch_condition->source, fail->to, pass,
                     bf.branch_condition->weakened, last.loc()};
        if (g.weakened) {
            note("weakened guard: sender check on " + g.privileged_source + " is combined with '||'", g.loc);
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<FundModPoint> find_fund_mod_points(const Cfg& cfg, std::span<const BlockFacts> facts,
                                               const TealProgram& program)
{
    std::vector<FundModPoint> out;
    for (std::size_t b = 0; b < cfg.blocks.size(); ++b) {
        const auto& bf = facts[b];
        for (std::size_t k = 0; k < bf.instructions.size(); ++k) {
            const auto& f = bf.instructions[k];
            if (!f.fund_mod) {
                continue;
            }
            const std::size_t index = cfg.blocks[b].begin + k;
            const auto& ins = program.instructions[index];
            out.push_back(FundModPoint{b, index, ins.opcode, f.put_key.value_or(""), ins.loc()});
        }
    }
    return out;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// Multi-source BFS over instructions. Returns parent pointers; roots point at
/// themselves and unreached instructions hold kNone.
std::vector<std::size_t> reach(const Cfg& cfg,
                               const std::vector<std::vector<Edge>>& adj,
                               const std::vector<char>& stop,
                               const std::vector<std::vector<Edge>>& removed)
{
    const std::size_t n = cfg.instruction_count();
    std::vector<std::size_t> parent(n, kNone);
    std::deque<std::size_t> queue;
    for (const std::size_t r : cfg.roots()) {
        const std::size_t i = cfg.blocks[r].begin;
        if (parent[i] == kNone) {
            parent[i] = i;
            queue.push_back(i);
        }
    }
    const auto visit = [&](std::size_t from, std::size_t to) {
        if (parent[to] == kNone) {
            parent[to] = from;
            queue.push_back(to);
        }
    };
    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        if (stop[i]) {
            continue;
        }
        const std::size_t b = cfg.block_of(i);
        if (i + 1 < cfg.blocks[b].end) {
            visit(i, i + 1);
            continue;
        }
        for (const auto& e : adj[b]) {
            if (std::ranges::find(removed[b], e) == removed[b].end()) {
                visit(i, cfg.blocks[e.to].begin);
            }
        }
    }
    return parent;
}

std::vector<std::size_t> block_path(const Cfg& cfg, const std::vector<std::size_t>& parent, std::size_t target)
{
    std::vector<std::size_t> blocks;
    for (std::size_t i = target;; i = parent[i]) {
        const std::size_t b = cfg.block_of(i);
        if (blocks.empty() || blocks.back() != b) {
            blocks.push_back(b);
        }
        if (parent[i] == i) {
            break;
        }
    }
    std::ranges::reverse(blocks);
    return blocks;
}

}  // namespace

GuardednessResult compute_guardedness(const Cfg& cfg,
                                      std::span<const GuardPoint> guards,
                                      std::span<const FundModPoint> fund_points)
{
    GuardednessResult result;
    result.points.resize(fund_points.size());
    if (cfg.empty()) {
        for (auto& p : result.points) {
            p.status = Guardedness::NotApplicable;
        }
        return result;
    }

    const auto adj = adjacency(cfg);
    const std::size_t n = cfg.instruction_count();
    const std::vector<char> no_stop(n, 0);
    const std::vector<std::vector<Edge>> no_removed(cfg.blocks.size());

    std::vector<char> stop(n, 0);
    std::vector<std::vector<Edge>> removed(cfg.blocks.size());
    for (const auto& g : guards) {
        if (g.form == GuardForm::AssertGuard) {
            stop[g.instruction] = 1;
        } else if (g.pass_edge) {
            removed[g.block].push_back(*g.pass_edge);
        }
    }

    const auto full = reach(cfg, adj, no_stop, no_removed);
    const auto pruned = reach(cfg, adj, stop, removed);

    // Guard g can cut a path to point p when g is reachable and p is reachable from g.
    std::vector<std::vector<std::size_t>> from_guard;
    from_guard.reserve(guards.size());
    for (const auto& g : guards) {
        std::vector<std::size_t> parent(n, kNone);
        if (full[g.instruction] != kNone) {
            std::deque<std::size_t> queue{g.instruction};
            parent[g.instruction] = g.instruction;
            while (!queue.empty()) {
                const std::size_t i = queue.front();
                queue.pop_front();
                const std::size_t b = cfg.block_of(i);
                std::vector<std::size_t> next;
                if (i + 1 < cfg.blocks[b].end) {
                    next.push_back(i + 1);
                } else {
                    for (const auto& e : adj[b]) {
                        next.push_back(cfg.blocks[e.to].begin);
                    }
                }
                for (const std::size_t j : next) {
                    if (parent[j] == kNone) {
                        parent[j] = i;
                        queue.push_back(j);
                    }
                }
            }
        }
        from_guard.push_back(std::move(parent));
    }

    for (std::size_t k = 0; k < fund_points.size(); ++k) {
        const auto& p = fund_points[k];
        auto& out = result.points[k];
        if (full[p.instruction] == kNone) {
            out.status = Guardedness::NotApplicable;
            result.diagnostics.push_back(Diagnostic{"'" + p.opcode + "' on \"" + p.key +
                                                        "\" is unreachable from any entry point (dead code)",
                                                    p.loc, DiagSeverity::Note});
            continue;
        }
        if (pruned[p.instruction] != kNone) {
            out.status = Guardedness::Unguarded;
            out.witness = block_path(cfg, pruned, p.instruction);
            continue;
        }
        out.status = Guardedness::Guarded;
        for (std::size_t g = 0; g < guards.size(); ++g) {
            if (from_guard[g][p.instruction] != kNone) {
                out.cutting_guards.push_back(g);
            }
        }
    }
    return result;
}

TealAnalysis analyze_program(std::string_view source, std::string path, const AnalyzerConfig& config)
{
    TealAnalysis a;
    a.program = parse_teal(source, std::move(path));
    a.cfg = build_cfg(a.program);
    a.facts = abstract_exec(a.cfg, a.program, config);
    a.diagnostics = a.program.diagnostics;
    a.diagnostics.insert(a.diagnostics.end(), a.cfg.diagnostics.begin(), a.cfg.diagnostics.end());
    for (const auto& bf : a.facts) {
        a.diagnostics.insert(a.diagnostics.end(), bf.diagnostics.begin(), bf.diagnostics.end());
    }
    a.guards = find_guard_points(a.cfg, a.facts, a.program, &a.diagnostics);
    a.fund_points = find_fund_mod_points(a.cfg, a.facts, a.program);
    a.guardedness = compute_guardedness(a.cfg, a.guards, a.fund_points);
    a.diagnostics.insert(a.diagnostics.end(), a.guardedness.diagnostics.begin(), a.guardedness.diagnostics.end());
    std::ranges::stable_sort(a.diagnostics, {}, &Diagnostic::loc);
    return a;
}

}  // namespace centriscan::teal

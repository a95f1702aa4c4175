#pragma once

#include "centriscan/teal/program.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace centriscan::teal {

enum class EdgeKind { Fallthrough, BranchTaken, BranchNotTaken };

[[nodiscard]] std::string_view to_string(EdgeKind kind);

/// Half-open instruction range [begin, end).
struct BasicBlock
{
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string label;  // empty when the block does not start at a label

    [[nodiscard]] std::size_t last() const { return end - 1; }
    [[nodiscard]] bool contains(std::size_t index) const { return index >= begin && index < end; }
};

struct Edge
{
    std::size_t from = 0;
    std::size_t to = 0;
    EdgeKind kind = EdgeKind::Fallthrough;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// `callsub` site. Calls are metadata only: they add no CFG edge.
struct CallSite
{
    std::size_t block = 0;
    std::size_t instruction = 0;
    std::size_t target_block = 0;
};

struct Cfg
{
    std::vector<BasicBlock> blocks;
    std::vector<Edge> edges;
    std::size_t entry = 0;
    std::vector<CallSite> calls;
    Diagnostics diagnostics;

    [[nodiscard]] bool empty() const { return blocks.empty(); }
    [[nodiscard]] std::size_t instruction_count() const { return blocks.empty() ? 0 : blocks.back().end; }
    /// Block containing instruction `index` (binary search).
    [[nodiscard]] std::size_t block_of(std::size_t index) const;
    [[nodiscard]] std::vector<Edge> out_edges(std::size_t block) const;
    /// Blocks where analysis starts: the entry plus every callsub target.
    [[nodiscard]] std::vector<std::size_t> roots() const;
};

/// Partitions the program into basic blocks. Boundaries: labels, and after
/// b/bz/bnz/switch/match/return/err/retsub. `assert` does not end a block.
[[nodiscard]] Cfg build_cfg(const TealProgram& program);

}  // namespace centriscan::teal

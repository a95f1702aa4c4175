#pragma once

#include "centriscan/config.hpp"
#include "centriscan/teal/cfg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace centriscan::teal {

namespace value {

struct Unknown
{
    friend bool operator==(const Unknown&, const Unknown&) = default;
};

struct Sender
{
    friend bool operator==(const Sender&, const Sender&) = default;
};

struct GlobalField
{
    std::string name;
    friend bool operator==(const GlobalField&, const GlobalField&) = default;
};

struct GlobalGet
{
    std::string key;
    friend bool operator==(const GlobalGet&, const GlobalGet&) = default;
};

/// `opaque` marks encodings that are not decoded (base64/base32).
struct ByteConst
{
    std::string value;
    bool opaque = false;
    friend bool operator==(const ByteConst&, const ByteConst&) = default;
};

struct IntConst
{
    std::uint64_t value = 0;
    friend bool operator==(const IntConst&, const IntConst&) = default;
};

struct AddrConst
{
    std::string value;
    friend bool operator==(const AddrConst&, const AddrConst&) = default;
};

/// Result of comparing the sender with a privileged source. `equal` is false
/// for `!=` (or a negated `==`); `weakened` records an `||` on the way.
struct SenderCmp
{
    std::string source;
    bool equal = true;
    bool weakened = false;
    friend bool operator==(const SenderCmp&, const SenderCmp&) = default;
};

}  // namespace value

using AbstractValue = std::variant<value::Unknown, value::Sender, value::GlobalField, value::GlobalGet,
                                   value::ByteConst, value::IntConst, value::AddrConst, value::SenderCmp>;

[[nodiscard]] std::string render(const AbstractValue& v);

/// Rendered privileged source when `v` denotes one under `config`:
/// a global read under an owner key, the creator address, or an address literal.
[[nodiscard]] std::optional<std::string> privileged_source(const AbstractValue& v, const AnalyzerConfig& config);

struct InstructionFacts
{
    std::vector<AbstractValue> popped;  // bottom to top
    std::vector<AbstractValue> pushed;  // bottom to top
    bool guard_point = false;
    bool fund_mod = false;
    std::optional<std::string> put_key;  // constant key of a state put
};

struct BlockFacts
{
    std::size_t block = 0;
    std::vector<InstructionFacts> instructions;  // one per instruction in the block
    std::vector<AbstractValue> exit_stack;       // top is last
    bool exit_depth_unknown = false;             // values below exit_stack are not modeled
    /// Sender comparison consumed by a trailing bz/bnz.
    std::optional<value::SenderCmp> branch_condition;
    Diagnostics diagnostics;
};

/// Abstract interpretation of one block. The entry block starts from an empty
/// stack; other blocks start from an unmodeled stack whose values are Unknown.
[[nodiscard]] BlockFacts abstract_exec_block(const BasicBlock& block,
                                             std::size_t block_index,
                                             const TealProgram& program,
                                             const AnalyzerConfig& config);

[[nodiscard]] std::vector<BlockFacts> abstract_exec(const Cfg& cfg, const TealProgram& program,
                                                    const AnalyzerConfig& config);

}  // namespace centriscan::teal

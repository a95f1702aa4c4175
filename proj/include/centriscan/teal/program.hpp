#pragma once

#include "centriscan/common.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace centriscan::teal {

struct StackEffect
{
    int pops = 0;
    int pushes = 0;

    friend bool operator==(const StackEffect&, const StackEffect&) = default;
};

struct Instruction
{
    std::string opcode;
    std::vector<std::string> immediates;  // verbatim, string quotes kept
    std::uint32_t line = 1;
    std::uint32_t column = 1;
    std::optional<StackEffect> stack_delta;  // nullopt: unknown opcode or arity

    [[nodiscard]] SourceLoc loc() const { return {line, column}; }
};

struct TealProgram
{
    std::string path;
    int version = 1;
    std::vector<Instruction> instructions;
    std::map<std::string, std::size_t, std::less<>> labels;  // label -> index of the next instruction
    std::vector<std::string> intc_block;   // first `intcblock`, if any
    std::vector<std::string> bytec_block;  // first `bytecblock`, if any
    Diagnostics diagnostics;
};

/// Total parser: comments stripped, labels and `#pragma` lines recorded,
/// unknown opcodes kept with an unknown stack effect and a note.
[[nodiscard]] TealProgram parse_teal(std::string_view source, std::string path);

/// Stack effect for `opcode` with the given immediates, or nullopt when the
/// opcode is outside the modeled table or its arity cannot be determined.
[[nodiscard]] std::optional<StackEffect> stack_effect(std::string_view opcode, std::span<const std::string> immediates);

[[nodiscard]] bool is_known_opcode(std::string_view opcode);

/// Label immediates of b/bz/bnz/callsub/switch/match; empty otherwise.
[[nodiscard]] std::vector<std::string> branch_targets(const Instruction& ins);

[[nodiscard]] bool is_conditional_branch(std::string_view opcode);  // bz, bnz
[[nodiscard]] bool is_multiway_branch(std::string_view opcode);     // switch, match
[[nodiscard]] bool is_terminator(std::string_view opcode);          // return, err, retsub

/// Decodes a `byte`-style constant given as immediates: `"text"`, `0xABCD`.
/// Returns nullopt for encodings kept opaque (base64, base32).
[[nodiscard]] std::optional<std::string> decode_byte_constant(std::span<const std::string> immediates);

/// Parses `int`-style immediates: decimal, hex, octal and named constants
/// such as `NoOp` or `pay`.
[[nodiscard]] std::optional<std::uint64_t> decode_int_constant(std::string_view text);

}  // namespace centriscan::teal

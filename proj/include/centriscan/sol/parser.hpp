#pragma once

#include "centriscan/sol/ast.hpp"
#include "centriscan/sol/token.hpp"

#include <span>
#include <string>
#include <string_view>

namespace centriscan::sol {

/// Tolerant parser for the declaration/guard subset of Solidity. Never
/// throws; constructs outside the subset become Opaque nodes, usually with a
/// note-level diagnostic. Comment tokens are ignored.
[[nodiscard]] SourceUnit parse_source(std::span<const Token> tokens, std::string path);

/// tokenize + parse_source.
[[nodiscard]] SourceUnit parse_solidity(std::string_view source, std::string path);

/// Parses a single statement list as if it were a function body. Handy for
/// tests and for the round-trip property.
[[nodiscard]] std::vector<Stmt> parse_statements(std::string_view source, Diagnostics* diagnostics = nullptr);

}  // namespace centriscan::sol

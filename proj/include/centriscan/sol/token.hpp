#pragma once

#include "centriscan/common.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace centriscan::sol {

enum class TokenKind { Keyword, Identifier, Punctuation, StringLiteral, NumberLiteral, Comment, Unknown };

/// A lexeme. `text` views into the tokenized source, which must outlive it.
struct Token
{
    TokenKind kind = TokenKind::Unknown;
    std::string_view text;
    std::size_t offset = 0;
    SourceLoc loc;

    [[nodiscard]] bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    [[nodiscard]] bool is_punct(std::string_view t) const { return is(TokenKind::Punctuation, t); }
    [[nodiscard]] bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
    [[nodiscard]] bool is_word() const { return kind == TokenKind::Keyword || kind == TokenKind::Identifier; }
};

/// Total lexer: every byte of `source` ends up in a token or in skipped
/// whitespace. Comments are emitted as Comment tokens.
[[nodiscard]] std::vector<Token> tokenize(std::string_view source);

[[nodiscard]] bool is_keyword(std::string_view word);

}  // namespace centriscan::sol

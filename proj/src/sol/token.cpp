#include "centriscan/sol/token.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace centriscan::sol {

namespace {

constexpr std::string_view kKeywords[] = {
    "abstract", "address", "anonymous", "as", "assembly", "bool", "break",
    "calldata", "catch", "constant", "constructor", "continue", "contract", "delete", "do", "else",
    "emit", "enum", "error", "event", "external", "fallback", "false", "for", "function", "if",
    "immutable", "import", "indexed", "interface", "internal", "is", "library", "mapping", "memory",
    "modifier", "new", "override", "payable", "pragma", "private", "public", "pure", "receive",
    "return", "returns", "revert", "storage", "string", "struct", "throw", "true", "try", "type",
    "unchecked", "using", "view", "virtual", "while",
};

// Longest operators first so the greedy match picks them.
constexpr std::string_view kOperators[] = {
    ">>>=", "<<=", ">>=", ">>>", "**=", "==", "!=", "<=", ">=", "&&", "||", "+=",
    "-=", "*=", "/=", "%=", "|=", "&=", "^=", "++", "--", "=>", "->", "<<", ">>", "**", ":=",
};

constexpr std::string_view kSinglePunct = "(){}[];,.=<>+-*/%!&|^~?:";

bool is_ident_start(unsigned char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

bool is_ident_char(unsigned char c)
{
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c)
{
    return c >= '0' && c <= '9';
}

bool is_space(unsigned char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

class Lexer
{
public:
    explicit Lexer(std::string_view src)
        : src_(src)
    {}

    std::vector<Token> run()
    {
        std::vector<Token> tokens;
        tokens.reserve(src_.size() / 4);
        while (true) {
            skip_whitespace();
            if (pos_ >= src_.size()) {
                break;
            }
            tokens.push_back(next());
        }
        return tokens;
    }

private:
    [[nodiscard]] unsigned char peek(std::size_t ahead = 0) const
    {
        return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : 0;
    }

    void advance(std::size_t n = 1)
    {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++loc_.line;
                loc_.column = 1;
            } else {
                ++loc_.column;
            }
            ++pos_;
        }
    }

    void skip_whitespace()
    {
        while (pos_ < src_.size() && is_space(peek())) {
            advance();
        }
    }

    Token make(TokenKind kind, std::size_t start, SourceLoc loc) const
    {
        return Token{kind, src_.substr(start, pos_ - start), start, loc};
    }

    Token next()
    {
        const std::size_t start = pos_;
        const SourceLoc loc = loc_;
        const unsigned char c = peek();

        if (c == '/' && peek(1) == '/') {
            while (pos_ < src_.size() && peek() != '\n') {
                advance();
            }
            return make(TokenKind::Comment, start, loc);
        }
        if (c == '/' && peek(1) == '*') {
            advance(2);
            while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) {
                advance();
            }
            advance(2);
            return make(TokenKind::Comment, start, loc);
        }
        if (c == '"' || c == '\'') {
            lex_string(c);
            return make(TokenKind::StringLiteral, start, loc);
        }
        if (is_ident_start(c)) {
            while (is_ident_char(peek())) {
                advance();
            }
            const auto word = src_.substr(start, pos_ - start);
            // hex"..." and unicode"..." literals
            if ((word == "hex" || word == "unicode") && (peek() == '"' || peek() == '\'')) {
                lex_string(peek());
                return make(TokenKind::StringLiteral, start, loc);
            }
            return make(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, start, loc);
        }
        if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
            lex_number();
            return make(TokenKind::NumberLiteral, start, loc);
        }
        for (const auto op : kOperators) {
            if (src_.substr(pos_, op.size()) == op) {
                advance(op.size());
                return make(TokenKind::Punctuation, start, loc);
            }
        }
        if (kSinglePunct.find(static_cast<char>(c)) != std::string_view::npos) {
            advance();
            return make(TokenKind::Punctuation, start, loc);
        }
        // Group non-ASCII bytes and other stray characters into one token.
        advance();
        if (c >= 0x80) {
            while (pos_ < src_.size() && peek() >= 0x80) {
                advance();
            }
        }
        return make(TokenKind::Unknown, start, loc);
    }

    // Unterminated strings run to the end of the line.
    void lex_string(unsigned char quote)
    {
        advance();
        while (pos_ < src_.size()) {
            const unsigned char ch = peek();
            if (ch == '\\') {
                advance(peek(1) == '\n' ? 1 : 2);
                continue;
            }
            if (ch == '\n') {
                return;
            }
            advance();
            if (ch == quote) {
                return;
            }
        }
    }

    void lex_number()
    {
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            advance(2);
            while (std::isxdigit(peek()) != 0 || peek() == '_') {
                advance();
            }
            return;
        }
        while (is_digit(peek()) || peek() == '_') {
            advance();
        }
        if (peek() == '.' && is_digit(peek(1))) {
            advance();
            while (is_digit(peek()) || peek() == '_') {
                advance();
            }
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (is_digit(peek(1)) || (peek(1) == '-' && is_digit(peek(2))))) {
            advance(2);
            while (is_digit(peek())) {
                advance();
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    SourceLoc loc_;
};

}  // namespace

bool is_keyword(std::string_view word)
{
    return std::ranges::binary_search(kKeywords, word);
}

std::vector<Token> tokenize(std::string_view source)
{
    return Lexer(source).run();
}

}  // namespace centriscan::sol

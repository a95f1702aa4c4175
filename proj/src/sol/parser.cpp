#include "centriscan/sol/parser.hpp"

#include <algorithm>
#include <span>
#include <array>
#include <cctype>
#include <optional>

namespace centriscan::sol {

namespace {

constexpr int kMaxNesting = 200;

struct ParseFailure
{
    std::string message;
};

constexpr std::string_view kAssignOps[] = {
    "=", "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^=", "<<=", ">>=", ">>>=",
};

constexpr std::string_view kFunctionSpecifiers[] = {
    "public", "external", "internal", "private", "view", "pure", "payable", "virtual", "constant",
};

constexpr std::string_view kStateVarAttributes[] = {
    "public", "private", "internal", "constant", "immutable",
};

constexpr std::string_view kEtherUnits[] = {
    "wei", "gwei", "szabo", "finney", "ether", "seconds", "minutes", "hours", "days", "weeks",
};

bool contains(std::span<const std::string_view> set, std::string_view value)
{
    return std::ranges::find(set, value) != set.end();
}

bool all_digits(std::string_view s)
{
    return !s.empty() && std::ranges::all_of(s, [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool is_elementary_type_name(const Token& t)
{
    if (t.kind == TokenKind::Keyword) {
        return t.text == "address" || t.text == "bool" || t.text == "string";
    }
    if (t.kind != TokenKind::Identifier) {
        return false;
    }
    const std::string_view w = t.text;
    const auto sized = [&](std::string_view prefix) {
        if (!w.starts_with(prefix)) {
            return false;
        }
        const auto rest = w.substr(prefix.size());
        return rest.empty() || all_digits(rest);
    };
    return sized("uint") || sized("int") || sized("bytes") || w == "byte" || w.starts_with("fixed") ||
           w.starts_with("ufixed");
}

int binary_precedence(const Token& t)
{
    if (t.kind != TokenKind::Punctuation) {
        return -1;
    }
    const std::string_view op = t.text;
    if (op == "||") {
        return 1;
    }
    if (op == "&&") {
        return 2;
    }
    if (op == "==" || op == "!=") {
        return 3;
    }
    if (op == "<" || op == ">" || op == "<=" || op == ">=") {
        return 4;
    }
    if (op == "|") {
        return 5;
    }
    if (op == "^") {
        return 6;
    }
    if (op == "&") {
        return 7;
    }
    if (op == "<<" || op == ">>" || op == ">>>") {
        return 8;
    }
    if (op == "+" || op == "-") {
        return 9;
    }
    if (op == "*" || op == "/" || op == "%") {
        return 10;
    }
    if (op == "**") {
        return 11;
    }
    return -1;
}

expr::BinaryKind binary_kind(std::string_view op)
{
    if (op == "==") {
        return expr::BinaryKind::Eq;
    }
    if (op == "!=") {
        return expr::BinaryKind::Neq;
    }
    if (op == "&&") {
        return expr::BinaryKind::And;
    }
    if (op == "||") {
        return expr::BinaryKind::Or;
    }
    return expr::BinaryKind::Other;
}

bool is_opening(const Token& t)
{
    return t.is_punct("(") || t.is_punct("[") || t.is_punct("{");
}

bool is_closing(const Token& t)
{
    return t.is_punct(")") || t.is_punct("]") || t.is_punct("}");
}

class Parser
{
public:
    explicit Parser(std::span<const Token> tokens)
    {
        toks_.reserve(tokens.size());
        std::ranges::copy_if(tokens, std::back_inserter(toks_),
                             [](const Token& t) { return t.kind != TokenKind::Comment; });
    }

    SourceUnit parse_unit(std::string path)
    {
        SourceUnit unit;
        unit.path = std::move(path);
        while (!at_end()) {
            const Token& t = *peek();
            if (t.is_keyword("pragma") || t.is_keyword("import")) {
                recover();
            } else if (t.is_keyword("abstract") && check_keyword("contract", 1)) {
                advance();
                parse_contract_guarded(unit);
            } else if (t.is_keyword("contract") || t.is_keyword("interface") || t.is_keyword("library")) {
                parse_contract_guarded(unit);
            } else if (t.is_keyword("struct") || t.is_keyword("enum") || t.is_keyword("error") ||
                       t.is_keyword("event") || t.is_keyword("using") || t.is_keyword("type") ||
                       t.is_keyword("function") || is_elementary_type_name(t)) {
                // File-level declarations that carry no contract state.
                recover();
            } else {
                note("unsupported top-level construct skipped", t.loc);
                recover();
            }
        }
        unit.diagnostics = std::move(diags_);
        return unit;
    }

    std::vector<Stmt> parse_free_statements()
    {
        std::vector<Stmt> out;
        while (!at_end()) {
            if (check_punct("}")) {
                note("unbalanced '}' skipped", peek()->loc);
                advance();
                continue;
            }
            parse_statement_into(out);
        }
        return out;
    }

    Diagnostics take_diagnostics() { return std::move(diags_); }

private:
    class NestingGuard
    {
    public:
        explicit NestingGuard(int& depth)
            : depth_(depth)
        {
            if (++depth_ > kMaxNesting) {
                --depth_;
                throw ParseFailure{"nesting too deep"};
            }
        }
        NestingGuard(const NestingGuard&) = delete;
        NestingGuard& operator=(const NestingGuard&) = delete;
        ~NestingGuard() { --depth_; }

    private:
        int& depth_;
    };

    // ---- token cursor -------------------------------------------------------

    [[nodiscard]] bool at_end() const { return pos_ >= toks_.size(); }

    [[nodiscard]] const Token* peek(std::size_t ahead = 0) const
    {
        return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
    }

    [[nodiscard]] bool check_punct(std::string_view p, std::size_t ahead = 0) const
    {
        const Token* t = peek(ahead);
        return t != nullptr && t->is_punct(p);
    }

    [[nodiscard]] bool check_keyword(std::string_view k, std::size_t ahead = 0) const
    {
        const Token* t = peek(ahead);
        return t != nullptr && t->is_keyword(k);
    }

    [[nodiscard]] bool check_kind(TokenKind kind, std::size_t ahead = 0) const
    {
        const Token* t = peek(ahead);
        return t != nullptr && t->kind == kind;
    }

    const Token& advance()
    {
        if (at_end()) {
            throw ParseFailure{"unexpected end of input"};
        }
        return toks_[pos_++];
    }

    const Token& expect_punct(std::string_view p)
    {
        if (!check_punct(p)) {
            throw ParseFailure{"expected '" + std::string(p) + "'"};
        }
        return advance();
    }

    // Statement terminator. A missing `;` right before `}` is tolerated.
    void expect_statement_end()
    {
        if (check_punct("}")) {
            note("missing ';' before '}'", peek()->loc);
            return;
        }
        expect_punct(";");
    }

    const Token& expect_identifier()
    {
        if (!check_kind(TokenKind::Identifier)) {
            throw ParseFailure{"expected identifier"};
        }
        return advance();
    }

    [[nodiscard]] SourceLoc here() const
    {
        if (const Token* t = peek()) {
            return t->loc;
        }
        return toks_.empty() ? SourceLoc{} : toks_.back().loc;
    }

    void note(std::string message, SourceLoc loc)
    {
        diags_.push_back(Diagnostic{std::move(message), loc, DiagSeverity::Note});
    }

    void warn(std::string message, SourceLoc loc)
    {
        diags_.push_back(Diagnostic{std::move(message), loc, DiagSeverity::Warning});
    }

    [[nodiscard]] std::string text_range(std::size_t begin, std::size_t end) const
    {
        std::string out;
        bool glue = true;
        for (std::size_t i = begin; i < end && i < toks_.size(); ++i) {
            const Token& t = toks_[i];
            const bool tight_before = t.is_punct(")") || t.is_punct("]") || t.is_punct(",") || t.is_punct(";") ||
                                      t.is_punct(".") || t.is_punct("(") || t.is_punct("[");
            if (!glue && !tight_before) {
                out += ' ';
            }
            out += t.text;
            glue = t.is_punct("(") || t.is_punct("[") || t.is_punct(".");
        }
        return out;
    }

    // At an opening bracket: consume through its matching closer. Bracket
    // kinds share one counter so mismatched input still terminates.
    // Skips from an opening bracket through its partner, counting only
    // brackets of the same kind.
    void skip_balanced()
    {
        if (at_end()) {
            return;
        }
        const std::string_view open = advance().text;
        const std::string_view close = open == "(" ? ")" : open == "[" ? "]" : "}";
        int depth = 1;
        while (!at_end() && depth > 0) {
            const Token& t = advance();
            if (t.is_punct(open)) {
                ++depth;
            } else if (t.is_punct(close)) {
                --depth;
            }
        }
    }

    // Consume one unrecognized construct: through the next `;` or through the
    // first `{...}` block. A for-header is skipped whole since it may contain
    // `;`. Stops before a `}` that closes the enclosing scope. Always makes
    // progress.
    void recover()
    {
        const std::size_t start = pos_;
        while (!at_end()) {
            const Token& t = *peek();
            if (t.is_punct("{")) {
                skip_balanced();
                return;
            }
            if (t.is_punct("}")) {
                if (pos_ == start) {
                    advance();
                }
                return;
            }
            if (t.is_keyword("for") && check_punct("(", 1)) {
                advance();
                skip_balanced();
                continue;
            }
            advance();
            if (t.is_punct(";")) {
                return;
            }
        }
    }

    // ---- declarations ------------------------------------------------------

    void parse_contract_guarded(SourceUnit& unit)
    {
        const std::size_t start = pos_;
        try {
            unit.contracts.push_back(parse_contract());
        } catch (const ParseFailure& f) {
            pos_ = start;
            note("contract header not recognized: " + f.message, here());
            advance();
            recover();
        }
    }

    ContractDecl parse_contract()
    {
        ContractDecl contract;
        const Token& kw = advance();
        contract.kind = std::string(kw.text);
        contract.loc = kw.loc;
        contract.name = std::string(expect_identifier().text);
        if (check_keyword("is")) {
            advance();
            while (!at_end() && !check_punct("{")) {
                if (check_kind(TokenKind::Identifier)) {
                    contract.bases.push_back(parse_qualified_name());
                    if (check_punct("(")) {
                        skip_balanced();
                    }
                } else if (check_punct(",")) {
                    advance();
                } else {
                    throw ParseFailure{"malformed inheritance list"};
                }
            }
        }
        expect_punct("{");

        while (!at_end() && !check_punct("}")) {
            parse_member_guarded(contract);
        }
        if (at_end()) {
            warn("contract '" + contract.name + "' is missing its closing '}'", here());
        } else {
            advance();
        }
        return contract;
    }

    void parse_member_guarded(ContractDecl& contract)
    {
        const std::size_t start = pos_;
        const std::size_t fn_count = contract.functions.size();
        const std::size_t mod_count = contract.modifiers.size();
        const std::size_t var_count = contract.state_vars.size();
        const SourceLoc loc = here();
        try {
            parse_member(contract);
        } catch (const ParseFailure& f) {
            contract.functions.resize(fn_count);
            contract.modifiers.resize(mod_count);
            contract.state_vars.resize(var_count);
            pos_ = start;
            note("unsupported contract member skipped (" + f.message + ")", loc);
            recover();
            contract.other_members.push_back(OpaqueMember{text_range(start, pos_), loc});
        }
    }

    void parse_member(ContractDecl& contract)
    {
        const Token& t = *peek();
        if (t.is_keyword("function")) {
            contract.functions.push_back(parse_function(FunctionKind::Function));
        } else if (t.is_keyword("constructor")) {
            contract.functions.push_back(parse_function(FunctionKind::Constructor));
        } else if (t.is_keyword("fallback") && check_punct("(", 1)) {
            contract.functions.push_back(parse_function(FunctionKind::Fallback));
        } else if (t.is_keyword("receive") && check_punct("(", 1)) {
            contract.functions.push_back(parse_function(FunctionKind::Receive));
        } else if (t.is_keyword("modifier")) {
            contract.modifiers.push_back(parse_modifier());
        } else if (t.is_keyword("event") || t.is_keyword("error") || t.is_keyword("using") ||
                   t.is_keyword("struct") || t.is_keyword("enum") || t.is_keyword("type")) {
            const std::size_t start = pos_;
            recover();
            contract.other_members.push_back(OpaqueMember{text_range(start, pos_), t.loc});
        } else if (t.is_punct(";")) {
            advance();
        } else {
            contract.state_vars.push_back(parse_state_var());
        }
    }

    std::string parse_qualified_name()
    {
        std::string name(expect_identifier().text);
        while (check_punct(".") && check_kind(TokenKind::Identifier, 1)) {
            advance();
            name += ".";
            name += advance().text;
        }
        return name;
    }

    FunctionDecl parse_function(FunctionKind kind)
    {
        FunctionDecl fn;
        fn.kind = kind;
        fn.loc = advance().loc;
        if (kind == FunctionKind::Function) {
            if (const Token* t = peek(); t != nullptr && t->is_word()) {
                fn.name = std::string(advance().text);
            } else {
                fn.kind = FunctionKind::Fallback;  // pre-0.6 unnamed fallback
            }
        }
        if (!check_punct("(")) {
            throw ParseFailure{"expected parameter list"};
        }
        skip_balanced();

        while (true) {
            const Token* t = peek();
            if (t == nullptr) {
                throw ParseFailure{"unterminated function header"};
            }
            if (t->is_punct("{")) {
                fn.body = parse_block();
                break;
            }
            if (t->is_punct(";")) {
                advance();
                break;
            }
            if (t->kind == TokenKind::Keyword && contains(kFunctionSpecifiers, t->text)) {
                advance();
            } else if (t->is_keyword("override")) {
                advance();
                if (check_punct("(")) {
                    skip_balanced();
                }
            } else if (t->is_keyword("returns")) {
                advance();
                if (!check_punct("(")) {
                    throw ParseFailure{"expected return parameter list"};
                }
                skip_balanced();
            } else if (t->kind == TokenKind::Identifier) {
                fn.modifier_invocations.push_back(parse_qualified_name());
                if (check_punct("(")) {
                    skip_balanced();
                }
            } else {
                throw ParseFailure{"unexpected '" + std::string(t->text) + "' in function header"};
            }
        }
        return fn;
    }

    ModifierDecl parse_modifier()
    {
        ModifierDecl mod;
        mod.loc = advance().loc;
        mod.name = std::string(expect_identifier().text);
        if (check_punct("(")) {
            skip_balanced();
        }
        while (check_keyword("virtual") || check_keyword("override")) {
            advance();
            if (check_punct("(")) {
                skip_balanced();
            }
        }
        if (check_punct("{")) {
            mod.body = parse_block();
        } else if (check_punct(";")) {
            advance();
        } else {
            throw ParseFailure{"expected modifier body"};
        }
        return mod;
    }

    StateVar parse_state_var()
    {
        StateVar var;
        var.loc = here();
        var.type = parse_type();
        while (true) {
            const Token* t = peek();
            if (t == nullptr) {
                throw ParseFailure{"unterminated declaration"};
            }
            if (t->kind == TokenKind::Keyword && contains(kStateVarAttributes, t->text)) {
                advance();
            } else if (t->is_keyword("override")) {
                advance();
                if (check_punct("(")) {
                    skip_balanced();
                }
            } else if (t->kind == TokenKind::Identifier && t->text == "transient" &&
                       check_kind(TokenKind::Identifier, 1)) {
                advance();
            } else {
                break;
            }
        }
        var.name = std::string(expect_identifier().text);
        if (check_punct("=")) {
            advance();
            (void)parse_expression();
        }
        expect_punct(";");
        return var;
    }

    // Elementary, mapping or user-defined type name with array suffixes.
    TypeDesc parse_type()
    {
        TypeDesc type;
        const Token* t = peek();
        if (t == nullptr) {
            throw ParseFailure{"expected type"};
        }
        if (t->is_keyword("mapping")) {
            advance();
            expect_punct("(");
            const TypeDesc key = parse_type();
            if (check_kind(TokenKind::Identifier)) {
                advance();  // named key (0.8.18+)
            }
            expect_punct("=>");
            auto value = std::make_shared<TypeDesc>(parse_type());
            if (check_kind(TokenKind::Identifier)) {
                advance();
            }
            expect_punct(")");
            type.kind = TypeDesc::Kind::Mapping;
            type.key_type = key.text;
            type.text = "mapping(" + key.text + " => " + value->text + ")";
            type.value = std::move(value);
        } else if (is_elementary_type_name(*t)) {
            type.kind = TypeDesc::Kind::Elementary;
            type.text = std::string(advance().text);
            if (type.text == "address" && check_keyword("payable")) {
                advance();
                type.text += " payable";
            }
        } else if (t->kind == TokenKind::Identifier) {
            type.kind = TypeDesc::Kind::Other;
            type.text = parse_qualified_name();
        } else {
            throw ParseFailure{"expected type, found '" + std::string(t->text) + "'"};
        }
        while (check_punct("[")) {
            const std::size_t start = pos_;
            skip_balanced();
            type.kind = TypeDesc::Kind::Other;
            type.text += text_range(start, pos_);
        }
        return type;
    }

    // ---- statements --------------------------------------------------------

    std::vector<Stmt> parse_block()
    {
        const SourceLoc open = expect_punct("{").loc;
        std::vector<Stmt> body;
        while (!at_end() && !check_punct("}")) {
            parse_statement_into(body);
        }
        if (at_end()) {
            warn("block opened here is missing its closing '}'", open);
        } else {
            advance();
        }
        return body;
    }

    void parse_statement_into(std::vector<Stmt>& out)
    {
        const std::size_t start = pos_;
        const std::size_t count = out.size();
        const SourceLoc loc = here();
        try {
            parse_statement(out);
        } catch (const ParseFailure& f) {
            out.resize(count);
            pos_ = start;
            note("statement not recognized (" + f.message + ")", loc);
            recover();
            out.push_back(Stmt{stmt::Opaque{text_range(start, pos_)}, loc});
        }
    }

    void parse_opaque_statement(std::vector<Stmt>& out, bool diagnose)
    {
        const std::size_t start = pos_;
        const SourceLoc loc = here();
        if (diagnose) {
            note("statement outside the analyzed subset", loc);
        }
        recover();
        out.push_back(Stmt{stmt::Opaque{text_range(start, pos_)}, loc});
    }

    void parse_statement(std::vector<Stmt>& out)
    {
        NestingGuard guard(depth_);
        const Token& t = *peek();
        const SourceLoc loc = t.loc;

        if (t.is_punct("{")) {
            auto body = parse_block();
            std::ranges::move(body, std::back_inserter(out));
            return;
        }
        if (t.kind == TokenKind::Identifier && t.text == "_" && check_punct(";", 1)) {
            pos_ += 2;
            out.push_back(Stmt{stmt::Placeholder{}, loc});
            return;
        }
        if (t.is_keyword("if")) {
            advance();
            expect_punct("(");
            stmt::If node;
            node.condition = parse_expression();
            expect_punct(")");
            node.then_body = parse_branch();
            if (check_keyword("else")) {
                advance();
                node.else_body = parse_branch();
            }
            out.push_back(Stmt{std::move(node), loc});
            return;
        }
        if (t.is_keyword("for") || t.is_keyword("while")) {
            // Loop bodies are flattened: reachability is all detection needs.
            advance();
            if (!check_punct("(")) {
                throw ParseFailure{"expected loop header"};
            }
            skip_balanced();
            parse_loop_body(out);
            return;
        }
        if (t.is_keyword("do")) {
            advance();
            parse_loop_body(out);
            if (!check_keyword("while")) {
                throw ParseFailure{"expected 'while' after do-body"};
            }
            advance();
            if (!check_punct("(")) {
                throw ParseFailure{"expected loop condition"};
            }
            skip_balanced();
            expect_statement_end();
            return;
        }
        if (t.is_keyword("unchecked") && check_punct("{", 1)) {
            advance();
            auto body = parse_block();
            std::ranges::move(body, std::back_inserter(out));
            return;
        }
        if (t.is_keyword("return")) {
            advance();
            stmt::Return node;
            if (!check_punct(";")) {
                node.value = parse_expression();
            }
            expect_statement_end();
            out.push_back(Stmt{std::move(node), loc});
            return;
        }
        if (t.is_keyword("revert")) {
            advance();
            stmt::Revert node;
            if (check_kind(TokenKind::Identifier)) {
                node.error_name = parse_qualified_name();
            }
            node.args = parse_call_args();
            expect_statement_end();
            out.push_back(Stmt{std::move(node), loc});
            return;
        }
        if (t.is_keyword("throw")) {
            advance();
            expect_statement_end();
            out.push_back(Stmt{stmt::Revert{}, loc});
            return;
        }
        if (t.kind == TokenKind::Identifier && t.text == "require" && check_punct("(", 1)) {
            advance();
            auto args = parse_call_args();
            if (args.empty() || args.size() > 2) {
                throw ParseFailure{"require takes one or two arguments"};
            }
            expect_statement_end();
            out.push_back(Stmt{stmt::Require{args[0], args.size() > 1 ? args[1] : nullptr}, loc});
            return;
        }
        if (t.is_keyword("emit") || t.is_keyword("break") || t.is_keyword("continue")) {
            parse_opaque_statement(out, false);
            return;
        }
        if (t.is_keyword("assembly") || t.is_keyword("try") || t.is_keyword("catch")) {
            parse_opaque_statement(out, true);
            return;
        }
        if (t.is_punct("(") && looks_like_tuple_decl()) {
            const std::size_t start = pos_;
            skip_balanced();
            stmt::VarDecl node;
            node.name = text_range(start, pos_);
            expect_punct("=");
            node.init = parse_expression();
            expect_statement_end();
            out.push_back(Stmt{std::move(node), loc});
            return;
        }
        if (looks_like_var_decl()) {
            stmt::VarDecl node;
            node.type_text = parse_type().text;
            if (check_keyword("memory") || check_keyword("storage") || check_keyword("calldata")) {
                node.type_text += " ";
                node.type_text += advance().text;
            }
            node.name = std::string(expect_identifier().text);
            if (check_punct("=")) {
                advance();
                node.init = parse_expression();
            }
            expect_statement_end();
            out.push_back(Stmt{std::move(node), loc});
            return;
        }
        parse_expression_statement(out, loc);
    }

    void parse_expression_statement(std::vector<Stmt>& out, SourceLoc loc)
    {
        ExprPtr e = parse_expression();
        if (const Token* op = peek(); op != nullptr && op->kind == TokenKind::Punctuation &&
                                      contains(kAssignOps, op->text)) {
            advance();
            stmt::Assign node;
            node.op = std::string(op->text);
            node.lvalue = std::move(e);
            node.rvalue = parse_expression();
            expect_statement_end();
            out.push_back(Stmt{std::move(node), loc});
            return;
        }
        expect_statement_end();
        if (const auto* u = e->as<expr::Unary>(); u != nullptr && (u->op == "++" || u->op == "--")) {
            stmt::Assign node;
            node.op = u->op == "++" ? "+=" : "-=";
            node.lvalue = u->operand;
            node.rvalue = make_expr(expr::Literal{"1"}, e->loc);
            out.push_back(Stmt{std::move(node), loc});
            return;
        }
        if (e->as<expr::Call>() != nullptr) {
            out.push_back(Stmt{stmt::Call{std::move(e)}, loc});
            return;
        }
        out.push_back(Stmt{stmt::Opaque{render(*e) + ";"}, loc});
    }

    std::vector<Stmt> parse_branch()
    {
        if (at_end()) {
            throw ParseFailure{"missing branch body"};
        }
        std::vector<Stmt> body;
        parse_statement_into(body);
        return body;
    }

    void parse_loop_body(std::vector<Stmt>& out)
    {
        if (at_end()) {
            throw ParseFailure{"missing loop body"};
        }
        if (check_punct(";")) {
            advance();
            return;
        }
        parse_statement_into(out);
    }

    // `Type [memory|storage|calldata] name (= | ;)` ahead?
    [[nodiscard]] bool looks_like_var_decl() const
    {
        std::size_t i = 0;
        const Token* t = peek(i);
        if (t == nullptr) {
            return false;
        }
        if (t->is_keyword("mapping")) {
            return true;
        }
        if (is_elementary_type_name(*t)) {
            ++i;
            if (t->text == "address" && check_keyword("payable", i)) {
                ++i;
            }
        } else if (t->kind == TokenKind::Identifier) {
            ++i;
            while (check_punct(".", i) && check_kind(TokenKind::Identifier, i + 1)) {
                i += 2;
            }
        } else {
            return false;
        }
        while (check_punct("[", i)) {
            if (check_punct("]", i + 1)) {
                i += 2;
            } else if (check_kind(TokenKind::NumberLiteral, i + 1) && check_punct("]", i + 2)) {
                i += 3;
            } else {
                return false;
            }
        }
        if (check_keyword("memory", i) || check_keyword("storage", i) || check_keyword("calldata", i)) {
            ++i;
        }
        return check_kind(TokenKind::Identifier, i) && (check_punct("=", i + 1) || check_punct(";", i + 1));
    }

    // `(Type name, , Type name) = ...` ahead?
    [[nodiscard]] bool looks_like_tuple_decl() const
    {
        int depth = 0;
        bool saw_decl = false;
        for (std::size_t i = 0; const Token* t = peek(i); ++i) {
            if (is_opening(*t)) {
                ++depth;
            } else if (is_closing(*t)) {
                if (--depth == 0) {
                    return saw_decl && check_punct("=", i + 1);
                }
            } else if (depth == 1 && (is_elementary_type_name(*t) || t->kind == TokenKind::Identifier)) {
                const Token* n = peek(i + 1);
                if (n != nullptr && (n->kind == TokenKind::Identifier || n->is_keyword("memory") ||
                                     n->is_keyword("storage") || n->is_keyword("calldata"))) {
                    saw_decl = true;
                }
            }
        }
        return false;
    }

    // ---- expressions -------------------------------------------------------

    ExprPtr parse_expression()
    {
        NestingGuard guard(depth_);
        ExprPtr cond = parse_binary(1);
        if (!check_punct("?")) {
            return cond;
        }
        advance();
        ExprPtr when_true = parse_expression();
        expect_punct(":");
        ExprPtr when_false = parse_expression();
        return make_expr(expr::Opaque{render(*cond) + " ? " + render(*when_true) + " : " + render(*when_false)},
                         cond->loc);
    }

    ExprPtr parse_binary(int min_precedence)
    {
        ExprPtr lhs = parse_unary();
        while (const Token* t = peek()) {
            const int prec = binary_precedence(*t);
            if (prec < min_precedence) {
                break;
            }
            advance();
            // `**` is right-associative
            ExprPtr rhs = parse_binary(t->text == "**" ? prec : prec + 1);
            const SourceLoc loc = lhs->loc;
            lhs = make_expr(expr::Binary{binary_kind(t->text), std::string(t->text), std::move(lhs), std::move(rhs)},
                            loc);
        }
        return lhs;
    }

    ExprPtr parse_unary()
    {
        NestingGuard guard(depth_);
        const Token* t = peek();
        if (t == nullptr) {
            throw ParseFailure{"expected expression"};
        }
        if (t->kind == TokenKind::Punctuation &&
            (t->text == "!" || t->text == "-" || t->text == "~" || t->text == "++" || t->text == "--" ||
             t->text == "+")) {
            advance();
            ExprPtr operand = parse_unary();
            return make_expr(expr::Unary{std::string(t->text), std::move(operand), true}, t->loc);
        }
        if (t->is_keyword("delete")) {
            advance();
            ExprPtr operand = parse_unary();
            return make_expr(expr::Unary{"delete", std::move(operand), true}, t->loc);
        }
        if (t->is_keyword("new")) {
            advance();
            const SourceLoc type_loc = here();
            const std::string type_text = parse_type().text;
            auto created = make_expr(expr::Unary{"new", make_expr(expr::Identifier{type_text}, type_loc), true}, t->loc);
            return parse_postfix(std::move(created));
        }
        return parse_postfix(parse_primary());
    }

    ExprPtr parse_postfix(ExprPtr e)
    {
        while (const Token* t = peek()) {
            if (t->is_punct(".")) {
                advance();
                const Token* field = peek();
                if (field == nullptr || !field->is_word()) {
                    throw ParseFailure{"expected member name"};
                }
                advance();
                const auto* base_id = e->as<expr::Identifier>();
                if (base_id != nullptr && base_id->name == "msg" && field->text == "sender") {
                    e = make_expr(expr::MsgSender{}, e->loc);
                } else {
                    e = make_expr(expr::Member{e, std::string(field->text)}, e->loc);
                }
            } else if (t->is_punct("[")) {
                advance();
                ExprPtr index;
                if (!check_punct("]")) {
                    index = parse_expression();
                }
                expect_punct("]");
                e = make_expr(expr::Index{e, std::move(index)}, e->loc);
            } else if (t->is_punct("(")) {
                auto args = parse_call_args();
                e = make_expr(expr::Call{e, {}, std::move(args)}, e->loc);
            } else if (t->is_punct("{") && check_kind(TokenKind::Identifier, 1) && check_punct(":", 2)) {
                auto options = parse_call_options();
                if (!check_punct("(")) {
                    throw ParseFailure{"expected call arguments after call options"};
                }
                auto args = parse_call_args();
                e = make_expr(expr::Call{e, std::move(options), std::move(args)}, e->loc);
            } else if (t->is_punct("++") || t->is_punct("--")) {
                advance();
                e = make_expr(expr::Unary{std::string(t->text), e, false}, e->loc);
            } else {
                break;
            }
        }
        return e;
    }

    std::vector<expr::CallOption> parse_call_options()
    {
        expect_punct("{");
        std::vector<expr::CallOption> options;
        while (true) {
            std::string name(expect_identifier().text);
            expect_punct(":");
            options.push_back(expr::CallOption{std::move(name), parse_expression()});
            if (check_punct(",")) {
                advance();
                continue;
            }
            expect_punct("}");
            return options;
        }
    }

    std::vector<ExprPtr> parse_call_args()
    {
        expect_punct("(");
        std::vector<ExprPtr> args;
        if (check_punct(")")) {
            advance();
            return args;
        }
        if (check_punct("{")) {
            // named arguments: f({a: 1, b: 2})
            const std::size_t start = pos_;
            const SourceLoc loc = here();
            skip_balanced();
            args.push_back(make_expr(expr::Opaque{text_range(start, pos_)}, loc));
            expect_punct(")");
            return args;
        }
        while (true) {
            args.push_back(parse_expression());
            if (check_punct(",")) {
                advance();
                continue;
            }
            expect_punct(")");
            return args;
        }
    }

    ExprPtr parse_primary()
    {
        const Token* t = peek();
        if (t == nullptr) {
            throw ParseFailure{"expected expression"};
        }
        const SourceLoc loc = t->loc;
        switch (t->kind) {
        case TokenKind::Identifier:
            advance();
            return make_expr(expr::Identifier{std::string(t->text)}, loc);
        case TokenKind::NumberLiteral: {
            advance();
            std::string text(t->text);
            if (const Token* unit = peek();
                unit != nullptr && unit->kind == TokenKind::Identifier && contains(kEtherUnits, unit->text)) {
                advance();
                text += " ";
                text += unit->text;
            }
            return make_expr(expr::Literal{std::move(text)}, loc);
        }
        case TokenKind::StringLiteral: {
            std::string text(advance().text);
            while (check_kind(TokenKind::StringLiteral)) {
                text += " ";
                text += advance().text;
            }
            return make_expr(expr::Literal{std::move(text)}, loc);
        }
        case TokenKind::Keyword:
            if (t->text == "address" && check_punct("(", 1)) {
                advance();
                advance();
                ExprPtr inner = parse_expression();
                expect_punct(")");
                return make_expr(expr::AddressCast{std::move(inner)}, loc);
            }
            if (t->text == "true" || t->text == "false") {
                advance();
                return make_expr(expr::Literal{std::string(t->text)}, loc);
            }
            if (t->text == "payable" || t->text == "type" || t->text == "address" || t->text == "bool" ||
                t->text == "string") {
                advance();
                return make_expr(expr::Identifier{std::string(t->text)}, loc);
            }
            break;
        case TokenKind::Punctuation:
            if (t->text == "(") {
                return parse_parenthesized();
            }
            if (t->text == "[") {
                const std::size_t start = pos_;
                skip_balanced();
                return make_expr(expr::Opaque{text_range(start, pos_)}, loc);
            }
            break;
        default:
            break;
        }
        throw ParseFailure{"unexpected '" + std::string(t->text) + "'"};
    }

    // `(e)` yields e itself; tuples `(a, , b)` become Opaque.
    ExprPtr parse_parenthesized()
    {
        const std::size_t start = pos_;
        const SourceLoc loc = advance().loc;
        if (check_punct(")")) {
            advance();
            return make_expr(expr::Opaque{"()"}, loc);
        }
        ExprPtr first;
        if (!check_punct(",")) {
            first = parse_expression();
        }
        if (first && check_punct(")")) {
            advance();
            return first;
        }
        while (check_punct(",")) {
            advance();
            if (!check_punct(",") && !check_punct(")")) {
                (void)parse_expression();
            }
        }
        expect_punct(")");
        return make_expr(expr::Opaque{text_range(start, pos_)}, loc);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    Diagnostics diags_;
};

}  // namespace

SourceUnit parse_source(std::span<const Token> tokens, std::string path)
{
    Parser parser(tokens);
    return parser.parse_unit(std::move(path));
}

SourceUnit parse_solidity(std::string_view source, std::string path)
{
    const auto tokens = tokenize(source);
    return parse_source(tokens, std::move(path));
}

std::vector<Stmt> parse_statements(std::string_view source, Diagnostics* diagnostics)
{
    const auto tokens = tokenize(source);
    Parser parser(tokens);
    auto body = parser.parse_free_statements();
    if (diagnostics != nullptr) {
        *diagnostics = parser.take_diagnostics();
    }
    return body;
}

}  // namespace centriscan::sol

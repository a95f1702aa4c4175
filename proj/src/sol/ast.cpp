#include "centriscan/sol/ast.hpp"

#include <algorithm>
#include <cctype>

namespace centriscan::sol {

ExprPtr make_expr(Expr::Node node, SourceLoc loc)
{
    return std::make_shared<const Expr>(Expr{std::move(node), loc});
}

std::string FunctionDecl::display_name() const
{
    switch (kind) {
    case FunctionKind::Constructor:
        return "constructor";
    case FunctionKind::Fallback:
        return "fallback";
    case FunctionKind::Receive:
        return "receive";
    case FunctionKind::Function:
        break;
    }
    return name;
}

const ModifierDecl* ContractDecl::find_modifier(std::string_view wanted) const
{
    const auto it = std::ranges::find(modifiers, wanted, &ModifierDecl::name);
    return it == modifiers.end() ? nullptr : &*it;
}

const ContractDecl* SourceUnit::find_contract(std::string_view wanted) const
{
    const auto it = std::ranges::find(contracts, wanted, &ContractDecl::name);
    return it == contracts.end() ? nullptr : &*it;
}

namespace {

bool needs_parens_as_operand(const Expr& e)
{
    if (e.as<expr::Binary>() != nullptr) {
        return true;
    }
    if (const auto* u = e.as<expr::Unary>()) {
        return u->prefix;
    }
    return false;
}

std::string operand(const ExprPtr& e)
{
    if (!e) {
        return {};
    }
    const auto text = render(*e);
    return needs_parens_as_operand(*e) ? "(" + text + ")" : text;
}

std::string binary_operand(const ExprPtr& e)
{
    if (!e) {
        return {};
    }
    const auto text = render(*e);
    return e->as<expr::Binary>() != nullptr ? "(" + text + ")" : text;
}

std::string join_args(const std::vector<ExprPtr>& args)
{
    std::string out;
    for (const auto& a : args) {
        if (!out.empty()) {
            out += ", ";
        }
        out += render(a);
    }
    return out;
}

struct ExprRenderer
{
    std::string operator()(const expr::MsgSender&) const { return "msg.sender"; }
    std::string operator()(const expr::Identifier& e) const { return e.name; }
    std::string operator()(const expr::Member& e) const { return operand(e.base) + "." + e.field; }
    std::string operator()(const expr::Index& e) const
    {
        return operand(e.base) + "[" + (e.index ? render(e.index) : std::string{}) + "]";
    }
    std::string operator()(const expr::Binary& e) const
    {
        return binary_operand(e.lhs) + " " + e.op + " " + binary_operand(e.rhs);
    }
    std::string operator()(const expr::Unary& e) const
    {
        if (!e.prefix) {
            return operand(e.operand) + e.op;
        }
        const bool word = !e.op.empty() && std::isalpha(static_cast<unsigned char>(e.op.front())) != 0;
        return e.op + (word ? " " : "") + operand(e.operand);
    }
    std::string operator()(const expr::Call& e) const
    {
        std::string out = operand(e.callee);
        if (!e.options.empty()) {
            out += "{";
            for (std::size_t i = 0; i < e.options.size(); ++i) {
                if (i != 0) {
                    out += ", ";
                }
                out += e.options[i].name + ": " + render(e.options[i].value);
            }
            out += "}";
        }
        return out + "(" + join_args(e.args) + ")";
    }
    std::string operator()(const expr::AddressCast& e) const { return "address(" + render(e.inner) + ")"; }
    std::string operator()(const expr::Literal& e) const { return e.text; }
    std::string operator()(const expr::Opaque& e) const { return e.text; }
};

std::string pad(int indent)
{
    return std::string(static_cast<std::size_t>(std::max(indent, 0)) * 4, ' ');
}

struct StmtRenderer
{
    int indent;

    std::string operator()(const stmt::Require& s) const
    {
        std::string out = "require(" + render(s.condition);
        if (s.message) {
            out += ", " + render(s.message);
        }
        return out + ");";
    }
    std::string operator()(const stmt::If& s) const
    {
        std::string out = "if (" + render(s.condition) + ") {\n" + render(s.then_body, indent + 1) + pad(indent) + "}";
        if (!s.else_body.empty()) {
            out += " else {\n" + render(s.else_body, indent + 1) + pad(indent) + "}";
        }
        return out;
    }
    std::string operator()(const stmt::Assign& s) const
    {
        return render(s.lvalue) + " " + s.op + " " + render(s.rvalue) + ";";
    }
    std::string operator()(const stmt::Call& s) const { return render(s.call) + ";"; }
    std::string operator()(const stmt::Revert& s) const
    {
        return "revert" + (s.error_name.empty() ? std::string{} : " " + s.error_name) + "(" + join_args(s.args) +
               ");";
    }
    std::string operator()(const stmt::Return& s) const
    {
        return s.value ? "return " + render(s.value) + ";" : std::string{"return;"};
    }
    std::string operator()(const stmt::Placeholder&) const { return "_;"; }
    std::string operator()(const stmt::VarDecl& s) const
    {
        std::string out = s.type_text.empty() ? s.name : s.type_text + " " + s.name;
        if (s.init) {
            out += " = " + render(s.init);
        }
        return out + ";";
    }
    std::string operator()(const stmt::Opaque& s) const { return s.text; }
};

}  // namespace

std::string render(const Expr& e)
{
    return std::visit(ExprRenderer{}, e.node);
}

std::string render(const ExprPtr& e)
{
    return e ? render(*e) : std::string{};
}

std::string render(const Stmt& s, int indent)
{
    return std::visit(StmtRenderer{indent}, s.node);
}

std::string render(const std::vector<Stmt>& body, int indent)
{
    std::string out;
    for (const auto& s : body) {
        out += pad(indent) + render(s, indent) + "\n";
    }
    return out;
}

}  // namespace centriscan::sol

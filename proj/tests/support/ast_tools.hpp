#pragma once

// Structural AST comparison (locations ignored) and a random generator over
// the recognized statement subset.

#include "centriscan/sol/ast.hpp"

#include <random>
#include <string>
#include <vector>

namespace centriscan::asttools {

using namespace centriscan::sol;

inline bool same(const ExprPtr& a, const ExprPtr& b);
inline bool same(const std::vector<Stmt>& a, const std::vector<Stmt>& b);

inline bool same_args(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!same(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

inline bool same(const ExprPtr& a, const ExprPtr& b)
{
    if (!a || !b) {
        return !a && !b;
    }
    if (a->node.index() != b->node.index()) {
        return false;
    }
    if (a->as<expr::MsgSender>()) {
        return true;
    }
    if (const auto* x = a->as<expr::Identifier>()) {
        return x->name == b->as<expr::Identifier>()->name;
    }
    if (const auto* x = a->as<expr::Member>()) {
        const auto* y = b->as<expr::Member>();
        return x->field == y->field && same(x->base, y->base);
    }
    if (const auto* x = a->as<expr::Index>()) {
        const auto* y = b->as<expr::Index>();
        return same(x->base, y->base) && same(x->index, y->index);
    }
    if (const auto* x = a->as<expr::Binary>()) {
        const auto* y = b->as<expr::Binary>();
        return x->kind == y->kind && x->op == y->op && same(x->lhs, y->lhs) && same(x->rhs, y->rhs);
    }
    if (const auto* x = a->as<expr::Unary>()) {
        const auto* y = b->as<expr::Unary>();
        return x->op == y->op && x->prefix == y->prefix && same(x->operand, y->operand);
    }
    if (const auto* x = a->as<expr::Call>()) {
        const auto* y = b->as<expr::Call>();
        if (x->options.size() != y->options.size() || !same(x->callee, y->callee) || !same_args(x->args, y->args)) {
            return false;
        }
        for (std::size_t i = 0; i < x->options.size(); ++i) {
            if (x->options[i].name != y->options[i].name || !same(x->options[i].value, y->options[i].value)) {
                return false;
            }
        }
        return true;
    }
    if (const auto* x = a->as<expr::AddressCast>()) {
        return same(x->inner, b->as<expr::AddressCast>()->inner);
    }
    if (const auto* x = a->as<expr::Literal>()) {
        return x->text == b->as<expr::Literal>()->text;
    }
    return a->as<expr::Opaque>()->text == b->as<expr::Opaque>()->text;
}

inline bool same(const Stmt& a, const Stmt& b)
{
    if (a.node.index() != b.node.index()) {
        return false;
    }
    if (const auto* x = a.as<stmt::Require>()) {
        const auto* y = b.as<stmt::Require>();
        return same(x->condition, y->condition) && same(x->message, y->message);
    }
    if (const auto* x = a.as<stmt::If>()) {
        const auto* y = b.as<stmt::If>();
        return same(x->condition, y->condition) && same(x->then_body, y->then_body) && same(x->else_body, y->else_body);
    }
    if (const auto* x = a.as<stmt::Assign>()) {
        const auto* y = b.as<stmt::Assign>();
        return x->op == y->op && same(x->lvalue, y->lvalue) && same(x->rvalue, y->rvalue);
    }
    if (const auto* x = a.as<stmt::Call>()) {
        return same(x->call, b.as<stmt::Call>()->call);
    }
    if (const auto* x = a.as<stmt::Revert>()) {
        const auto* y = b.as<stmt::Revert>();
        return x->error_name == y->error_name && same_args(x->args, y->args);
    }
    if (const auto* x = a.as<stmt::Return>()) {
        return same(x->value, b.as<stmt::Return>()->value);
    }
    if (a.as<stmt::Placeholder>()) {
        return true;
    }
    if (const auto* x = a.as<stmt::VarDecl>()) {
        const auto* y = b.as<stmt::VarDecl>();
        return x->type_text == y->type_text && x->name == y->name && same(x->init, y->init);
    }
    return a.as<stmt::Opaque>()->text == b.as<stmt::Opaque>()->text;
}

inline bool same(const std::vector<Stmt>& a, const std::vector<Stmt>& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!same(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

/// Random trees restricted to shapes the parser recognizes.
class Generator
{
public:
    explicit Generator(unsigned seed)
        : rng_(seed)
    {}

    ExprPtr expression(int depth = 0)
    {
        const int leaf_bias = depth >= 3 ? 3 : 0;
        switch (pick(8 - leaf_bias) + leaf_bias) {
        case 0:
        {
            const std::size_t k = pick(4);
            return make_expr(expr::Binary{kinds_[k], binops_[k], expression(depth + 1), expression(depth + 1)});
        }
        case 1:
            return make_expr(expr::Member{ident(), name()});
        case 2:
            return make_expr(expr::Index{ident(), expression(depth + 1)});
        case 3:
            return make_expr(expr::Call{make_expr(expr::Member{ident(), name()}), {}, {expression(depth + 1)}});
        case 4:
            return make_expr(expr::AddressCast{ident()});
        case 5:
            return make_expr(expr::MsgSender{});
        case 6:
            return make_expr(expr::Literal{std::to_string(pick(1000))});
        default:
            return ident();
        }
    }

    std::vector<Stmt> statements(int depth = 0)
    {
        std::vector<Stmt> out;
        const std::size_t n = 1 + pick(4);
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(statement(depth));
        }
        return out;
    }

    Stmt statement(int depth = 0)
    {
        switch (pick(depth >= 2 ? 6 : 7)) {
        case 0:
            return Stmt{stmt::Require{expression(), pick(2) ? make_expr(expr::Literal{"\"no\""}) : nullptr}, {}};
        case 1:
            return Stmt{stmt::Assign{lvalue(), expression(), ops_[pick(3)]}, {}};
        case 2:
            return Stmt{stmt::Call{make_expr(expr::Call{make_expr(expr::Member{ident(), "transfer"}), {}, {expression()}})},
                        {}};
        case 3:
            return Stmt{stmt::Revert{pick(2) ? "Unauthorized" : "", {}}, {}};
        case 4:
            return Stmt{stmt::Return{pick(2) ? expression() : nullptr}, {}};
        case 5:
            return Stmt{stmt::VarDecl{"uint", name(), expression()}, {}};
        default:
            return Stmt{stmt::If{expression(), statements(depth + 1), pick(2) ? statements(depth + 1) : std::vector<Stmt>{}},
                        {}};
        }
    }

private:
    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

    std::string name() { return names_[pick(std::size(names_))]; }

    ExprPtr ident() { return make_expr(expr::Identifier{name()}); }

    ExprPtr lvalue()
    {
        return pick(2) ? make_expr(expr::Index{ident(), expression(2)}) : ident();
    }

    std::mt19937 rng_;
    static constexpr const char* names_[] = {"owner", "bals", "x", "total", "admin", "to", "amount"};
    static constexpr expr::BinaryKind kinds_[] = {expr::BinaryKind::Eq, expr::BinaryKind::Neq, expr::BinaryKind::And,
                                                  expr::BinaryKind::Or};
    static constexpr const char* binops_[] = {"==", "!=", "&&", "||"};
    static constexpr const char* ops_[] = {"=", "+=", "-="};
};

}  // namespace centriscan::asttools

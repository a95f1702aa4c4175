#pragma once

#include "centriscan/common.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace centriscan::sol {

struct Expr;
/// Expression nodes are immutable once parsed; sharing subtrees is safe.
using ExprPtr = std::shared_ptr<const Expr>;

namespace expr {

struct MsgSender
{};

struct Identifier
{
    std::string name;
};

struct Member
{
    ExprPtr base;
    std::string field;
};

/// `base[index]`; index is null for the type form `T[]`.
struct Index
{
    ExprPtr base;
    ExprPtr index;
};

enum class BinaryKind { Eq, Neq, And, Or, Other };

struct Binary
{
    BinaryKind kind = BinaryKind::Other;
    std::string op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Unary
{
    std::string op;
    ExprPtr operand;
    bool prefix = true;
};

/// `name: value` entry of `f{value: v, gas: g}(...)`.
struct CallOption
{
    std::string name;
    ExprPtr value;
};

struct Call
{
    ExprPtr callee;
    std::vector<CallOption> options;
    std::vector<ExprPtr> args;
};

struct AddressCast
{
    ExprPtr inner;
};

struct Literal
{
    std::string text;
};

struct Opaque
{
    std::string text;
};

}  // namespace expr

struct Expr
{
    using Node = std::variant<expr::MsgSender, expr::Identifier, expr::Member, expr::Index, expr::Binary,
                              expr::Unary, expr::Call, expr::AddressCast, expr::Literal, expr::Opaque>;
    Node node;
    SourceLoc loc;

    template <typename T>
    [[nodiscard]] const T* as() const
    {
        return std::get_if<T>(&node);
    }
};

[[nodiscard]] ExprPtr make_expr(Expr::Node node, SourceLoc loc = {});

struct Stmt;

namespace stmt {

struct Require
{
    ExprPtr condition;
    ExprPtr message;  // may be null
};

struct If
{
    ExprPtr condition;
    std::vector<Stmt> then_body;
    std::vector<Stmt> else_body;
};

/// `op` is "=" or a compound operator such as "+="; `x++` is stored as `x += 1`.
struct Assign
{
    ExprPtr lvalue;
    ExprPtr rvalue;
    std::string op = "=";

    [[nodiscard]] bool compound() const { return op != "="; }
};

struct Call
{
    ExprPtr call;
};

/// `revert();`, `revert("msg");`, `revert Err(args);` and legacy `throw;`.
struct Revert
{
    std::string error_name;
    std::vector<ExprPtr> args;
};

struct Return
{
    ExprPtr value;  // may be null
};

/// The `_;` of a modifier body.
struct Placeholder
{};

/// Local declaration, including tuple forms where `type_text` is empty and
/// `name` holds the rendered tuple.
struct VarDecl
{
    std::string type_text;
    std::string name;
    ExprPtr init;  // may be null
};

struct Opaque
{
    std::string text;
};

}  // namespace stmt

struct Stmt
{
    using Node = std::variant<stmt::Require, stmt::If, stmt::Assign, stmt::Call, stmt::Revert, stmt::Return,
                              stmt::Placeholder, stmt::VarDecl, stmt::Opaque>;
    Node node;
    SourceLoc loc;

    template <typename T>
    [[nodiscard]] const T* as() const
    {
        return std::get_if<T>(&node);
    }
};

struct TypeDesc
{
    enum class Kind { Elementary, Mapping, Other };

    Kind kind = Kind::Other;
    std::string text;                        // verbatim, tokens joined by single spaces
    std::string key_type;                    // Mapping only
    std::shared_ptr<const TypeDesc> value;   // Mapping only
};

struct StateVar
{
    std::string name;
    TypeDesc type;
    SourceLoc loc;
};

struct ModifierDecl
{
    std::string name;
    std::vector<Stmt> body;
    SourceLoc loc;
};

enum class FunctionKind { Function, Constructor, Fallback, Receive };

struct FunctionDecl
{
    std::string name;  // empty for constructor/fallback/receive
    FunctionKind kind = FunctionKind::Function;
    std::vector<std::string> modifier_invocations;
    std::vector<Stmt> body;
    SourceLoc loc;

    /// Name for reports: `name`, or "constructor"/"fallback"/"receive".
    [[nodiscard]] std::string display_name() const;
};

/// Member that is outside the recognized subset (events, structs, assembly, ...).
struct OpaqueMember
{
    std::string text;
    SourceLoc loc;
};

struct ContractDecl
{
    std::string name;
    std::string kind = "contract";  // contract | interface | library
    std::vector<std::string> bases;
    std::vector<StateVar> state_vars;
    std::vector<ModifierDecl> modifiers;
    std::vector<FunctionDecl> functions;
    std::vector<OpaqueMember> other_members;
    SourceLoc loc;

    [[nodiscard]] const ModifierDecl* find_modifier(std::string_view name) const;
};

struct SourceUnit
{
    std::string path;
    std::vector<ContractDecl> contracts;
    Diagnostics diagnostics;

    [[nodiscard]] const ContractDecl* find_contract(std::string_view name) const;
};

/// Re-serializes an expression as Solidity text. Nested binary operands are
/// parenthesized so the text re-parses to the same tree.
[[nodiscard]] std::string render(const Expr& e);
[[nodiscard]] std::string render(const ExprPtr& e);
[[nodiscard]] std::string render(const Stmt& s, int indent = 0);
[[nodiscard]] std::string render(const std::vector<Stmt>& body, int indent = 0);

}  // namespace centriscan::sol

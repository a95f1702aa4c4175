#pragma once

#include "centriscan/sol/ast.hpp"

#include <map>
#include <string>
#include <string_view>

namespace centriscan::sol {

/// Contract-level state variables by name.
class SymbolTable
{
public:
    /// Inserts or replaces. Returns false when `var.name` was already present.
    bool insert(StateVar var);

    [[nodiscard]] const StateVar* find(std::string_view name) const;
    [[nodiscard]] std::size_t size() const { return vars_.size(); }

    /// True iff `name` is `mapping(address => uintN)`.
    [[nodiscard]] bool is_address_to_uint_mapping(std::string_view name) const;
    /// True iff `name` is `mapping(address => mapping(address => uintN))`.
    [[nodiscard]] bool is_nested_address_to_uint_mapping(std::string_view name) const;

private:
    std::map<std::string, StateVar, std::less<>> vars_;
};

[[nodiscard]] bool is_address_to_uint_mapping(const TypeDesc& type);

struct SymbolCollection
{
    SymbolTable symbols;
    Diagnostics diagnostics;
};

/// Builds the symbol table for one contract. Duplicate names keep the last
/// declaration and report a diagnostic.
[[nodiscard]] SymbolCollection collect_state_vars(const ContractDecl& contract);

}  // namespace centriscan::sol

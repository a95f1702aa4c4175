#include "centriscan/sol/symbols.hpp"

namespace centriscan::sol {

bool is_address_to_uint_mapping(const TypeDesc& type)
{
    return type.kind == TypeDesc::Kind::Mapping && (type.key_type == "address" || type.key_type == "address payable") &&
           type.value && type.value->kind == TypeDesc::Kind::Elementary && type.value->text.starts_with("uint");
}

bool SymbolTable::insert(StateVar var)
{
    auto name = var.name;
    const auto [it, inserted] = vars_.insert_or_assign(std::move(name), std::move(var));
    return inserted;
}

const StateVar* SymbolTable::find(std::string_view name) const
{
    const auto it = vars_.find(name);
    return it == vars_.end() ? nullptr : &it->second;
}

bool SymbolTable::is_address_to_uint_mapping(std::string_view name) const
{
    const StateVar* var = find(name);
    return var != nullptr && sol::is_address_to_uint_mapping(var->type);
}

bool SymbolTable::is_nested_address_to_uint_mapping(std::string_view name) const
{
    const StateVar* var = find(name);
    if (var == nullptr) {
        return false;
    }
    const TypeDesc& t = var->type;
    return t.kind == TypeDesc::Kind::Mapping && t.key_type.starts_with("address") && t.value &&
           sol::is_address_to_uint_mapping(*t.value);
}

SymbolCollection collect_state_vars(const ContractDecl& contract)
{
    SymbolCollection out;
    for (const auto& var : contract.state_vars) {
        if (!out.symbols.insert(var)) {
            out.diagnostics.push_back(Diagnostic{"duplicate state variable '" + var.name + "'; last declaration wins",
                                                 var.loc, DiagSeverity::Warning});
        }
    }
    return out;
}

}  // namespace centriscan::sol

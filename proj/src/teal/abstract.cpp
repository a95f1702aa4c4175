#include "centriscan/teal/abstract.hpp"

#include <charconv>

namespace centriscan::teal {

std::string render(const AbstractValue& v)
{
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, value::Unknown>) {
                return "?";
            } else if constexpr (std::is_same_v<T, value::Sender>) {
                return "txn Sender";
            } else if constexpr (std::is_same_v<T, value::GlobalField>) {
                return "global " + x.name;
            } else if constexpr (std::is_same_v<T, value::GlobalGet>) {
                return "app_global_get[\"" + x.key + "\"]";
            } else if constexpr (std::is_same_v<T, value::ByteConst>) {
                return x.opaque ? "byte " + x.value : "byte \"" + x.value + "\"";
            } else if constexpr (std::is_same_v<T, value::IntConst>) {
                return "int " + std::to_string(x.value);
            } else if constexpr (std::is_same_v<T, value::AddrConst>) {
                return "addr " + x.value;
            } else {
                return std::string("txn Sender ") + (x.equal ? "==" : "!=") + " " + x.source;
            }
        },
        v);
}

std::optional<std::string> privileged_source(const AbstractValue& v, const AnalyzerConfig& config)
{
    if (const auto* get = std::get_if<value::GlobalGet>(&v); get != nullptr && config.is_owner_key(get->key)) {
        return render(v);
    }
    if (const auto* field = std::get_if<value::GlobalField>(&v); field != nullptr && field->name == "CreatorAddress") {
        return render(v);
    }
    if (std::holds_alternative<value::AddrConst>(v)) {
        return render(v);
    }
    return std::nullopt;
}

namespace {

std::optional<std::size_t> index_immediate(const Instruction& ins)
{
    // intc_2 / bytec_1 carry the index in the opcode name.
    if (const auto underscore = ins.opcode.rfind('_'); underscore != std::string::npos &&
                                                      (ins.opcode.starts_with("intc_") || ins.opcode.starts_with("bytec_"))) {
        return static_cast<std::size_t>(ins.opcode[underscore + 1] - '0');
    }
    if (ins.immediates.empty()) {
        return std::nullopt;
    }
    std::size_t value = 0;
    const auto& s = ins.immediates.front();
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return value;
}

AbstractValue byte_value(std::span<const std::string> immediates)
{
    if (immediates.empty()) {
        return value::Unknown{};
    }
    if (auto decoded = decode_byte_constant(immediates)) {
        return value::ByteConst{std::move(*decoded), false};
    }
    std::string joined;
    for (const auto& imm : immediates) {
        if (!joined.empty()) {
            joined += ' ';
        }
        joined += imm;
    }
    return value::ByteConst{std::move(joined), true};
}

AbstractValue int_value(std::string_view text)
{
    if (const auto v = decode_int_constant(text)) {
        return value::IntConst{*v};
    }
    return value::Unknown{};
}

const value::SenderCmp* as_cmp(const AbstractValue& v)
{
    return std::get_if<value::SenderCmp>(&v);
}

std::optional<std::string> const_key(const AbstractValue& v)
{
    const auto* bytes = std::get_if<value::ByteConst>(&v);
    if (bytes == nullptr || bytes->opaque) {
        return std::nullopt;
    }
    return bytes->value;
}

class Interpreter
{
public:
    Interpreter(const TealProgram& program, const AnalyzerConfig& config, BlockFacts& facts, bool base_known)
        : program_(program)
        , config_(config)
        , facts_(facts)
        , base_known_(base_known)
    {}

    void step(const Instruction& ins)
    {
        InstructionFacts out;
        if (!ins.stack_delta) {
            depth_unknown_ = true;
            facts_.instructions.push_back(std::move(out));
            return;
        }
        out.popped = pop(ins.stack_delta->pops, ins);
        auto results = model(ins, out);
        results.resize(static_cast<std::size_t>(ins.stack_delta->pushes), value::Unknown{});
        for (auto& r : results) {
            if (depth_unknown_) {
                r = value::Unknown{};
            }
            stack_.push_back(r);
        }
        out.pushed = std::move(results);
        facts_.instructions.push_back(std::move(out));
    }

    void finish()
    {
        facts_.exit_stack = stack_;
        facts_.exit_depth_unknown = depth_unknown_ || !base_known_;
    }

private:
    std::vector<AbstractValue> pop(int count, const Instruction& ins)
    {
        std::vector<AbstractValue> values(static_cast<std::size_t>(count), value::Unknown{});
        for (int i = count - 1; i >= 0; --i) {
            if (depth_unknown_) {
                continue;
            }
            if (!stack_.empty()) {
                values[static_cast<std::size_t>(i)] = std::move(stack_.back());
                stack_.pop_back();
            } else if (base_known_) {
                facts_.diagnostics.push_back(Diagnostic{"abstract stack underflow at '" + ins.opcode +
                                                            "'; remaining values in this block are unknown",
                                                        ins.loc(), DiagSeverity::Warning});
                depth_unknown_ = true;
            }
        }
        return values;
    }

    std::vector<AbstractValue> model(const Instruction& ins, InstructionFacts& out)
    {
        const std::string_view op = ins.opcode;
        const auto& args = out.popped;
        const auto& imm = ins.immediates;

        if (op == "int" || op == "pushint") {
            return {imm.empty() ? AbstractValue{value::Unknown{}} : int_value(imm.front())};
        }
        if (op == "pushints") {
            std::vector<AbstractValue> r;
            for (const auto& i : imm) {
                r.push_back(int_value(i));
            }
            return r;
        }
        if (op.starts_with("intc") && op != "intcblock") {
            const auto idx = index_immediate(ins);
            if (idx && *idx < program_.intc_block.size()) {
                return {int_value(program_.intc_block[*idx])};
            }
            return {value::Unknown{}};
        }
        if (op == "byte" || op == "pushbytes") {
            return {byte_value(imm)};
        }
        if (op == "pushbytess") {
            std::vector<AbstractValue> r;
            for (const auto& i : imm) {
                r.push_back(byte_value(std::span(&i, 1)));
            }
            return r;
        }
        if (op.starts_with("bytec") && op != "bytecblock") {
            const auto idx = index_immediate(ins);
            if (idx && *idx < program_.bytec_block.size()) {
                return {byte_value(std::span(&program_.bytec_block[*idx], 1))};
            }
            return {value::Unknown{}};
        }
        if (op == "addr") {
            return {imm.empty() ? AbstractValue{value::Unknown{}} : AbstractValue{value::AddrConst{imm.front()}}};
        }
        if (op == "txn") {
            return {!imm.empty() && imm.front() == "Sender" ? AbstractValue{value::Sender{}}
                                                             : AbstractValue{value::Unknown{}}};
        }
        if (op == "gtxn") {
            return {config_.gtxn_sender && imm.size() >= 2 && imm[1] == "Sender" ? AbstractValue{value::Sender{}}
                                                                                  : AbstractValue{value::Unknown{}}};
        }
        if (op == "gtxns") {
            return {config_.gtxn_sender && !imm.empty() && imm.front() == "Sender" ? AbstractValue{value::Sender{}}
                                                                                    : AbstractValue{value::Unknown{}}};
        }
        if (op == "global") {
            return {imm.empty() ? AbstractValue{value::Unknown{}} : AbstractValue{value::GlobalField{imm.front()}}};
        }
        if (op == "app_global_get") {
            if (auto key = const_key(args[0])) {
                return {value::GlobalGet{std::move(*key)}};
            }
            return {value::Unknown{}};
        }
        if (op == "==" || op == "!=") {
            return {compare(args[0], args[1], op == "==")};
        }
        if (op == "&&" || op == "||") {
            const auto* cmp = as_cmp(args[0]) != nullptr ? as_cmp(args[0]) : as_cmp(args[1]);
            if (cmp == nullptr) {
                return {value::Unknown{}};
            }
            value::SenderCmp r = *cmp;
            r.weakened = r.weakened || op == "||";
            return {r};
        }
        if (op == "!") {
            if (const auto* cmp = as_cmp(args[0])) {
                value::SenderCmp r = *cmp;
                r.equal = !r.equal;
                return {r};
            }
            return {value::Unknown{}};
        }
        if (op == "assert") {
            if (const auto* cmp = as_cmp(args[0]); cmp != nullptr && cmp->equal) {
                out.guard_point = true;
            }
            return {};
        }
        if (op == "bz" || op == "bnz") {
            if (const auto* cmp = as_cmp(args[0])) {
                facts_.branch_condition = *cmp;
            }
            return {};
        }
        if (op == "app_local_put" || op == "app_global_put") {
            const AbstractValue& key = op == "app_local_put" ? args[1] : args[0];
            if (auto k = const_key(key)) {
                if (config_.is_balance_key(*k)) {
                    out.fund_mod = true;
                    out.put_key = std::move(*k);
                }
            } else {
                facts_.diagnostics.push_back(Diagnostic{"'" + ins.opcode +
                                                            "' key is not a constant; not treated as a balance modification",
                                                        ins.loc(), DiagSeverity::Note});
            }
            return {};
        }
        if (op == "dup") {
            return {args[0], args[0]};
        }
        if (op == "dup2") {
            return {args[0], args[1], args[0], args[1]};
        }
        if (op == "swap") {
            return {args[1], args[0]};
        }
        if (op == "dig") {
            auto r = args;
            r.push_back(args.front());
            return r;
        }
        if (op == "cover" && !args.empty()) {
            std::vector<AbstractValue> r{args.back()};
            r.insert(r.end(), args.begin(), args.end() - 1);
            return r;
        }
        if (op == "uncover" && !args.empty()) {
            std::vector<AbstractValue> r(args.begin() + 1, args.end());
            r.push_back(args.front());
            return r;
        }
        if (op == "dupn" && !args.empty()) {
            return std::vector<AbstractValue>(static_cast<std::size_t>(ins.stack_delta->pushes), args.front());
        }
        return {};
    }

    AbstractValue compare(const AbstractValue& a, const AbstractValue& b, bool equal) const
    {
        const bool a_sender = std::holds_alternative<value::Sender>(a);
        const bool b_sender = std::holds_alternative<value::Sender>(b);
        if (a_sender == b_sender) {
            return value::Unknown{};
        }
        if (auto source = privileged_source(a_sender ? b : a, config_)) {
            return value::SenderCmp{std::move(*source), equal, false};
        }
        return value::Unknown{};
    }

    const TealProgram& program_;
    const AnalyzerConfig& config_;
    BlockFacts& facts_;
    std::vector<AbstractValue> stack_;
    bool base_known_;
    bool depth_unknown_ = false;
};

}  // namespace

BlockFacts abstract_exec_block(const BasicBlock& block,
                               std::size_t block_index,
                               const TealProgram& program,
                               const AnalyzerConfig& config)
{
    BlockFacts facts;
    facts.block = block_index;
    facts.instructions.reserve(block.end - block.begin);
    Interpreter interp(program, config, facts, block.begin == 0);
    for (std::size_t i = block.begin; i < block.end && i < program.instructions.size(); ++i) {
        interp.step(program.instructions[i]);
    }
    interp.finish();
    return facts;
}

std::vector<BlockFacts> abstract_exec(const Cfg& cfg, const TealProgram& program, const AnalyzerConfig& config)
{
    std::vector<BlockFacts> out;
    out.reserve(cfg.blocks.size());
    for (std::size_t b = 0; b < cfg.blocks.size(); ++b) {
        out.push_back(abstract_exec_block(cfg.blocks[b], b, program, config));
    }
    return out;
}

}  // namespace centriscan::teal

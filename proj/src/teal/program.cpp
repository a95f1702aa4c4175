#include "centriscan/teal/program.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <unordered_map>

namespace centriscan::teal {

namespace {

struct OpcodeEntry
{
    std::string_view name;
    StackEffect effect;
};

// Fixed-arity opcodes, TEAL v2-v8. Immediate-dependent opcodes are handled
// in stack_effect().
constexpr OpcodeEntry kOpcodeTable[] = {
    // constants and fields
    {"int", {0, 1}}, {"pushint", {0, 1}}, {"byte", {0, 1}}, {"pushbytes", {0, 1}},
    {"addr", {0, 1}}, {"method", {0, 1}}, {"intc", {0, 1}}, {"intc_0", {0, 1}}, {"intc_1", {0, 1}},
    {"intc_2", {0, 1}}, {"intc_3", {0, 1}}, {"bytec", {0, 1}}, {"bytec_0", {0, 1}}, {"bytec_1", {0, 1}},
    {"bytec_2", {0, 1}}, {"bytec_3", {0, 1}}, {"arg", {0, 1}}, {"arg_0", {0, 1}}, {"arg_1", {0, 1}},
    {"arg_2", {0, 1}}, {"arg_3", {0, 1}}, {"args", {1, 1}}, {"intcblock", {0, 0}}, {"bytecblock", {0, 0}},
    {"txn", {0, 1}}, {"gtxn", {0, 1}}, {"txna", {0, 1}}, {"gtxna", {0, 1}}, {"txnas", {1, 1}},
    {"gtxnas", {1, 1}}, {"gtxns", {1, 1}}, {"gtxnsa", {1, 1}}, {"gtxnsas", {2, 1}}, {"global", {0, 1}},
    {"load", {0, 1}}, {"store", {1, 0}}, {"loads", {1, 1}}, {"stores", {2, 0}}, {"gload", {0, 1}},
    {"gloads", {1, 1}}, {"gloadss", {2, 1}}, {"gaid", {0, 1}}, {"gaids", {1, 1}},
    // arithmetic and logic
    {"+", {2, 1}}, {"-", {2, 1}}, {"*", {2, 1}}, {"/", {2, 1}}, {"%", {2, 1}}, {"<", {2, 1}},
    {">", {2, 1}}, {"<=", {2, 1}}, {">=", {2, 1}}, {"==", {2, 1}}, {"!=", {2, 1}}, {"&&", {2, 1}},
    {"||", {2, 1}}, {"&", {2, 1}}, {"|", {2, 1}}, {"^", {2, 1}}, {"!", {1, 1}}, {"~", {1, 1}},
    {"exp", {2, 1}}, {"shl", {2, 1}}, {"shr", {2, 1}}, {"sqrt", {1, 1}}, {"bitlen", {1, 1}},
    {"mulw", {2, 2}}, {"addw", {2, 2}}, {"divw", {3, 1}}, {"divmodw", {4, 4}}, {"expw", {2, 2}},
    {"btoi", {1, 1}}, {"itob", {1, 1}}, {"len", {1, 1}}, {"concat", {2, 1}}, {"substring", {1, 1}},
    {"substring3", {3, 1}}, {"extract", {1, 1}}, {"extract3", {3, 1}}, {"extract_uint16", {2, 1}},
    {"extract_uint32", {2, 1}}, {"extract_uint64", {2, 1}}, {"replace2", {2, 1}}, {"replace3", {3, 1}},
    {"getbit", {2, 1}}, {"setbit", {3, 1}}, {"getbyte", {2, 1}}, {"setbyte", {3, 1}}, {"bzero", {1, 1}},
    {"b+", {2, 1}}, {"b-", {2, 1}}, {"b*", {2, 1}}, {"b/", {2, 1}}, {"b%", {2, 1}}, {"b<", {2, 1}},
    {"b>", {2, 1}}, {"b<=", {2, 1}}, {"b>=", {2, 1}}, {"b==", {2, 1}}, {"b!=", {2, 1}}, {"b|", {2, 1}},
    {"b&", {2, 1}}, {"b^", {2, 1}}, {"b~", {1, 1}}, {"bsqrt", {1, 1}}, {"base64_decode", {1, 1}},
    {"json_ref", {2, 1}},
    // crypto
    {"sha256", {1, 1}}, {"keccak256", {1, 1}}, {"sha512_256", {1, 1}}, {"sha3_256", {1, 1}},
    {"ed25519verify", {3, 1}}, {"ed25519verify_bare", {3, 1}}, {"ecdsa_verify", {5, 1}},
    {"ecdsa_pk_decompress", {1, 2}}, {"ecdsa_pk_recover", {4, 2}}, {"vrf_verify", {3, 2}}, {"block", {1, 1}},
    // stack manipulation
    {"pop", {1, 0}}, {"dup", {1, 2}}, {"dup2", {2, 4}}, {"swap", {2, 2}}, {"select", {3, 1}},
    {"bury", {1, 0}}, {"frame_dig", {0, 1}}, {"frame_bury", {1, 0}}, {"proto", {0, 0}},
    // control flow
    {"err", {0, 0}}, {"bnz", {1, 0}}, {"bz", {1, 0}}, {"b", {0, 0}}, {"return", {1, 0}},
    {"assert", {1, 0}}, {"callsub", {0, 0}}, {"retsub", {0, 0}}, {"switch", {1, 0}},
    // state access
    {"balance", {1, 1}}, {"min_balance", {1, 1}}, {"app_opted_in", {2, 1}}, {"app_local_get", {2, 1}},
    {"app_local_get_ex", {3, 2}}, {"app_global_get", {1, 1}}, {"app_global_get_ex", {2, 2}},
    {"app_local_put", {3, 0}}, {"app_global_put", {2, 0}}, {"app_local_del", {2, 0}},
    {"app_global_del", {1, 0}}, {"asset_holding_get", {2, 2}}, {"asset_params_get", {1, 2}},
    {"app_params_get", {1, 2}}, {"acct_params_get", {1, 2}}, {"log", {1, 0}},
    {"box_create", {2, 1}}, {"box_extract", {3, 1}}, {"box_replace", {3, 0}}, {"box_del", {1, 1}},
    {"box_len", {1, 2}}, {"box_get", {1, 2}}, {"box_put", {2, 0}},
    // inner transactions
    {"itxn_begin", {0, 0}}, {"itxn_next", {0, 0}}, {"itxn_field", {1, 0}}, {"itxn_submit", {0, 0}},
    {"itxn", {0, 1}}, {"itxna", {0, 1}}, {"itxnas", {1, 1}}, {"gitxn", {0, 1}}, {"gitxna", {0, 1}},
    {"gitxnas", {1, 1}},
};

const std::unordered_map<std::string_view, StackEffect>& opcode_map()
{
    static const auto map = [] {
        std::unordered_map<std::string_view, StackEffect> m;
        for (const auto& entry : kOpcodeTable) {
            m.emplace(entry.name, entry.effect);
        }
        return m;
    }();
    return map;
}

constexpr std::string_view kVariableArity[] = {
    "dig", "cover", "uncover", "dupn", "popn", "pushints", "pushbytess", "match",
};

std::optional<int> small_count(std::span<const std::string> immediates)
{
    if (immediates.empty()) {
        return std::nullopt;
    }
    int value = 0;
    const auto& s = immediates.front();
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || value < 0 || value > 255) {
        return std::nullopt;
    }
    return value;
}

// Splits one source line into words. Quoted strings (with escapes) stay one
// word; `//` outside quotes starts a comment.
struct Word
{
    std::string text;
    std::uint32_t column;
};

std::vector<Word> split_line(std::string_view line)
{
    std::vector<Word> words;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < line.size() && line[i + 1] == '/') {
            break;
        }
        const std::size_t start = i;
        bool in_string = false;
        while (i < line.size()) {
            const char ch = line[i];
            if (in_string) {
                if (ch == '\\' && i + 1 < line.size()) {
                    i += 2;
                    continue;
                }
                if (ch == '"') {
                    in_string = false;
                }
                ++i;
                continue;
            }
            if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\f' || ch == '\v') {
                break;
            }
            if (ch == '/' && i + 1 < line.size() && line[i + 1] == '/') {
                break;
            }
            if (ch == '"') {
                in_string = true;
            }
            ++i;
        }
        words.push_back(Word{std::string(line.substr(start, i - start)), static_cast<std::uint32_t>(start + 1)});
    }
    return words;
}

std::optional<std::string> unquote(std::string_view s)
{
    if (s.size() < 2 || s.front() != '"' || s.back() != '"') {
        return std::nullopt;
    }
    s = s.substr(1, s.size() - 2);
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\' || i + 1 >= s.size()) {
            out += s[i];
            continue;
        }
        const char e = s[++i];
        switch (e) {
        case 'n':
            out += '\n';
            break;
        case 't':
            out += '\t';
            break;
        case 'r':
            out += '\r';
            break;
        case '0':
            out += '\0';
            break;
        case 'x':
            if (i + 2 < s.size()) {
                int v = 0;
                const auto [p, ec] = std::from_chars(s.data() + i + 1, s.data() + i + 3, v, 16);
                if (ec == std::errc{} && p == s.data() + i + 3) {
                    out += static_cast<char>(v);
                    i += 2;
                    break;
                }
            }
            out += e;
            break;
        default:
            out += e;
            break;
        }
    }
    return out;
}

std::optional<std::string> decode_hex(std::string_view s)
{
    if (s.size() % 2 != 0) {
        return std::nullopt;
    }
    std::string out;
    for (std::size_t i = 0; i < s.size(); i += 2) {
        int v = 0;
        const auto [p, ec] = std::from_chars(s.data() + i, s.data() + i + 2, v, 16);
        if (ec != std::errc{} || p != s.data() + i + 2) {
            return std::nullopt;
        }
        out += static_cast<char>(v);
    }
    return out;
}

}  // namespace

bool is_known_opcode(std::string_view opcode)
{
    return opcode_map().contains(opcode) || std::ranges::find(kVariableArity, opcode) != std::end(kVariableArity);
}

std::optional<StackEffect> stack_effect(std::string_view opcode, std::span<const std::string> immediates)
{
    if (const auto it = opcode_map().find(opcode); it != opcode_map().end()) {
        return it->second;
    }
    const int count = static_cast<int>(immediates.size());
    if (opcode == "pushints" || opcode == "pushbytess") {
        return StackEffect{0, count};
    }
    if (opcode == "match") {
        return StackEffect{count + 1, 0};
    }
    const auto n = small_count(immediates);
    if (!n) {
        return std::nullopt;
    }
    if (opcode == "dig") {
        return StackEffect{*n + 1, *n + 2};
    }
    if (opcode == "cover" || opcode == "uncover") {
        return StackEffect{*n + 1, *n + 1};
    }
    if (opcode == "dupn") {
        return StackEffect{1, *n + 1};
    }
    if (opcode == "popn") {
        return StackEffect{*n, 0};
    }
    return std::nullopt;
}

bool is_conditional_branch(std::string_view opcode)
{
    return opcode == "bz" || opcode == "bnz";
}

bool is_multiway_branch(std::string_view opcode)
{
    return opcode == "switch" || opcode == "match";
}

bool is_terminator(std::string_view opcode)
{
    return opcode == "return" || opcode == "err" || opcode == "retsub";
}

std::vector<std::string> branch_targets(const Instruction& ins)
{
    const std::string_view op = ins.opcode;
    if (op == "b" || op == "bz" || op == "bnz" || op == "callsub") {
        if (ins.immediates.empty()) {
            return {};
        }
        return {ins.immediates.front()};
    }
    if (is_multiway_branch(op)) {
        return ins.immediates;
    }
    return {};
}

std::optional<std::string> decode_byte_constant(std::span<const std::string> immediates)
{
    if (immediates.empty()) {
        return std::nullopt;
    }
    const std::string_view first = immediates.front();
    if (first.starts_with('"')) {
        return unquote(first);
    }
    if (first.starts_with("0x") || first.starts_with("0X")) {
        return decode_hex(first.substr(2));
    }
    return std::nullopt;
}

std::optional<std::uint64_t> decode_int_constant(std::string_view text)
{
    static const std::unordered_map<std::string_view, std::uint64_t> kNamed = {
        {"NoOp", 0},     {"OptIn", 1}, {"CloseOut", 2}, {"ClearState", 3}, {"UpdateApplication", 4},
        {"DeleteApplication", 5},      {"unknown", 0},  {"pay", 1},        {"keyreg", 2},
        {"acfg", 3},     {"axfer", 4}, {"afrz", 5},     {"appl", 6},
    };
    if (const auto it = kNamed.find(text); it != kNamed.end()) {
        return it->second;
    }
    int base = 10;
    if (text.starts_with("0x") || text.starts_with("0X")) {
        base = 16;
        text.remove_prefix(2);
    } else if (text.size() > 1 && text.starts_with('0')) {
        base = 8;
        text.remove_prefix(1);
    }
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

TealProgram parse_teal(std::string_view source, std::string path)
{
    TealProgram program;
    program.path = std::move(path);
    std::uint32_t line_no = 0;
    while (!source.empty() || line_no == 0) {
        ++line_no;
        const auto nl = source.find('\n');
        const std::string_view line = source.substr(0, nl);
        source.remove_prefix(nl == std::string_view::npos ? source.size() : nl + 1);

        auto words = split_line(line);
        if (words.empty()) {
            continue;
        }
        std::size_t first = 0;
        if (words[0].text.starts_with('#')) {
            if (words[0].text == "#pragma" && words.size() >= 3 && words[1].text == "version") {
                if (const auto v = decode_int_constant(words[2].text); v && *v < 1000) {
                    program.version = static_cast<int>(*v);
                } else {
                    program.diagnostics.push_back(
                        Diagnostic{"malformed #pragma version", {line_no, words[0].column}, DiagSeverity::Warning});
                }
            } else {
                program.diagnostics.push_back(
                    Diagnostic{"directive ignored: " + words[0].text, {line_no, words[0].column}, DiagSeverity::Note});
            }
            continue;
        }
        const std::string& head = words[0].text;
        if (head.size() > 1 && head.back() == ':' && !head.starts_with('"')) {
            const std::string label = head.substr(0, head.size() - 1);
            if (!program.labels.emplace(label, program.instructions.size()).second) {
                program.diagnostics.push_back(
                    Diagnostic{"duplicate label '" + label + "'; first definition kept", {line_no, words[0].column},
                               DiagSeverity::Warning});
            }
            first = 1;
            if (words.size() == 1) {
                continue;
            }
        }

        Instruction ins;
        ins.opcode = words[first].text;
        ins.line = line_no;
        ins.column = words[first].column;
        for (std::size_t i = first + 1; i < words.size(); ++i) {
            ins.immediates.push_back(std::move(words[i].text));
        }
        ins.stack_delta = stack_effect(ins.opcode, ins.immediates);
        if (!is_known_opcode(ins.opcode)) {
            program.diagnostics.push_back(
                Diagnostic{"unknown opcode '" + ins.opcode + "'; stack effect unknown", ins.loc(), DiagSeverity::Note});
        } else if (!ins.stack_delta) {
            program.diagnostics.push_back(Diagnostic{"cannot determine stack effect of '" + ins.opcode + "'",
                                                     ins.loc(), DiagSeverity::Note});
        }
        if (ins.opcode == "intcblock" && program.intc_block.empty()) {
            program.intc_block = ins.immediates;
        } else if (ins.opcode == "bytecblock" && program.bytec_block.empty()) {
            program.bytec_block = ins.immediates;
        }
        program.instructions.push_back(std::move(ins));
    }
    return program;
}

}  // namespace centriscan::teal

#include "centriscan/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace centriscan {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) {
        s.remove_suffix(1);
    }
    return s;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<std::string> parse_list(std::string_view value)
{
    std::vector<std::string> items;
    while (true) {
        const auto comma = value.find(',');
        const auto item = trim(value.substr(0, comma));
        if (!item.empty()) {
            items.emplace_back(item);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        value.remove_prefix(comma + 1);
    }
    return items;
}

bool parse_bool(std::string_view value, std::size_t line)
{
    const auto v = lower(value);
    if (v == "true" || v == "on" || v == "yes" || v == "1") {
        return true;
    }
    if (v == "false" || v == "off" || v == "no" || v == "0") {
        return false;
    }
    throw ConfigError(line, "expected a boolean, got '" + std::string(value) + "'");
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) {
            out += ',';
        }
        out += item;
    }
    return out;
}

}  // namespace

std::string_view to_string(FailThreshold t)
{
    switch (t) {
    case FailThreshold::Info:
        return "info";
    case FailThreshold::Warning:
        return "warning";
    case FailThreshold::Major:
        return "major";
    case FailThreshold::None:
        return "none";
    }
    return "none";
}

std::optional<FailThreshold> parse_fail_threshold(std::string_view text)
{
    const auto v = lower(trim(text));
    if (v == "info") {
        return FailThreshold::Info;
    }
    if (v == "warning") {
        return FailThreshold::Warning;
    }
    if (v == "major") {
        return FailThreshold::Major;
    }
    if (v == "none") {
        return FailThreshold::None;
    }
    return std::nullopt;
}

bool meets_threshold(Severity s, FailThreshold t)
{
    if (t == FailThreshold::None) {
        return false;
    }
    return static_cast<int>(s) >= static_cast<int>(t);
}

bool AnalyzerConfig::is_owner_key(std::string_view key) const
{
    return std::ranges::find(owner_keys, key) != owner_keys.end();
}

bool AnalyzerConfig::is_balance_key(std::string_view key) const
{
    if (std::ranges::find(balance_keys, key) != balance_keys.end()) {
        return true;
    }
    return balance_substring && lower(key).find("balance") != std::string::npos;
}

std::string AnalyzerConfig::canonical() const
{
    const auto flag = [](bool b) { return b ? "true" : "false"; };
    std::ostringstream out;
    out << "owner_keys = " << join(owner_keys) << '\n'
        << "balance_keys = " << join(balance_keys) << '\n'
        << "balance_substring = " << flag(balance_substring) << '\n'
        << "revert_guard = " << flag(revert_guard) << '\n'
        << "native_transfer = " << flag(native_transfer) << '\n'
        << "selfdestruct = " << flag(selfdestruct) << '\n'
        << "gtxn_sender = " << flag(gtxn_sender) << '\n'
        << "tx_origin = " << flag(tx_origin) << '\n'
        << "nested_mappings = " << flag(nested_mappings) << '\n'
        << "fail_threshold = " << to_string(fail_threshold) << '\n';
    return out.str();
}

std::string AnalyzerConfig::fingerprint() const
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : canonical()) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message)
    , line_(line)
{}

AnalyzerConfig parse_config(std::string_view text)
{
    AnalyzerConfig config;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(line_no, "expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(line_no, "missing key");
        }

        if (key == "owner_keys") {
            config.owner_keys = parse_list(value);
        } else if (key == "balance_keys") {
            config.balance_keys = parse_list(value);
        } else if (key == "balance_substring") {
            config.balance_substring = parse_bool(value, line_no);
        } else if (key == "revert_guard") {
            config.revert_guard = parse_bool(value, line_no);
        } else if (key == "native_transfer") {
            config.native_transfer = parse_bool(value, line_no);
        } else if (key == "selfdestruct") {
            config.selfdestruct = parse_bool(value, line_no);
        } else if (key == "gtxn_sender") {
            config.gtxn_sender = parse_bool(value, line_no);
        } else if (key == "tx_origin") {
            config.tx_origin = parse_bool(value, line_no);
        } else if (key == "nested_mappings") {
            config.nested_mappings = parse_bool(value, line_no);
        } else if (key == "fail_threshold" || key == "fail_on") {
            const auto t = parse_fail_threshold(value);
            if (!t) {
                throw ConfigError(line_no, "fail_threshold must be major, warning, info or none");
            }
            config.fail_threshold = *t;
        } else {
            throw ConfigError(line_no, "unknown config key '" + std::string(key) + "'");
        }
    }
    return config;
}

AnalyzerConfig load_config(const std::optional<std::string>& path)
{
    if (!path) {
        return AnalyzerConfig{};
    }
    std::ifstream in(*path, std::ios::binary);
    if (!in) {
        throw ConfigError(0, "cannot read config file '" + *path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace centriscan

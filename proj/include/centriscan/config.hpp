#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace centriscan {

enum class Severity { Info = 0, Warning = 1, Major = 2 };

/// Exit-code threshold. `None` never fails the run.
enum class FailThreshold { Info, Warning, Major, None };

[[nodiscard]] std::string_view to_string(FailThreshold t);
[[nodiscard]] std::optional<FailThreshold> parse_fail_threshold(std::string_view text);
[[nodiscard]] bool meets_threshold(Severity s, FailThreshold t);

struct AnalyzerConfig
{
    // TEAL global-state keys whose stored address denotes a privileged account.
    std::vector<std::string> owner_keys{"manager", "Creator", "creator", "owner", "admin"};
    // TEAL state keys treated as balances (exact match).
    std::vector<std::string> balance_keys{"MyBalance"};
    // Additionally match any key containing "balance", case-insensitively.
    bool balance_substring = true;

    bool revert_guard = true;
    bool native_transfer = true;
    bool selfdestruct = true;
    bool gtxn_sender = true;
    bool tx_origin = false;
    bool nested_mappings = false;

    FailThreshold fail_threshold = FailThreshold::Major;

    [[nodiscard]] bool is_owner_key(std::string_view key) const;
    [[nodiscard]] bool is_balance_key(std::string_view key) const;

    /// Canonical `key = value` rendering of every field, in a fixed order.
    [[nodiscard]] std::string canonical() const;
    /// 64-bit FNV-1a of canonical(), as 16 hex digits.
    [[nodiscard]] std::string fingerprint() const;
};

class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::size_t line, const std::string& message);

    /// 0 when the error is not tied to a line (e.g. unreadable file).
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Parses the line-oriented config format: `key = value`, comma-separated
/// lists, `#` comments. Throws ConfigError on malformed lines or unknown keys.
[[nodiscard]] AnalyzerConfig parse_config(std::string_view text);

/// Defaults when `path` is empty; otherwise reads and parses the file.
[[nodiscard]] AnalyzerConfig load_config(const std::optional<std::string>& path);

}  // namespace centriscan

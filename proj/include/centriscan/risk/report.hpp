#pragma once

#include "centriscan/risk/finding.hpp"

#include <optional>
#include <string>
#include <vector>

namespace centriscan::risk {

struct ReportDiagnostic
{
    std::string file;
    std::uint32_t line = 0;
    DiagSeverity severity = DiagSeverity::Note;
    std::string message;

    friend bool operator==(const ReportDiagnostic&, const ReportDiagnostic&) = default;
};

struct SeverityCounts
{
    std::size_t major = 0;
    std::size_t warning = 0;
    std::size_t info = 0;

    [[nodiscard]] std::size_t total() const { return major + warning + info; }
};

struct ScanReport
{
    std::string version{kToolVersion};
    std::string config_fingerprint;
    std::size_t files_scanned = 0;
    std::vector<Finding> findings;             // sorted
    std::vector<ReportDiagnostic> diagnostics;  // sorted by (file, line)

    [[nodiscard]] SeverityCounts counts() const;
    /// Highest severity among findings, if any.
    [[nodiscard]] std::optional<Severity> max_severity() const;
};

enum class ReportFormat { Text, Json };

[[nodiscard]] std::optional<ReportFormat> parse_format(std::string_view text);

/// Line-oriented report: `SEVERITY KIND file:line:col message` followed by
/// indented evidence lines.
[[nodiscard]] std::string render_text(const ScanReport& report);

/// Compact JSON with a fixed key order and no timestamps.
[[nodiscard]] std::string render_json(const ScanReport& report);

[[nodiscard]] std::string render_report(const ScanReport& report, ReportFormat format);

/// One-line summary for stderr.
[[nodiscard]] std::string summary_line(const ScanReport& report);

}  // namespace centriscan::risk

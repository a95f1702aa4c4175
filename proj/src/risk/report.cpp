#include "centriscan/risk/report.hpp"

#include <json.hpp>

#include <algorithm>

namespace centriscan::risk {

SeverityCounts ScanReport::counts() const
{
    SeverityCounts c;
    for (const auto& f : findings) {
        switch (f.severity) {
        case Severity::Major:
            ++c.major;
            break;
        case Severity::Warning:
            ++c.warning;
            break;
        case Severity::Info:
            ++c.info;
            break;
        }
    }
    return c;
}

std::optional<Severity> ScanReport::max_severity() const
{
    std::optional<Severity> out;
    for (const auto& f : findings) {
        if (!out || f.severity > *out) {
            out = f.severity;
        }
    }
    return out;
}

std::optional<ReportFormat> parse_format(std::string_view text)
{
    if (text == "text") {
        return ReportFormat::Text;
    }
    if (text == "json") {
        return ReportFormat::Json;
    }
    return std::nullopt;
}

namespace {

std::string where(const std::string& file, SourceLoc loc)
{
    return file + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

std::string diag_message(const ReportDiagnostic& d)
{
    return std::string(d.severity == DiagSeverity::Warning ? "warning: " : "note: ") + d.message;
}

}  // namespace

std::string render_text(const ScanReport& report)
{
    std::string out;
    for (const auto& f : report.findings) {
        out += std::string(to_string(f.severity)) + " " + std::string(to_string(f.kind)) + " " + where(f.file, f.loc) +
               " " + f.message + "\n";
        for (const auto& e : f.evidence) {
            out += "    " + std::string(to_string(e.role)) + " " + where(e.file, e.loc) + " " + e.text + "\n";
        }
    }
    return out;
}

std::string render_json(const ScanReport& report)
{
    using nlohmann::ordered_json;
    ordered_json root;
    root["version"] = report.version;
    root["files_scanned"] = report.files_scanned;
    auto findings = ordered_json::array();
    for (const auto& f : report.findings) {
        ordered_json j;
        j["kind"] = to_string(f.kind);
        j["severity"] = to_string(f.severity);
        j["language"] = to_string(f.language);
        j["file"] = f.file;
        j["line"] = f.loc.line;
        j["column"] = f.loc.column;
        j["message"] = f.message;
        auto evidence = ordered_json::array();
        for (const auto& e : f.evidence) {
            ordered_json ej;
            ej["role"] = to_string(e.role);
            ej["file"] = e.file;
            ej["line"] = e.loc.line;
            ej["column"] = e.loc.column;
            ej["text"] = e.text;
            evidence.push_back(std::move(ej));
        }
        j["evidence"] = std::move(evidence);
        findings.push_back(std::move(j));
    }
    root["findings"] = std::move(findings);
    const auto c = report.counts();
    root["counts"] = ordered_json{{"major", c.major}, {"warning", c.warning}, {"info", c.info}};
    auto diags = ordered_json::array();
    for (const auto& d : report.diagnostics) {
        diags.push_back(ordered_json{{"file", d.file}, {"line", d.line}, {"message", diag_message(d)}});
    }
    root["diagnostics"] = std::move(diags);
    root["config_fingerprint"] = report.config_fingerprint;
    // Invalid UTF-8 in file names is replaced rather than thrown on.
    return root.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

std::string render_report(const ScanReport& report, ReportFormat format)
{
    return format == ReportFormat::Json ? render_json(report) : render_text(report);
}

std::string summary_line(const ScanReport& report)
{
    const auto c = report.counts();
    return std::to_string(report.files_scanned) + " file(s) scanned, " + std::to_string(c.total()) + " finding(s): " +
           std::to_string(c.major) + " major, " + std::to_string(c.warning) + " warning, " + std::to_string(c.info) +
           " info";
}

}  // namespace centriscan::risk

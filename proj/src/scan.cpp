#include "centriscan/scan.hpp"

#include "centriscan/risk/finding.hpp"
#include "centriscan/sol/detectors.hpp"
#include "centriscan/sol/parser.hpp"
#include "centriscan/teal/detectors.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

namespace centriscan {

namespace fs = std::filesystem;

namespace {

std::string_view extension(std::string_view path)
{
    const auto dot = path.rfind('.');
    const auto slash = path.find_last_of("/\\");
    if (dot == std::string_view::npos || (slash != std::string_view::npos && dot < slash)) {
        return {};
    }
    return path.substr(dot);
}

void append(FileResult& out, const Diagnostics& diags)
{
    for (const auto& d : diags) {
        out.diagnostics.push_back(risk::ReportDiagnostic{out.path, d.loc.line, d.severity, d.message});
    }
}

}  // namespace

bool is_supported_path(std::string_view path)
{
    const auto ext = extension(path);
    return ext == ".sol" || ext == ".teal";
}

FileResult analyze_source(const std::string& path, std::string source, const AnalyzerConfig& config)
{
    FileResult out;
    out.path = path;
    if (sanitize_utf8(source)) {
        out.diagnostics.push_back(risk::ReportDiagnostic{path, 0, DiagSeverity::Warning,
                                                         "invalid UTF-8 replaced with U+FFFD"});
    }
    const auto ext = extension(path);
    if (ext == ".sol") {
        const auto unit = sol::parse_solidity(source, path);
        const auto analysis = sol::analyze_unit(unit, config);
        append(out, unit.diagnostics);
        append(out, analysis.diagnostics);
        out.findings = risk::classify(path, analysis.detections);
    } else if (ext == ".teal") {
        const auto analysis = teal::analyze_program(source, path, config);
        append(out, analysis.diagnostics);
        out.findings = risk::classify(path, analysis);
    } else {
        out.diagnostics.push_back(
            risk::ReportDiagnostic{path, 0, DiagSeverity::Warning, "unsupported file extension; skipped"});
    }
    return out;
}

FileResult analyze_file(const std::string& path, const AnalyzerConfig& config)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    if (in) {
        buf << in.rdbuf();
    }
    if (!in || in.bad()) {
        FileResult out;
        out.path = path;
        out.diagnostics.push_back(risk::ReportDiagnostic{path, 0, DiagSeverity::Warning, "cannot read file"});
        return out;
    }
    try {
        return analyze_source(path, std::move(buf).str(), config);
    } catch (const std::exception& e) {
        FileResult out;
        out.path = path;
        out.diagnostics.push_back(
            risk::ReportDiagnostic{path, 0, DiagSeverity::Warning, std::string("analysis aborted: ") + e.what()});
        return out;
    }
}

Discovery discover_files(std::span<const std::string> paths)
{
    Discovery out;
    for (const auto& p : paths) {
        std::error_code ec;
        const auto status = fs::status(p, ec);
        if (ec || !fs::exists(status)) {
            out.missing.push_back(p);
            continue;
        }
        if (fs::is_directory(status)) {
            auto it = fs::recursive_directory_iterator(p, fs::directory_options::skip_permission_denied, ec);
            for (; !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
                std::error_code fec;
                if (it->is_regular_file(fec) && is_supported_path(it->path().string())) {
                    out.files.push_back(it->path().generic_string());
                }
            }
            if (ec) {
                out.diagnostics.push_back(
                    risk::ReportDiagnostic{p, 0, DiagSeverity::Warning, "directory walk stopped: " + ec.message()});
            }
        } else if (is_supported_path(p)) {
            out.files.push_back(fs::path(p).generic_string());
        } else {
            out.diagnostics.push_back(
                risk::ReportDiagnostic{p, 0, DiagSeverity::Warning, "unsupported file extension; skipped"});
        }
    }
    std::ranges::sort(out.files);
    const auto dup = std::ranges::unique(out.files);
    out.files.erase(dup.begin(), dup.end());
    return out;
}

risk::ScanReport merge_results(std::vector<FileResult> results, const AnalyzerConfig& config)
{
    risk::ScanReport report;
    report.config_fingerprint = config.fingerprint();
    report.files_scanned = results.size();
    for (auto& r : results) {
        std::ranges::move(r.findings, std::back_inserter(report.findings));
        std::ranges::move(r.diagnostics, std::back_inserter(report.diagnostics));
    }
    risk::sort_findings(report.findings);
    std::ranges::stable_sort(report.diagnostics, [](const auto& a, const auto& b) {
        return std::tie(a.file, a.line, a.message) < std::tie(b.file, b.line, b.message);
    });
    return report;
}

risk::ScanReport scan_serial(std::span<const std::string> files, const AnalyzerConfig& config)
{
    std::vector<FileResult> results;
    results.reserve(files.size());
    for (const auto& f : files) {
        results.push_back(analyze_file(f, config));
    }
    return merge_results(std::move(results), config);
}

risk::ScanReport scan_parallel(std::span<const std::string> files, const AnalyzerConfig& config)
{
    std::vector<FileResult> results(files.size());
    const auto n = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        results[static_cast<std::size_t>(i)] = analyze_file(files[static_cast<std::size_t>(i)], config);
    }
    return merge_results(std::move(results), config);
}

}  // namespace centriscan

#pragma once

#include "centriscan/config.hpp"
#include "centriscan/risk/report.hpp"

#include <span>
#include <string>
#include <vector>

namespace centriscan {

struct FileResult
{
    std::string path;
    std::vector<risk::Finding> findings;
    std::vector<risk::ReportDiagnostic> diagnostics;
};

/// Routes by extension (`.sol`, `.teal`). Invalid UTF-8 is replaced first.
[[nodiscard]] FileResult analyze_source(const std::string& path, std::string source, const AnalyzerConfig& config);

/// Reads and analyzes one file. Read failures become diagnostics.
[[nodiscard]] FileResult analyze_file(const std::string& path, const AnalyzerConfig& config);

[[nodiscard]] bool is_supported_path(std::string_view path);

struct Discovery
{
    std::vector<std::string> files;    // sorted, deduplicated
    std::vector<std::string> missing;  // input paths that do not exist
    std::vector<risk::ReportDiagnostic> diagnostics;
};

/// Expands directories recursively, keeping `.sol` and `.teal` files.
[[nodiscard]] Discovery discover_files(std::span<const std::string> paths);

/// Merges per-file results into a report; the result does not depend on input order.
[[nodiscard]] risk::ScanReport merge_results(std::vector<FileResult> results, const AnalyzerConfig& config);

/// Reference implementation: one file after another.
[[nodiscard]] risk::ScanReport scan_serial(std::span<const std::string> files, const AnalyzerConfig& config);

/// Files analyzed concurrently with OpenMP, then merged like scan_serial.
[[nodiscard]] risk::ScanReport scan_parallel(std::span<const std::string> files, const AnalyzerConfig& config);

}  // namespace centriscan

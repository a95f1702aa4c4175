#include "centriscan/cli.hpp"

#include "centriscan/config.hpp"
#include "centriscan/scan.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

namespace centriscan {

namespace {

void print_diagnostics(const risk::ScanReport& report, std::ostream& err)
{
    for (const auto& d : report.diagnostics) {
        err << d.file;
        if (d.line > 0) {
            err << ":" << d.line;
        }
        err << ": " << (d.severity == DiagSeverity::Warning ? "warning: " : "note: ") << d.message << "\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Detects centralization-risk patterns in Solidity and TEAL sources", "centriscan"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    auto* scan = app.add_subcommand("scan", "Scan files or directories");
    std::vector<std::string> paths;
    std::string format = "text";
    std::optional<std::string> config_path;
    std::optional<std::string> fail_on;
    scan->add_option("paths", paths, "Files or directories (.sol, .teal)")->required();
    scan->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    scan->add_option("--config", config_path, "Config file");
    scan->add_option("--fail-on", fail_on, "Lowest severity that fails the run")
        ->check(CLI::IsMember({"major", "warning", "info", "none"}));

    // CLI11 parses a reversed argument vector.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        // --help and --version
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        static_cast<void>(app.exit(e, out, err));
        err << "\n" << app.help();
        return kExitUsage;
    }

    AnalyzerConfig config;
    try {
        config = load_config(config_path);
    } catch (const ConfigError& e) {
        err << "error: config: " << e.what() << "\n";
        return kExitUsage;
    }
    if (fail_on) {
        config.fail_threshold = *parse_fail_threshold(*fail_on);
    }

    const auto found = discover_files(paths);
    if (!found.missing.empty()) {
        for (const auto& m : found.missing) {
            err << "error: no such file or directory: " << m << "\n";
        }
        return kExitUsage;
    }

    auto report = scan_parallel(found.files, config);
    report.diagnostics.insert(report.diagnostics.begin(), found.diagnostics.begin(), found.diagnostics.end());

    const auto fmt = *risk::parse_format(format);
    out << risk::render_report(report, fmt);
    out.flush();
    if (fmt == risk::ReportFormat::Text) {
        print_diagnostics(report, err);
        err << risk::summary_line(report) << "\n";
    }

    const auto worst = report.max_severity();
    return worst && meets_threshold(*worst, config.fail_threshold) ? kExitFindings : kExitClean;
}

}  // namespace centriscan

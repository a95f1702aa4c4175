#pragma once

#include "centriscan/common.hpp"
#include "centriscan/config.hpp"
#include "centriscan/sol/detectors.hpp"
#include "centriscan/teal/detectors.hpp"

#include <span>
#include <string>
#include <vector>

namespace centriscan::risk {

// Declaration order is the tie-break order when sorting findings.
enum class FindingKind { CentralizationRisk, PrivilegedFunction, UnprotectedFundModification };

[[nodiscard]] std::string_view to_string(FindingKind kind);
[[nodiscard]] std::string_view to_string(Severity severity);  // MAJOR, WARNING, INFO

[[nodiscard]] constexpr Severity severity_of(FindingKind kind)
{
    switch (kind) {
    case FindingKind::CentralizationRisk:
        return Severity::Major;
    case FindingKind::UnprotectedFundModification:
        return Severity::Warning;
    case FindingKind::PrivilegedFunction:
        return Severity::Info;
    }
    return Severity::Info;
}

enum class EvidenceRole { Guard, FundModification };

[[nodiscard]] std::string_view to_string(EvidenceRole role);

struct Evidence
{
    EvidenceRole role = EvidenceRole::Guard;
    std::string file;
    SourceLoc loc;
    std::string text;

    friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct Finding
{
    FindingKind kind = FindingKind::CentralizationRisk;
    Severity severity = Severity::Major;
    Language language = Language::Solidity;
    std::string file;
    SourceLoc loc;
    std::string message;
    std::vector<Evidence> evidence;

    friend bool operator==(const Finding&, const Finding&) = default;
};

/// Per function: guarded fund sites give a centralization risk, unguarded ones
/// an unprotected modification, and a guard without guarded sites a privileged function.
[[nodiscard]] std::vector<Finding> classify(const std::string& file, std::span<const sol::RawDetection> detections);

/// Per fund point: guarded or unguarded. Guards in a program without fund
/// points each give a privileged-function finding.
[[nodiscard]] std::vector<Finding> classify(const std::string& file, const teal::TealAnalysis& analysis);

/// Orders by (file, line, column, kind, message).
void sort_findings(std::vector<Finding>& findings);

}  // namespace centriscan::risk

#include "centriscan/risk/finding.hpp"

#include <algorithm>
#include <tuple>

namespace centriscan::risk {

std::string_view to_string(FindingKind kind)
{
    switch (kind) {
    case FindingKind::CentralizationRisk:
        return "CENTRALIZATION_RISK";
    case FindingKind::PrivilegedFunction:
        return "PRIVILEGED_FUNCTION";
    case FindingKind::UnprotectedFundModification:
        return "UNPROTECTED_FUND_MODIFICATION";
    }
    return "?";
}

std::string_view to_string(Severity severity)
{
    switch (severity) {
    case Severity::Major:
        return "MAJOR";
    case Severity::Warning:
        return "WARNING";
    case Severity::Info:
        return "INFO";
    }
    return "?";
}

std::string_view to_string(EvidenceRole role)
{
    return role == EvidenceRole::Guard ? "guard" : "fund_modification";
}

namespace {

Finding make(FindingKind kind, Language lang, const std::string& file, SourceLoc loc, std::string message)
{
    return Finding{kind, severity_of(kind), lang, file, loc, std::move(message), {}};
}

std::string plural(std::size_t n, std::string_view word)
{
    return std::to_string(n) + " " + std::string(word) + (n == 1 ? "" : "s");
}

Evidence fund_evidence(const std::string& file, const sol::FundModSite& site)
{
    return Evidence{EvidenceRole::FundModification, file, site.loc,
                    std::string(sol::to_string(site.kind)) + " " + site.target};
}

bool guards_site(const sol::GuardSite& guard, const sol::FundModSite& site)
{
    return std::ranges::any_of(site.guarding_if_chain, [&](const sol::IfContext& ctx) {
        return ctx.then_branch && ctx.condition == guard.condition;
    });
}

}  // namespace

std::vector<Finding> classify(const std::string& file, std::span<const sol::RawDetection> detections)
{
    std::vector<Finding> out;
    for (const auto& d : detections) {
        const std::string who = d.contract + "." + d.function;
        std::vector<const sol::FundModSite*> guarded;
        std::vector<const sol::FundModSite*> unguarded;
        for (const auto& site : d.fund_sites) {
            (d.is_guarded(site) ? guarded : unguarded).push_back(&site);
        }

        if (!guarded.empty()) {
            Finding f = make(FindingKind::CentralizationRisk, Language::Solidity, file, d.function_loc,
                             who + ": sender-restricted function modifies funds (" +
                                 plural(guarded.size(), "guarded site") + ")");
            for (const auto& g : d.guard_sites) {
                const bool applies = g.form == sol::GuardForm::IfGuard
                                         ? std::ranges::any_of(guarded, [&](const auto* s) { return guards_site(g, *s); })
                                         : d.whole_body_guarded;
                if (applies) {
                    f.evidence.push_back(Evidence{EvidenceRole::Guard, file, g.loc, g.rendered});
                }
            }
            for (const auto* s : guarded) {
                f.evidence.push_back(fund_evidence(file, *s));
            }
            out.push_back(std::move(f));
        } else if (d.privileged) {
            Finding f = make(FindingKind::PrivilegedFunction, Language::Solidity, file, d.function_loc,
                             who + ": access restricted to a privileged sender");
            for (const auto& g : d.guard_sites) {
                f.evidence.push_back(Evidence{EvidenceRole::Guard, file, g.loc, g.rendered});
            }
            out.push_back(std::move(f));
        }

        if (!unguarded.empty()) {
            Finding f = make(FindingKind::UnprotectedFundModification, Language::Solidity, file, d.function_loc,
                             who + ": funds modified without a sender guard (" +
                                 plural(unguarded.size(), "site") + ")");
            for (const auto* s : unguarded) {
                f.evidence.push_back(fund_evidence(file, *s));
            }
            out.push_back(std::move(f));
        }
    }
    sort_findings(out);
    return out;
}

namespace {

std::string guard_text(const teal::GuardPoint& g, const teal::TealProgram& program)
{
    return program.instructions[g.instruction].opcode + " on txn Sender == " + g.privileged_source;
}

std::string block_name(const teal::Cfg& cfg, std::size_t b)
{
    return cfg.blocks[b].label.empty() ? "#" + std::to_string(b) : cfg.blocks[b].label;
}

}  // namespace

std::vector<Finding> classify(const std::string& file, const teal::TealAnalysis& a)
{
    std::vector<Finding> out;
    for (std::size_t k = 0; k < a.fund_points.size(); ++k) {
        const auto& p = a.fund_points[k];
        const auto& g = a.guardedness.points[k];
        const Evidence put{EvidenceRole::FundModification, file, p.loc, p.opcode + " \"" + p.key + "\""};
        const std::string what = p.opcode + " on \"" + p.key + "\"";
        if (g.status == teal::Guardedness::Guarded) {
            Finding f = make(FindingKind::CentralizationRisk, Language::Teal, file, p.loc,
                             what + " is only reachable past a sender guard");
            for (const std::size_t gi : g.cutting_guards) {
                const auto& guard = a.guards[gi];
                f.evidence.push_back(Evidence{EvidenceRole::Guard, file, guard.loc, guard_text(guard, a.program)});
            }
            f.evidence.push_back(put);
            out.push_back(std::move(f));
        } else if (g.status == teal::Guardedness::Unguarded) {
            std::string path;
            for (const std::size_t b : g.witness) {
                path += (path.empty() ? "" : " -> ") + block_name(a.cfg, b);
            }
            Finding f = make(FindingKind::UnprotectedFundModification, Language::Teal, file, p.loc,
                             what + " is reachable without a sender guard (path " + path + ")");
            f.evidence.push_back(put);
            out.push_back(std::move(f));
        }
    }
    if (a.fund_points.empty()) {
        for (const auto& guard : a.guards) {
            Finding f = make(FindingKind::PrivilegedFunction, Language::Teal, file, guard.loc,
                             "program restricted to " + guard.privileged_source + "; no balance modification");
            f.evidence.push_back(Evidence{EvidenceRole::Guard, file, guard.loc, guard_text(guard, a.program)});
            out.push_back(std::move(f));
        }
    }
    sort_findings(out);
    return out;
}

void sort_findings(std::vector<Finding>& findings)
{
    std::ranges::sort(findings, [](const Finding& a, const Finding& b) {
        return std::tie(a.file, a.loc, a.kind, a.message) < std::tie(b.file, b.loc, b.kind, b.message);
    });
}

}  // namespace centriscan::risk

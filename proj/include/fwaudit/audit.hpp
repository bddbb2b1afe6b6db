#pragma once

// Shadowing / redundancy audit of ordered rulesets.
//
// Both audits rewrite the ruleset into an equivalent one whose rules are
// pairwise disjoint, so rule order no longer matters. Rules that end up with
// an empty condition are reported as warnings and dropped from the output.
//
//   detection()          every later rule loses the packets of every earlier
//                        rule; emptied rules are reported as shadowing.
//   complete_detection() first removes packets of earlier rules with the
//                        opposite decision, then walks the rules top-down,
//                        dropping rules fully covered by later rules with the
//                        same decision (redundancy) before excluding the rest.

#include "fwaudit/rule.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace fwaudit {

enum class Algorithm { detection, complete };
enum class WarningKind { shadowing, redundancy };
enum class RewriteMode { positive, negative };

std::string_view to_string(Algorithm a) noexcept;
std::string_view to_string(WarningKind k) noexcept;
std::string_view to_string(RewriteMode m) noexcept;

struct Warning {
    Position rule = 0;
    WarningKind kind = WarningKind::shadowing;

    friend bool operator==(const Warning&, const Warning&) = default;
};

struct AuditStats {
    std::size_t input_rules = 0;
    std::size_t output_rules = 0;
    std::size_t output_boxes = 0;
    // Largest total box count held by the working ruleset during the run.
    std::size_t peak_boxes = 0;
    double elapsed_ms = 0.0;

    friend bool operator==(const AuditStats&, const AuditStats&) = default;
};

struct AuditReport {
    Algorithm algorithm = Algorithm::detection;
    Ruleset transformed;
    // Sorted by rule position.
    std::vector<Warning> warnings;
    AuditStats stats;

    explicit AuditReport(DomainSpec domain) : transformed(std::move(domain)) {}

    std::size_t count(WarningKind kind) const noexcept;

    friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

// Flag-carrying working state of an audit, before empty rules are stripped.
// Exposed so the per-step state can be inspected.
Ruleset run_detection(const Ruleset& r);
Ruleset run_complete_detection(const Ruleset& r);

AuditReport detection(const Ruleset& r);
AuditReport complete_detection(const Ruleset& r);
AuditReport audit(const Ruleset& r, Algorithm algorithm);

// Whether rules[index] is absorbed by later rules with the same decision.
// `index` is zero-based; throws std::out_of_range.
bool test_redundancy(const Ruleset& r, std::size_t index);

// Keep only accept rules (positive, valid under default deny) or only deny
// rules (negative, valid under default accept). Throws PreconditionError
// when r is not pairwise disjoint.
Ruleset rewrite(const Ruleset& r, RewriteMode mode);

} // namespace fwaudit

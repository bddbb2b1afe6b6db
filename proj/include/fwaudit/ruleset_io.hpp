#pragma once

// Rule files, serialized rulesets and audit reports.
//
// Rule file grammar (UTF-8, one record per line, '#' starts a comment):
//
//   @domain source=[1,100] destination=[1,100]      optional, before records
//   <order>, <attr_1>, ..., <attr_p>, accept|deny
//
// <order> is a positive integer, or "N.k" for the k-th box of a transformed
// multi-box rule N. Attribute values are `any`, a single value `v`, or a
// range `[a,b]`; values are integers, dotted-quad IPv4 addresses (including
// the `a.b.c.[x,y]` last-octet form) or, on the protocol attribute, one of
// tcp/udp/icmp. Without a header the five-tuple domain is assumed.

#include "fwaudit/audit.hpp"
#include "fwaudit/error.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace fwaudit {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

class ValidationError : public ParseError {
public:
    using ParseError::ParseError;
};

// "source=[0,63] destination=[0,63]", or "5tuple" for DomainSpec::five_tuple().
DomainSpec parse_domain(std::string_view text);
std::string format_domain(const DomainSpec& domain);

// `fallback` is used when the text has no @domain header. Throws ParseError
// (and ValidationError for inverted ranges) with the offending line number,
// and DomainError for values outside the domain.
Ruleset parse_ruleset(std::string_view text, const std::optional<DomainSpec>& fallback = std::nullopt);

// Deterministic text form: @domain header, then one record per box. Rules
// without boxes produce no record.
std::string serialize_ruleset(const Ruleset& r);

// "(source in [1,30] and destination in [20,45])"; full-domain attributes
// are omitted.
std::string describe_box(const Box& box, const DomainSpec& domain);
std::string describe_rule(const Rule& rule, const DomainSpec& domain);

enum class ReportFormat { json, text };

struct ReportDocument {
    std::string tool_version{kToolVersion};
    std::string input_digest;
    AuditReport report;

    explicit ReportDocument(AuditReport r, std::string digest = {})
        : input_digest(std::move(digest)), report(std::move(r)) {}

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

// 0 when the audit produced no warnings, 1 otherwise.
int exit_status_hint(const AuditReport& report) noexcept;

std::string emit_report(const ReportDocument& doc, ReportFormat format);
// Inverse of emit_report(doc, ReportFormat::json).
ReportDocument parse_report(std::string_view json);

// "fnv1a64:<16 hex digits>" of the raw input bytes.
std::string input_digest(std::string_view bytes);

} // namespace fwaudit

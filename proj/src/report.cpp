#include "fwaudit/ruleset_io.hpp"

#include "json.hpp"

#include <cstdio>

namespace fwaudit {

using ordered_json = nlohmann::ordered_json;

int exit_status_hint(const AuditReport& report) noexcept
{
    return report.warnings.empty() ? 0 : 1;
}

std::string input_digest(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

namespace {

ordered_json box_json(const Box& box)
{
    ordered_json out = ordered_json::array();
    for (const auto& iv : box.intervals())
        out.push_back({iv.lo(), iv.hi()});
    return out;
}

std::string to_json(const ReportDocument& doc)
{
    const auto& rep = doc.report;
    ordered_json j;
    j["schema"] = "fwaudit-report";
    j["version"] = kReportSchemaVersion;
    j["tool_version"] = doc.tool_version;
    j["input_digest"] = doc.input_digest;
    j["algorithm"] = to_string(rep.algorithm);

    auto& domain = j["domain"] = ordered_json::array();
    for (const auto& attr : rep.transformed.domain.attributes())
        domain.push_back({{"name", attr.name}, {"lo", attr.range.lo()}, {"hi", attr.range.hi()}});

    auto& warnings = j["warnings"] = ordered_json::array();
    for (const auto& w : rep.warnings)
        warnings.push_back({{"rule", w.rule}, {"kind", to_string(w.kind)}});

    auto& rules = j["rules"] = ordered_json::array();
    for (const auto& rule : rep.transformed.rules) {
        ordered_json cond = ordered_json::array();
        for (const auto& box : rule.condition)
            cond.push_back(box_json(box));
        rules.push_back({{"order", rule.position}, {"condition", std::move(cond)}, {"decision", to_string(rule.decision)}});
    }

    j["stats"] = {
        {"input_rules", rep.stats.input_rules},
        {"output_rules", rep.stats.output_rules},
        {"output_boxes", rep.stats.output_boxes},
        {"peak_boxes", rep.stats.peak_boxes},
        {"elapsed_ms", rep.stats.elapsed_ms},
    };
    j["exit_status"] = exit_status_hint(rep);
    return j.dump(2) + "\n";
}

std::string to_text(const ReportDocument& doc)
{
    const auto& rep = doc.report;
    const auto& domain = rep.transformed.domain;
    std::string out = "fwaudit " + doc.tool_version + " audit report\n";
    out += "algorithm: ";
    out += to_string(rep.algorithm);
    out += "\n";
    if (!doc.input_digest.empty())
        out += "input: " + doc.input_digest + "\n";

    char stats[160];
    std::snprintf(stats, sizeof stats, "rules: %zu in, %zu out, %zu boxes (peak %zu), %.3f ms\n",
                  rep.stats.input_rules, rep.stats.output_rules, rep.stats.output_boxes, rep.stats.peak_boxes,
                  rep.stats.elapsed_ms);
    out += stats;

    out += "\n/* warnings */\n";
    if (rep.warnings.empty())
        out += "none\n";
    for (const auto& w : rep.warnings) {
        out += "R" + std::to_string(w.rule) + ": ";
        out += to_string(w.kind);
        out += "\n";
    }

    out += "\n/* resulting rules */\n";
    for (const auto& rule : rep.transformed.rules)
        out += describe_rule(rule, domain) + "\n";
    return out;
}

template <typename E>
E enum_from(const std::string& s, std::initializer_list<E> values)
{
    for (auto v : values)
        if (to_string(v) == s)
            return v;
    throw std::invalid_argument("unknown value '" + s + "' in report");
}

} // namespace

std::string emit_report(const ReportDocument& doc, ReportFormat format)
{
    return format == ReportFormat::json ? to_json(doc) : to_text(doc);
}

ReportDocument parse_report(std::string_view json)
{
    const auto j = nlohmann::json::parse(json);
    if (j.at("schema").get<std::string>() != "fwaudit-report")
        throw std::invalid_argument("not an fwaudit report");
    if (j.at("version").get<int>() != kReportSchemaVersion)
        throw std::invalid_argument("unsupported report version");

    std::vector<Attribute> attrs;
    for (const auto& a : j.at("domain"))
        attrs.push_back({a.at("name").get<std::string>(), {a.at("lo").get<Value>(), a.at("hi").get<Value>()}});

    AuditReport rep{DomainSpec(std::move(attrs))};
    rep.algorithm = enum_from(j.at("algorithm").get<std::string>(), {Algorithm::detection, Algorithm::complete});

    for (const auto& w : j.at("warnings"))
        rep.warnings.push_back({w.at("rule").get<Position>(),
                                enum_from(w.at("kind").get<std::string>(),
                                          {WarningKind::shadowing, WarningKind::redundancy})});

    for (const auto& r : j.at("rules")) {
        BoxSet cond;
        for (const auto& b : r.at("condition")) {
            std::vector<Interval> ivs;
            for (const auto& iv : b)
                ivs.emplace_back(iv.at(0).get<Value>(), iv.at(1).get<Value>());
            cond.emplace_back(std::move(ivs));
        }
        const auto decision = parse_decision(r.at("decision").get<std::string>());
        if (!decision)
            throw std::invalid_argument("bad decision in report");
        rep.transformed.rules.emplace_back(r.at("order").get<Position>(), std::move(cond), *decision);
    }

    const auto& s = j.at("stats");
    rep.stats.input_rules = s.at("input_rules").get<std::size_t>();
    rep.stats.output_rules = s.at("output_rules").get<std::size_t>();
    rep.stats.output_boxes = s.at("output_boxes").get<std::size_t>();
    rep.stats.peak_boxes = s.at("peak_boxes").get<std::size_t>();
    rep.stats.elapsed_ms = s.at("elapsed_ms").get<double>();

    ReportDocument doc(std::move(rep), j.at("input_digest").get<std::string>());
    doc.tool_version = j.at("tool_version").get<std::string>();
    return doc;
}

} // namespace fwaudit

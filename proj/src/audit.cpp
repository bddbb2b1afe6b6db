#include "fwaudit/audit.hpp"

#include "fwaudit/error.hpp"
#include "fwaudit/exclusion.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace fwaudit {

std::string_view to_string(Algorithm a) noexcept
{
    return a == Algorithm::detection ? "detection" : "complete";
}

std::string_view to_string(WarningKind k) noexcept
{
    return k == WarningKind::shadowing ? "shadowing" : "redundancy";
}

std::string_view to_string(RewriteMode m) noexcept
{
    return m == RewriteMode::positive ? "positive" : "negative";
}

std::size_t AuditReport::count(WarningKind kind) const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(warnings.begin(), warnings.end(), [&](const Warning& w) { return w.kind == kind; }));
}

namespace {

bool any_overlap(const BoxSet& a, const BoxSet& b)
{
    for (const auto& x : a)
        for (const auto& y : b)
            if (intersects(x, y))
                return true;
    return false;
}

// Keeps the running box total so the peak working-set size can be reported.
class Workspace {
public:
    explicit Workspace(const Ruleset& r) : rules_(r.rules)
    {
        for (auto& rule : rules_) {
            rule.shadowing = false;
            rule.redundancy = false;
            total_ += rule.condition.size();
        }
        peak_ = total_;
    }

    std::vector<Rule>& rules() noexcept { return rules_; }
    std::size_t peak() const noexcept { return peak_; }

    // rules[j] <- exclusion(rules[j], rules[i]), without copying when the
    // two conditions do not meet.
    void exclude(std::size_t j, std::size_t i)
    {
        Rule& target = rules_[j];
        const Rule& cut = rules_[i];
        target.shadowing = false;
        target.redundancy = false;
        if (target.empty() || cut.empty() || !any_overlap(target.condition, cut.condition))
            return;
        total_ -= target.condition.size();
        target.condition = fwaudit::exclude(target.condition, cut.condition);
        total_ += target.condition.size();
        peak_ = std::max(peak_, total_);
    }

    void clear(std::size_t i)
    {
        total_ -= rules_[i].condition.size();
        rules_[i].condition.clear();
    }

private:
    std::vector<Rule> rules_;
    std::size_t total_ = 0;
    std::size_t peak_ = 0;
};

bool absorbed_by_later(const std::vector<Rule>& rules, std::size_t i)
{
    bool test = false;
    BoxSet temp = rules[i].condition;
    const Decision decision = rules[i].decision;
    for (std::size_t j = i + 1; !test && j < rules.size(); ++j) {
        if (rules[j].decision != decision)
            continue;
        temp = exclude(temp, rules[j].condition);
        test = temp.empty();
    }
    return test;
}

void detection_pass(Workspace& ws)
{
    auto& rules = ws.rules();
    const std::size_t n = rules.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            ws.exclude(j, i);
            if (rules[j].empty())
                rules[j].shadowing = true;
        }
    }
}

void complete_pass(Workspace& ws)
{
    auto& rules = ws.rules();
    const std::size_t n = rules.size();

    // Phase 1: earlier rules with the opposite decision.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rules[i].decision != rules[j].decision)
                ws.exclude(j, i);
            if (rules[j].empty())
                rules[j].shadowing = true;
        }
    }

    // Phase 2: redundancy probe, then earlier rules with the same decision.
    // A rule already emptied in phase 1 is shadowed; probing it would
    // report it as redundant as well.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!rules[i].empty() && absorbed_by_later(rules, i)) {
            ws.clear(i);
            rules[i].redundancy = true;
            continue;
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rules[i].decision == rules[j].decision)
                ws.exclude(j, i);
            if (!rules[j].redundancy && rules[j].empty())
                rules[j].shadowing = true;
        }
    }
}

AuditReport assemble(const Ruleset& input, Ruleset&& work, Algorithm algorithm, std::size_t peak,
                     std::chrono::steady_clock::time_point start)
{
    AuditReport report(input.domain);
    report.algorithm = algorithm;
    for (auto& rule : work.rules) {
        if (rule.redundancy)
            report.warnings.push_back({rule.position, WarningKind::redundancy});
        else if (rule.shadowing)
            report.warnings.push_back({rule.position, WarningKind::shadowing});
        if (!rule.empty())
            report.transformed.rules.push_back(std::move(rule));
    }
    std::stable_sort(report.warnings.begin(), report.warnings.end(),
                     [](const Warning& a, const Warning& b) { return a.rule < b.rule; });

    report.stats.input_rules = input.size();
    report.stats.output_rules = report.transformed.size();
    report.stats.output_boxes = report.transformed.box_count();
    report.stats.peak_boxes = peak;
    report.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace

Ruleset run_detection(const Ruleset& r)
{
    r.validate();
    Workspace ws(r);
    detection_pass(ws);
    return Ruleset(r.domain, std::move(ws.rules()));
}

Ruleset run_complete_detection(const Ruleset& r)
{
    r.validate();
    Workspace ws(r);
    complete_pass(ws);
    return Ruleset(r.domain, std::move(ws.rules()));
}

AuditReport detection(const Ruleset& r)
{
    const auto start = std::chrono::steady_clock::now();
    r.validate();
    Workspace ws(r);
    detection_pass(ws);
    const auto peak = ws.peak();
    return assemble(r, Ruleset(r.domain, std::move(ws.rules())), Algorithm::detection, peak, start);
}

AuditReport complete_detection(const Ruleset& r)
{
    const auto start = std::chrono::steady_clock::now();
    r.validate();
    Workspace ws(r);
    complete_pass(ws);
    const auto peak = ws.peak();
    return assemble(r, Ruleset(r.domain, std::move(ws.rules())), Algorithm::complete, peak, start);
}

AuditReport audit(const Ruleset& r, Algorithm algorithm)
{
    return algorithm == Algorithm::detection ? detection(r) : complete_detection(r);
}

bool test_redundancy(const Ruleset& r, std::size_t index)
{
    if (index >= r.size())
        throw std::out_of_range("rule index " + std::to_string(index) + " out of range (" +
                                std::to_string(r.size()) + " rules)");
    return absorbed_by_later(r.rules, index);
}

Ruleset rewrite(const Ruleset& r, RewriteMode mode)
{
    if (!r.disjoint())
        throw PreconditionError("rewrite needs a pairwise-disjoint ruleset; run an audit first");
    const Decision keep = mode == RewriteMode::positive ? Decision::accept : Decision::deny;
    Ruleset out(r.domain);
    for (const auto& rule : r.rules)
        if (rule.decision == keep && !rule.empty())
            out.rules.push_back(rule);
    return out;
}

} // namespace fwaudit

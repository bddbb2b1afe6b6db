#include "doctest.h"

#include "fwaudit/audit.hpp"
#include "fwaudit/error.hpp"
#include "fwaudit/exclusion.hpp"
#include "fwaudit/oracle.hpp"

#include "support/support.hpp"

using namespace fwaudit;
using fwtest::five_rules;

namespace {

const Rule& rule_at(const Ruleset& r, Position pos)
{
    const Rule* found = r.find(pos);
    REQUIRE(found != nullptr);
    return *found;
}

Ruleset phase_one(Ruleset r)
{
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j)
            if (r.rules[i].decision != r.rules[j].decision)
                r.rules[j] = exclusion(r.rules[j], r.rules[i]);
    return r;
}

} // namespace

TEST_CASE("detection on the five-rule set")
{
    const auto report = detection(five_rules());
    const auto& out = report.transformed;
    CHECK(fwtest::positions(out) == std::vector<Position>{1, 2, 3, 5});
    CHECK(rule_at(out, 1).condition == BoxSet{Box{{1, 30}, {20, 45}}});
    CHECK(rule_at(out, 2).condition == BoxSet{Box{{31, 60}, {25, 35}}});
    CHECK(rule_at(out, 3).condition ==
          BoxSet{Box{{61, 70}, {20, 45}}, Box{{40, 60}, {20, 24}}, Box{{40, 60}, {36, 45}}});
    CHECK(rule_at(out, 5).condition == BoxSet{Box{{31, 39}, {20, 24}}, Box{{31, 39}, {36, 40}}});
    CHECK(report.warnings == std::vector<Warning>{{4, WarningKind::shadowing}});
    CHECK(report.stats.input_rules == 5);
    CHECK(report.stats.output_rules == 4);
    CHECK(report.stats.output_boxes == 7);

    const auto working = run_detection(five_rules());
    CHECK(working.rules[3].empty());
    CHECK(working.rules[3].shadowing);
    CHECK(working.rules[3].decision == Decision::deny);
}

TEST_CASE("detection trivia")
{
    Ruleset one(fwtest::sd100());
    one.rules = {fwtest::rule2(1, 1, 10, 1, 10, Decision::accept)};
    const auto single = detection(one);
    CHECK(single.transformed == one);
    CHECK(single.warnings.empty());

    Ruleset twin = one;
    twin.rules.push_back(fwtest::rule2(2, 1, 10, 1, 10, Decision::deny));
    CHECK(detection(twin).warnings == std::vector<Warning>{{2, WarningKind::shadowing}});
}

TEST_CASE("redundancy probe on the phase-one five-rule set")
{
    const auto r = phase_one(five_rules());
    CHECK_FALSE(test_redundancy(r, 0));
    CHECK(test_redundancy(r, 1));
    CHECK_FALSE(test_redundancy(r, 4));
    CHECK_THROWS_AS(test_redundancy(r, 5), std::out_of_range);
    CHECK(r == phase_one(five_rules()));
}

TEST_CASE("complete detection on the five-rule set")
{
    const auto report = complete_detection(five_rules());
    Ruleset expected(fwtest::sd100());
    expected.rules = {fwtest::rule2(1, 1, 30, 20, 45, Decision::deny),
                      fwtest::rule2(3, 40, 70, 20, 45, Decision::accept),
                      fwtest::rule2(5, 31, 39, 20, 40, Decision::accept)};
    CHECK(report.transformed == expected);
    CHECK(report.warnings ==
          std::vector<Warning>{{2, WarningKind::redundancy}, {4, WarningKind::shadowing}});
    CHECK(report.count(WarningKind::redundancy) == 1);
    CHECK(report.count(WarningKind::shadowing) == 1);
}

TEST_CASE("related-work examples")
{
    using fwtest::line;
    constexpr auto A = Decision::accept;
    constexpr auto D = Decision::deny;

    const auto redundant = complete_detection(line({{10, 50, D}, {40, 70, A}, {50, 80, A}}));
    CHECK(redundant.warnings == std::vector<Warning>{{2, WarningKind::redundancy}});

    const auto shadowed = complete_detection(line({{10, 50, A}, {40, 90, A}, {30, 80, D}}));
    CHECK(shadowed.warnings == std::vector<Warning>{{3, WarningKind::shadowing}});

    const auto clean = line({{1, 10, A}, {11, 20, A}, {30, 40, A}});
    const auto report = complete_detection(clean);
    CHECK(report.warnings.empty());
    CHECK(report.transformed == clean);
}

TEST_CASE("rewriting the audited five-rule set")
{
    const auto audited = complete_detection(five_rules()).transformed;
    const auto positive = rewrite(audited, RewriteMode::positive);
    const auto negative = rewrite(audited, RewriteMode::negative);
    CHECK(fwtest::positions(positive) == std::vector<Position>{3, 5});
    CHECK(fwtest::positions(negative) == std::vector<Position>{1});
    CHECK(equivalent(five_rules(), positive, DefaultPolicy::deny));
    CHECK(equivalent(five_rules(), negative, DefaultPolicy::accept));
    CHECK_THROWS_AS(rewrite(five_rules(), RewriteMode::positive), PreconditionError);

    const auto denies = fwtest::line({{1, 10, Decision::deny}, {20, 30, Decision::deny}});
    CHECK(rewrite(denies, RewriteMode::negative) == denies);
}

TEST_CASE("audit output is stable under a second audit")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const auto r = fwtest::random_ruleset(seed, fwtest::square(0, 31));
        for (auto alg : {Algorithm::detection, Algorithm::complete}) {
            const auto once = audit(r, alg).transformed;
            const auto twice = audit(once, alg);
            CHECK(twice.warnings.empty());
            CHECK(twice.transformed == once);
        }
    }
}

TEST_CASE("audit outputs preserve behaviour and are disjoint")
{
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        const auto r = fwtest::random_ruleset(seed, fwtest::square(0, 31));
        for (auto alg : {Algorithm::detection, Algorithm::complete}) {
            const auto out = audit(r, alg).transformed;
            CHECK(out.disjoint());
            CHECK(fwtest::same_behaviour(r, out));
        }
    }
}

TEST_CASE("every detection warning is a genuine shadowing")
{
    for (std::uint64_t seed = 300; seed < 360; ++seed) {
        const auto r = fwtest::random_ruleset(seed, fwtest::square(0, 31));
        const auto truth = fwtest::brute_findings(r);
        std::set<Position> flagged;
        for (const auto& w : detection(r).warnings)
            flagged.insert(w.rule);
        CHECK(flagged == truth.shadowed);
    }
}

TEST_CASE("workspace accounting")
{
    const auto report = complete_detection(five_rules());
    CHECK(report.stats.peak_boxes >= report.stats.output_boxes);
    CHECK(report.stats.elapsed_ms >= 0.0);
}

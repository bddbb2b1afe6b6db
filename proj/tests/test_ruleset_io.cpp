#include "doctest.h"

#include "fwaudit/audit.hpp"
#include "fwaudit/error.hpp"
#include "fwaudit/oracle.hpp"
#include "fwaudit/ruleset_io.hpp"
#include "fwaudit/synth.hpp"

#include "support/support.hpp"

#include <fstream>
#include <sstream>

using namespace fwaudit;

namespace {

std::string fixture(const std::string& name)
{
    std::ifstream in(std::string(FWAUDIT_FIXTURES) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Value quad(Value a, Value b, Value c, Value d)
{
    return ((a * 256 + b) * 256 + c) * 256 + d;
}

const char* const kFiveRulesNormalized = "@domain source=[1,100] destination=[1,100]\n"
                                      "1, [1,30], [20,45], deny\n"
                                      "2, [20,60], [25,35], accept\n"
                                      "3, [40,70], [20,45], accept\n"
                                      "4, [15,45], [25,30], deny\n"
                                      "5, [25,45], [20,40], accept\n";

} // namespace

TEST_CASE("five-tuple records")
{
    const auto r = parse_ruleset("1, any, [1,30], any, [20,45], any, deny\n");
    REQUIRE(r.size() == 1);
    const auto five = DomainSpec::five_tuple();
    CHECK(r.domain == five);
    const Box expected{five[0].range, {1, 30}, five[2].range, {20, 45}, five[4].range};
    CHECK(r.rules[0].condition == BoxSet{expected});
    CHECK(r.rules[0].decision == Decision::deny);

    const auto all = parse_ruleset("1, any, any, any, any, any, accept");
    CHECK(all.rules[0].condition == BoxSet{five.full_box()});
    CHECK(all.rules[0].decision == Decision::accept);

    const auto tcp = parse_ruleset("1, tcp, 10.0.0.[1,30], any, 10.0.0.7, 80, accept");
    const Box& b = tcp.rules[0].condition.front();
    CHECK(b[0] == Interval{6, 6});
    CHECK(b[1] == Interval{167772161, 167772190});
    CHECK(b[1] == Interval{quad(10, 0, 0, 1), quad(10, 0, 0, 30)});
    CHECK(b[3] == Interval::point(quad(10, 0, 0, 7)));
    CHECK(b[4] == Interval{80, 80});
}

TEST_CASE("value syntax")
{
    const auto r = parse_ruleset("1, udp, 192.168.1.0, *, [0.0.0.0,0.0.0.255], [1024,65535], deny  # trailing\n"
                                 "\n"
                                 "   # comment line\n"
                                 "2,icmp,any,7,any,any,accept\n");
    REQUIRE(r.size() == 2);
    CHECK(r.rules[0].condition[0][0] == Interval{17, 17});
    CHECK(r.rules[0].condition[0][1] == Interval::point(quad(192, 168, 1, 0)));
    CHECK(r.rules[0].condition[0][3] == Interval{0, 255});
    CHECK(r.rules[1].condition[0][0] == Interval{1, 1});
    CHECK(r.rules[1].condition[0][2] == Interval{7, 7});
}

TEST_CASE("diagnostics carry line numbers")
{
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_ruleset(text);
        } catch (const ParseError& e) {
            return e.line();
        } catch (const DomainError& e) {
            return std::string(e.what()).rfind("line 3", 0) == 0 ? 3 : 0;
        }
        return 0;
    };
    const std::string head = "@domain s=[0,9]\n1, 1, accept\n";
    CHECK(line_of(head + "2, 3, allow\n") == 3);
    CHECK(line_of(head + "2, [5,4], deny\n") == 3);
    CHECK(line_of(head + "2, 1, 2, deny\n") == 3);
    CHECK(line_of(head + "1, 3, deny\n") == 3);
    CHECK(line_of(head + "2, 12, deny\n") == 3);
    CHECK(line_of(head + "x, 3, deny\n") == 3);
    CHECK_THROWS_AS(parse_ruleset(head + "2, [5,4], deny\n"), ValidationError);
    CHECK_THROWS_AS(parse_ruleset(head + "2, 12, deny\n"), DomainError);
    CHECK_THROWS_AS(parse_ruleset("@domain s=[0,9]\n1, tcp, accept\n"), ParseError);
    CHECK_THROWS_AS(parse_ruleset(fixture("malformed.rules")), ParseError);
}

TEST_CASE("round trip of the five-rule fixture")
{
    const auto r = parse_ruleset(fixture("five_rules.rules"));
    CHECK(r == fwtest::five_rules());
    CHECK(serialize_ruleset(r) == kFiveRulesNormalized);
    CHECK(parse_ruleset(kFiveRulesNormalized) == r);
    CHECK(parse_ruleset(fixture("five_rules.rules")) == r);
}

TEST_CASE("multi-box rules use sub-indices")
{
    const auto out = detection(fwtest::five_rules()).transformed;
    const auto text = serialize_ruleset(out);
    CHECK(text.find("3.1, [61,70], [20,45], accept\n") != std::string::npos);
    CHECK(text.find("3.2, [40,60], [20,24], accept\n") != std::string::npos);
    CHECK(text.find("3.3, [40,60], [36,45], accept\n") != std::string::npos);
    CHECK(text.find("3.4") == std::string::npos);
    CHECK(parse_ruleset(text) == out);
}

TEST_CASE("empty ruleset serializes as a header")
{
    const Ruleset empty(fwtest::sd100());
    CHECK(serialize_ruleset(empty) == "@domain source=[1,100] destination=[1,100]\n");
    CHECK(parse_ruleset(serialize_ruleset(empty)) == empty);
}

TEST_CASE("domain headers")
{
    const auto d = parse_domain("protocol=[0,255] src=[10.0.0.0,10.0.0.255] port=[0,65535]");
    CHECK(d.arity() == 3);
    CHECK(d[1].range == Interval{quad(10, 0, 0, 0), quad(10, 0, 0, 255)});
    CHECK(parse_domain("5tuple") == DomainSpec::five_tuple());
    CHECK(parse_domain(format_domain(fwtest::sd100())) == fwtest::sd100());
    CHECK(parse_domain(format_domain(DomainSpec::five_tuple())) == DomainSpec::five_tuple());

    const auto fallback = fwtest::square(0, 63);
    const auto r = parse_ruleset("1, [0,3], 7, deny\n", fallback);
    CHECK(r.domain == fallback);
}

TEST_CASE("generated rulesets survive a text round trip")
{
    for (const char* profile : {"beginner", "intermediate", "expert"})
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto r = generate(GeneratorProfile::named(profile, seed), 60, DomainSpec::five_tuple());
            CHECK(parse_ruleset(serialize_ruleset(r)) == r);
            const auto audited = complete_detection(r).transformed;
            const auto back = parse_ruleset(serialize_ruleset(audited));
            CHECK(back == audited);
        }
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto r = complete_detection(fwtest::random_ruleset(seed, fwtest::square(0, 31))).transformed;
        CHECK(equivalent(parse_ruleset(serialize_ruleset(r)), r));
    }
}

TEST_CASE("rule descriptions")
{
    const auto out = complete_detection(fwtest::five_rules()).transformed;
    CHECK(describe_rule(out.rules[0], out.domain) == "R1: (source in [1,30] and destination in [20,45]) -> deny");
    CHECK(describe_box(Box{{1, 100}, {1, 100}}, out.domain) == "(any)");
    CHECK(describe_box(Box{{1, 100}, {4, 4}}, out.domain) == "(destination in 4)");
}

TEST_CASE("reports")
{
    const ReportDocument doc(complete_detection(fwtest::five_rules()), input_digest(fixture("five_rules.rules")));
    const auto text = emit_report(doc, ReportFormat::text);
    CHECK(text.find("\nR2: redundancy\n") != std::string::npos);
    CHECK(text.find("\nR4: shadowing\n") != std::string::npos);
    CHECK(exit_status_hint(doc.report) == 1);

    const auto json = emit_report(doc, ReportFormat::json);
    CHECK(parse_report(json) == doc);
    CHECK(json.find("\"schema\": \"fwaudit-report\"") != std::string::npos);
    CHECK(json.find("\"version\": 1") < json.find("\"warnings\""));
    CHECK(emit_report(doc, ReportFormat::json) == json);

    const ReportDocument clean(complete_detection(parse_ruleset(fixture("disjoint.rules"))));
    CHECK(clean.report.warnings.empty());
    CHECK(exit_status_hint(clean.report) == 0);
    CHECK(emit_report(clean, ReportFormat::text).find("/* warnings */\nnone\n") != std::string::npos);
    CHECK(parse_report(emit_report(clean, ReportFormat::json)) == clean);
}

TEST_CASE("input digests")
{
    CHECK(input_digest("") == "fnv1a64:cbf29ce484222325");
    CHECK(input_digest("a") == "fnv1a64:af63dc4c8601ec8c");
}

TEST_CASE("sampled check of the five-tuple five-rule set")
{
    const auto r = parse_ruleset(fixture("five_rules_5tuple.rules"));
    const auto out = complete_detection(r);
    CHECK(out.warnings == std::vector<Warning>{{2, WarningKind::redundancy}, {4, WarningKind::shadowing}});
    CHECK(sample_equivalent(r, out.transformed, 100000, 2005));
}

#pragma once

#include "fwaudit/interval.hpp"
#include "fwaudit/oracle.hpp"
#include "fwaudit/rule.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace fwtest {

using namespace fwaudit;

inline DomainSpec square(Value lo, Value hi, std::size_t p = 2)
{
    static const char* names[] = {"s", "d", "t", "u", "v"};
    std::vector<Attribute> attrs;
    for (std::size_t k = 0; k < p; ++k)
        attrs.push_back({names[k], {lo, hi}});
    return DomainSpec(std::move(attrs));
}

inline DomainSpec sd100()
{
    return DomainSpec({{"source", {1, 100}}, {"destination", {1, 100}}});
}

inline Rule rule2(Position pos, Value s0, Value s1, Value d0, Value d1, Decision d)
{
    return Rule(pos, Box{{s0, s1}, {d0, d1}}, d);
}

inline Ruleset five_rules()
{
    Ruleset r(sd100());
    r.rules = {rule2(1, 1, 30, 20, 45, Decision::deny), rule2(2, 20, 60, 25, 35, Decision::accept),
               rule2(3, 40, 70, 20, 45, Decision::accept), rule2(4, 15, 45, 25, 30, Decision::deny),
               rule2(5, 25, 45, 20, 40, Decision::accept)};
    return r;
}

// One-attribute ruleset over [1,100]; each entry is {lo, hi, decision}.
struct Span1 {
    Value lo, hi;
    Decision decision;
};

inline Ruleset line(std::initializer_list<Span1> spans)
{
    Ruleset r(DomainSpec({{"s", {1, 100}}}));
    Position pos = 1;
    for (const auto& s : spans)
        r.rules.emplace_back(pos++, Box{{s.lo, s.hi}}, s.decision);
    return r;
}

inline Interval random_interval(std::mt19937_64& rng, Value lo, Value hi)
{
    std::uniform_int_distribution<Value> pick(lo, hi);
    Value a = pick(rng), b = pick(rng);
    if (a > b)
        std::swap(a, b);
    return {a, b};
}

inline Box random_box(std::mt19937_64& rng, const DomainSpec& domain)
{
    std::vector<Interval> ivs;
    for (const auto& a : domain.attributes())
        ivs.push_back(random_interval(rng, a.range.lo(), a.range.hi()));
    return Box(std::move(ivs));
}

// Uniform endpoint pairs per attribute, fair decisions, 1..max_n rules.
inline Ruleset random_ruleset(std::uint64_t seed, const DomainSpec& domain, std::size_t max_n = 12)
{
    std::mt19937_64 rng(seed);
    const auto n = std::uniform_int_distribution<std::size_t>(1, max_n)(rng);
    Ruleset r(domain);
    for (std::size_t i = 0; i < n; ++i) {
        auto box = random_box(rng, domain);
        const auto d = std::bernoulli_distribution(0.5)(rng) ? Decision::accept : Decision::deny;
        r.rules.emplace_back(static_cast<Position>(i + 1), std::move(box), d);
    }
    return r;
}

// Brute-force point enumeration, independent of the library's oracle.
template <class F>
void each_point(const DomainSpec& domain, F&& f)
{
    std::vector<Value> q;
    for (const auto& a : domain.attributes())
        q.push_back(a.range.lo());
    for (;;) {
        f(static_cast<const std::vector<Value>&>(q));
        std::size_t k = q.size();
        while (k > 0) {
            --k;
            if (q[k] < domain[k].range.hi()) {
                ++q[k];
                break;
            }
            q[k] = domain[k].range.lo();
            if (k == 0)
                return;
        }
    }
}

inline bool in_box(const Box& b, const std::vector<Value>& q)
{
    for (std::size_t k = 0; k < q.size(); ++k)
        if (q[k] < b[k].lo() || q[k] > b[k].hi())
            return false;
    return true;
}

inline bool in_rule(const Rule& r, const std::vector<Value>& q)
{
    return std::any_of(r.condition.begin(), r.condition.end(), [&](const Box& b) { return in_box(b, q); });
}

// -1 when nothing matches, otherwise the index of the first matching rule
// among those with keep[i] set.
inline int first_index(const std::vector<Rule>& rules, const std::vector<bool>& keep, const std::vector<Value>& q)
{
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (keep[i] && in_rule(rules[i], q))
            return static_cast<int>(i);
    return -1;
}

inline int outcome_of(const std::vector<Rule>& rules, const std::vector<bool>& keep, const std::vector<Value>& q)
{
    const int i = first_index(rules, keep, q);
    return i < 0 ? -1 : static_cast<int>(rules[static_cast<std::size_t>(i)].decision);
}

inline bool same_behaviour(const Ruleset& a, const Ruleset& b)
{
    const std::vector<bool> ka(a.size(), true), kb(b.size(), true);
    bool same = true;
    each_point(a.domain, [&](const std::vector<Value>& q) {
        if (same && outcome_of(a.rules, ka, q) != outcome_of(b.rules, kb, q))
            same = false;
    });
    return same;
}

struct Findings {
    std::set<Position> shadowed;
    std::set<Position> redundant;
};

// Shadowed: never the first match. Redundant: not shadowed, and dropping it
// from the ruleset without its shadowed rules changes no outcome.
inline Findings brute_findings(const Ruleset& r)
{
    const auto n = r.size();
    std::vector<bool> all(n, true), first(n, false);
    each_point(r.domain, [&](const std::vector<Value>& q) {
        const int i = first_index(r.rules, all, q);
        if (i >= 0)
            first[static_cast<std::size_t>(i)] = true;
    });
    Findings f;
    std::vector<bool> live(n);
    for (std::size_t i = 0; i < n; ++i) {
        live[i] = first[i];
        if (!first[i])
            f.shadowed.insert(r.rules[i].position);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!live[i])
            continue;
        auto without = live;
        without[i] = false;
        bool same = true;
        each_point(r.domain, [&](const std::vector<Value>& q) {
            if (same && outcome_of(r.rules, live, q) != outcome_of(r.rules, without, q))
                same = false;
        });
        if (same)
            f.redundant.insert(r.rules[i].position);
    }
    return f;
}

inline std::vector<Position> positions(const Ruleset& r)
{
    std::vector<Position> out;
    for (const auto& rule : r.rules)
        out.push_back(rule.position);
    return out;
}

} // namespace fwtest

#pragma once

// Synthetic rulesets: officer-profile workloads and the nested worst-case
// family used for growth measurements.

#include "fwaudit/rule.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace fwaudit {

struct GeneratorProfile {
    std::string name;
    // Chance that a rule (after the first) is derived from an earlier rule
    // so that the two overlap on every attribute.
    double overlap_probability = 0.05;
    // Chance that a rule accepts.
    double decision_bias = 0.5;
    std::uint64_t seed = 0;

    // beginner 0.05, intermediate 0.475, expert 0.90.
    // Throws std::invalid_argument for any other name.
    static GeneratorProfile named(std::string_view name, std::uint64_t seed = 0);
};

// n rules over `domain`, fully determined by the profile (seed included).
//
// A derived rule picks an earlier rule uniformly and, per attribute, either
// copies its interval or anchors a new interval on a random point of it
// (bounded shift/resize), so the two boxes always intersect. Any other rule
// is fresh: it is grown around a random packet not yet matched by earlier
// rules and trimmed until it is disjoint from all of them. When no such
// packet turns up the rule is derived instead.
Ruleset generate(const GeneratorProfile& profile, std::size_t n, const DomainSpec& domain);

// Rule k covers [0, 10k] on each of p attributes over the domain [0, 10n],
// with alternating decisions; every exclusion step splits surviving boxes.
// Requires n >= 2 and p >= 2 (std::invalid_argument otherwise).
Ruleset worst_case_family(std::size_t n, std::size_t p);

// 1 + p + ... + p^(n-1), saturating at SIZE_MAX.
std::size_t worst_case_bound(std::size_t n, std::size_t p) noexcept;

} // namespace fwaudit

#pragma once

#include "fwaudit/interval.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fwaudit {

enum class Decision : std::uint8_t { accept, deny };

std::string_view to_string(Decision d) noexcept;
std::optional<Decision> parse_decision(std::string_view text) noexcept;

using Position = std::uint32_t;

struct Rule {
    Position position = 0;
    BoxSet condition;
    Decision decision = Decision::deny;
    bool shadowing = false;
    bool redundancy = false;

    Rule() = default;
    Rule(Position pos, BoxSet cond, Decision dec)
        : position(pos), condition(std::move(cond)), decision(dec) {}
    Rule(Position pos, Box box, Decision dec) : position(pos), condition{std::move(box)}, decision(dec) {}

    bool empty() const noexcept { return condition.empty(); }
    bool matches(std::span<const Value> packet) const noexcept;

    friend bool operator==(const Rule&, const Rule&) = default;
};

// Rules in priority order over one shared domain.
struct Ruleset {
    DomainSpec domain;
    std::vector<Rule> rules;

    explicit Ruleset(DomainSpec d) : domain(std::move(d)) {}
    Ruleset(DomainSpec d, std::vector<Rule> r) : domain(std::move(d)), rules(std::move(r)) {}

    std::size_t size() const noexcept { return rules.size(); }
    std::size_t box_count() const noexcept;

    // Positions strictly increasing and every box inside the domain.
    // Throws PreconditionError / ArityError / DomainError.
    void validate() const;

    // True when no two boxes, within or across rules, share a packet.
    bool disjoint() const;

    // Same rules in a new order, renumbered 1..n to keep positions increasing.
    Ruleset reordered(std::span<const std::size_t> order) const;

    const Rule* find(Position pos) const noexcept;

    friend bool operator==(const Ruleset&, const Ruleset&) = default;
};

} // namespace fwaudit

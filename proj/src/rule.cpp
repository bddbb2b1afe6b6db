#include "fwaudit/rule.hpp"

#include "fwaudit/error.hpp"

#include <algorithm>

namespace fwaudit {

std::string_view to_string(Decision d) noexcept
{
    return d == Decision::accept ? "accept" : "deny";
}

std::optional<Decision> parse_decision(std::string_view text) noexcept
{
    if (text == "accept")
        return Decision::accept;
    if (text == "deny")
        return Decision::deny;
    return std::nullopt;
}

bool Rule::matches(std::span<const Value> packet) const noexcept
{
    return std::any_of(condition.begin(), condition.end(),
                       [&](const Box& b) { return b.contains(packet); });
}

std::size_t Ruleset::box_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& r : rules)
        n += r.condition.size();
    return n;
}

void Ruleset::validate() const
{
    Position last = 0;
    for (const auto& r : rules) {
        if (r.position == 0 || r.position <= last)
            throw PreconditionError("rule positions must be positive and strictly increasing (at " +
                                    std::to_string(r.position) + ")");
        last = r.position;
        for (const auto& box : r.condition)
            domain.check(box);
    }
}

bool Ruleset::disjoint() const
{
    std::vector<Box> all;
    all.reserve(box_count());
    for (const auto& r : rules)
        all.insert(all.end(), r.condition.begin(), r.condition.end());
    return pairwise_disjoint(all);
}

Ruleset Ruleset::reordered(std::span<const std::size_t> order) const
{
    Ruleset out(domain);
    out.rules.reserve(order.size());
    Position pos = 1;
    for (auto idx : order) {
        Rule r = rules.at(idx);
        r.position = pos++;
        out.rules.push_back(std::move(r));
    }
    return out;
}

const Rule* Ruleset::find(Position pos) const noexcept
{
    for (const auto& r : rules)
        if (r.position == pos)
            return &r;
    return nullptr;
}

} // namespace fwaudit

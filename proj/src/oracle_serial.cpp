#include "fwaudit/oracle_serial.hpp"

#include "fwaudit/error.hpp"

#include <algorithm>

namespace fwaudit::serial {

namespace {

// Calls visit(packet) for every packet in lexicographic order until it
// returns false.
template <typename Visit>
void for_each_packet(const DomainSpec& domain, std::uint64_t budget, Visit&& visit)
{
    const auto count = domain.packet_count();
    if (!count || *count > budget)
        throw BudgetError("domain too large for exhaustive checking");
    const auto& attrs = domain.attributes();
    Packet q;
    for (const auto& a : attrs)
        q.push_back(a.range.lo());
    while (true) {
        if (!visit(std::as_const(q)))
            return;
        std::size_t k = attrs.size();
        while (k > 0) {
            --k;
            if (q[k] < attrs[k].range.hi()) {
                ++q[k];
                break;
            }
            q[k] = attrs[k].range.lo();
            if (k == 0)
                return;
        }
    }
}

Ruleset without(const Ruleset& r, std::size_t index)
{
    Ruleset out = r;
    out.rules.erase(out.rules.begin() + static_cast<std::ptrdiff_t>(index));
    return out;
}

} // namespace

Equivalence equivalent(const Ruleset& a, const Ruleset& b, DefaultPolicy policy, std::uint64_t budget)
{
    if (!(a.domain == b.domain))
        throw DomainError("rulesets are declared over different domains");
    Equivalence result;
    for_each_packet(a.domain, budget, [&](const Packet& q) {
        ++result.packets_checked;
        const auto lo = apply_default(evaluate(a, q), policy);
        const auto ro = apply_default(evaluate(b, q), policy);
        if (lo == ro)
            return true;
        result.equivalent = false;
        result.counterexample = q;
        result.left = lo;
        result.right = ro;
        return false;
    });
    return result;
}

std::vector<Position> find_shadowed(const Ruleset& r, std::uint64_t budget)
{
    std::vector<char> applies(r.rules.size(), 0);
    for_each_packet(r.domain, budget, [&](const Packet& q) {
        for (std::size_t i = 0; i < r.rules.size(); ++i) {
            if (r.rules[i].matches(q)) {
                applies[i] = 1;
                break;
            }
        }
        return true;
    });
    std::vector<Position> out;
    for (std::size_t i = 0; i < r.rules.size(); ++i)
        if (!applies[i])
            out.push_back(r.rules[i].position);
    return out;
}

std::vector<Position> find_redundant(const Ruleset& r, std::uint64_t budget)
{
    const auto shadowed = serial::find_shadowed(r, budget);
    Ruleset live(r.domain);
    for (const auto& rule : r.rules)
        if (std::find(shadowed.begin(), shadowed.end(), rule.position) == shadowed.end())
            live.rules.push_back(rule);

    std::vector<Position> out;
    for (std::size_t i = 0; i < live.rules.size(); ++i)
        if (serial::equivalent(live, without(live, i), DefaultPolicy::none, budget))
            out.push_back(live.rules[i].position);
    return out;
}

} // namespace fwaudit::serial

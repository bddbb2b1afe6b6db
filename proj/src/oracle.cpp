#include "fwaudit/oracle.hpp"

#include "fwaudit/error.hpp"

#include <algorithm>
#include <limits>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fwaudit {

std::string_view to_string(Outcome o) noexcept
{
    switch (o) {
    case Outcome::accept:
        return "accept";
    case Outcome::deny:
        return "deny";
    case Outcome::no_match:
        break;
    }
    return "no_match";
}

std::string_view to_string(DefaultPolicy p) noexcept
{
    switch (p) {
    case DefaultPolicy::accept:
        return "accept";
    case DefaultPolicy::deny:
        return "deny";
    case DefaultPolicy::none:
        break;
    }
    return "none";
}

Outcome apply_default(Outcome o, DefaultPolicy policy) noexcept
{
    if (o != Outcome::no_match)
        return o;
    switch (policy) {
    case DefaultPolicy::accept:
        return Outcome::accept;
    case DefaultPolicy::deny:
        return Outcome::deny;
    case DefaultPolicy::none:
        break;
    }
    return Outcome::no_match;
}

namespace {

Outcome as_outcome(Decision d) noexcept
{
    return d == Decision::accept ? Outcome::accept : Outcome::deny;
}

constexpr std::size_t kNoRule = std::numeric_limits<std::size_t>::max();

// Rules flattened to contiguous per-box bounds for the enumeration kernels.
class FlatRules {
public:
    explicit FlatRules(const Ruleset& r) : arity_(r.domain.arity())
    {
        for (std::size_t i = 0; i < r.rules.size(); ++i) {
            decisions_.push_back(r.rules[i].decision);
            for (const auto& box : r.rules[i].condition) {
                for (const auto& iv : box.intervals()) {
                    lo_.push_back(iv.lo());
                    hi_.push_back(iv.hi());
                }
                owner_.push_back(i);
            }
        }
    }

    std::size_t rule_count() const noexcept { return decisions_.size(); }
    Decision decision(std::size_t rule) const noexcept { return decisions_[rule]; }

    // Index of the first rule at or after `from` matching the packet.
    std::size_t first_match(const Value* packet, std::size_t from = 0) const noexcept
    {
        const std::size_t boxes = owner_.size();
        for (std::size_t b = 0; b < boxes; ++b) {
            if (owner_[b] < from)
                continue;
            const Value* lo = &lo_[b * arity_];
            const Value* hi = &hi_[b * arity_];
            bool inside = true;
            for (std::size_t k = 0; k < arity_ && inside; ++k)
                inside = lo[k] <= packet[k] && packet[k] <= hi[k];
            if (inside)
                return owner_[b];
        }
        return kNoRule;
    }

    Outcome outcome(const Value* packet) const noexcept
    {
        const auto rule = first_match(packet);
        return rule == kNoRule ? Outcome::no_match : as_outcome(decisions_[rule]);
    }

private:
    std::size_t arity_;
    std::vector<Value> lo_;
    std::vector<Value> hi_;
    std::vector<std::size_t> owner_;
    std::vector<Decision> decisions_;
};

void require_same_domain(const Ruleset& a, const Ruleset& b)
{
    if (!(a.domain == b.domain))
        throw DomainError("rulesets are declared over different domains");
}

// Packets are scanned in blocks so a mismatch stops the scan early while the
// reported counterexample stays the lexicographically-first one.
constexpr std::uint64_t kBlock = 1 << 16;

} // namespace

PacketSpace::PacketSpace(const DomainSpec& domain, std::uint64_t budget)
{
    const auto count = domain.packet_count();
    if (!count || *count > budget)
        throw BudgetError("domain too large for exhaustive checking (budget " + std::to_string(budget) +
                          " packets); use sampling instead");
    size_ = *count;
    for (const auto& attr : domain.attributes()) {
        lo_.push_back(attr.range.lo());
        radix_.push_back(attr.range.size());
    }
}

void PacketSpace::decode(std::uint64_t index, std::span<Value> out) const noexcept
{
    for (std::size_t k = radix_.size(); k-- > 0;) {
        out[k] = lo_[k] + static_cast<Value>(index % radix_[k]);
        index /= radix_[k];
    }
}

Outcome evaluate(const Ruleset& r, std::span<const Value> packet)
{
    r.domain.check(packet);
    for (const auto& rule : r.rules)
        if (rule.matches(packet))
            return as_outcome(rule.decision);
    return Outcome::no_match;
}

Equivalence equivalent(const Ruleset& a, const Ruleset& b, DefaultPolicy policy, std::uint64_t budget)
{
    require_same_domain(a, b);
    const PacketSpace space(a.domain, budget);
    const FlatRules left(a);
    const FlatRules right(b);
    const std::size_t arity = a.domain.arity();

    Equivalence result;
    for (std::uint64_t base = 0; base < space.size(); base += kBlock) {
        const std::uint64_t end = std::min(space.size(), base + kBlock);
        std::uint64_t first_bad = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel
        {
            Packet q(arity);
#pragma omp for schedule(static) reduction(min : first_bad)
            for (std::uint64_t idx = base; idx < end; ++idx) {
                space.decode(idx, q);
                if (apply_default(left.outcome(q.data()), policy) != apply_default(right.outcome(q.data()), policy))
                    first_bad = std::min(first_bad, idx);
            }
        }
        if (first_bad != std::numeric_limits<std::uint64_t>::max()) {
            Packet q(arity);
            space.decode(first_bad, q);
            result.equivalent = false;
            result.left = apply_default(left.outcome(q.data()), policy);
            result.right = apply_default(right.outcome(q.data()), policy);
            result.counterexample = std::move(q);
            result.packets_checked = first_bad + 1;
            return result;
        }
        result.packets_checked = end;
    }
    return result;
}

Equivalence sample_equivalent(const Ruleset& a, const Ruleset& b, std::uint64_t samples, std::uint64_t seed,
                              DefaultPolicy policy)
{
    require_same_domain(a, b);
    if (samples == 0)
        throw PreconditionError("sample count must be at least 1");
    const FlatRules left(a);
    const FlatRules right(b);

    std::mt19937_64 rng(seed);
    std::vector<std::uniform_int_distribution<Value>> dists;
    for (const auto& attr : a.domain.attributes())
        dists.emplace_back(attr.range.lo(), attr.range.hi());

    Equivalence result;
    Packet q(dists.size());
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::size_t k = 0; k < dists.size(); ++k)
            q[k] = dists[k](rng);
        const auto lo = apply_default(left.outcome(q.data()), policy);
        const auto ro = apply_default(right.outcome(q.data()), policy);
        result.packets_checked = s + 1;
        if (lo != ro) {
            result.equivalent = false;
            result.left = lo;
            result.right = ro;
            result.counterexample = q;
            return result;
        }
    }
    return result;
}

namespace {

struct MatchProfile {
    // Rule i is the first match of at least one packet.
    std::vector<char> first;
    // Some packet first-matched by rule i gets a different outcome once rule
    // i is gone (next match has the other decision, or there is none).
    std::vector<char> needed;
};

MatchProfile profile_matches(const Ruleset& r, std::uint64_t budget)
{
    const PacketSpace space(r.domain, budget);
    const FlatRules flat(r);
    const std::size_t n = flat.rule_count();
    const std::size_t arity = r.domain.arity();

    MatchProfile prof{std::vector<char>(n, 0), std::vector<char>(n, 0)};
#pragma omp parallel
    {
        std::vector<char> first(n, 0);
        std::vector<char> needed(n, 0);
        Packet q(arity);
#pragma omp for schedule(static)
        for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
            space.decode(idx, q);
            const auto i = flat.first_match(q.data());
            if (i == kNoRule)
                continue;
            first[i] = 1;
            if (needed[i])
                continue;
            const auto next = flat.first_match(q.data(), i + 1);
            if (next == kNoRule || flat.decision(next) != flat.decision(i))
                needed[i] = 1;
        }
#pragma omp critical
        for (std::size_t i = 0; i < n; ++i) {
            prof.first[i] |= first[i];
            prof.needed[i] |= needed[i];
        }
    }
    return prof;
}

} // namespace

std::vector<Position> find_shadowed(const Ruleset& r, std::uint64_t budget)
{
    const auto prof = profile_matches(r, budget);
    std::vector<Position> out;
    for (std::size_t i = 0; i < r.rules.size(); ++i)
        if (!prof.first[i])
            out.push_back(r.rules[i].position);
    return out;
}

std::vector<Position> find_redundant(const Ruleset& r, std::uint64_t budget)
{
    // Shadowed rules never apply, so they are dropped before probing; with
    // them in place, removing a rule could expose a dead rule underneath.
    const auto prof = profile_matches(r, budget);
    Ruleset live(r.domain);
    for (std::size_t i = 0; i < r.rules.size(); ++i)
        if (prof.first[i])
            live.rules.push_back(r.rules[i]);

    const auto live_prof = profile_matches(live, budget);
    std::vector<Position> out;
    for (std::size_t i = 0; i < live.rules.size(); ++i)
        if (!live_prof.needed[i])
            out.push_back(live.rules[i].position);
    return out;
}

} // namespace fwaudit

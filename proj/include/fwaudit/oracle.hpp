#pragma once

// Brute-force ground truth for rulesets over small domains.
//
// Every packet of the domain is enumerated in lexicographic attribute order
// and classified by first match. The enumeration kernels are OpenMP-parallel;
// fwaudit/oracle_serial.hpp keeps a literal single-threaded version of each
// check that the test suite cross-validates against these.

#include "fwaudit/rule.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fwaudit {

enum class Outcome : std::uint8_t { accept, deny, no_match };

// How packets matching no rule are treated when comparing rulesets.
// `none` keeps no_match as its own outcome, so results hold for any default.
enum class DefaultPolicy { none, accept, deny };

std::string_view to_string(Outcome o) noexcept;
std::string_view to_string(DefaultPolicy p) noexcept;

using Packet = std::vector<Value>;

inline constexpr std::uint64_t kExhaustiveBudget = 10'000'000;

// First-match outcome. Throws DomainError / ArityError for a packet outside
// the ruleset's domain.
Outcome evaluate(const Ruleset& r, std::span<const Value> packet);

Outcome apply_default(Outcome o, DefaultPolicy policy) noexcept;

struct Equivalence {
    bool equivalent = true;
    // Lexicographically-first disagreeing packet (exhaustive mode) or the
    // first disagreeing sample.
    std::optional<Packet> counterexample;
    Outcome left = Outcome::no_match;
    Outcome right = Outcome::no_match;
    std::uint64_t packets_checked = 0;

    explicit operator bool() const noexcept { return equivalent; }
};

// Exhaustive comparison. Throws DomainError when the domains differ and
// BudgetError when the domain holds more than `budget` packets.
Equivalence equivalent(const Ruleset& a, const Ruleset& b, DefaultPolicy policy = DefaultPolicy::none,
                       std::uint64_t budget = kExhaustiveBudget);

// Seeded uniform sampling; advisory only, a `true` result is not a proof.
Equivalence sample_equivalent(const Ruleset& a, const Ruleset& b, std::uint64_t samples, std::uint64_t seed,
                              DefaultPolicy policy = DefaultPolicy::none);

// Positions of rules that are never the first match of any packet.
std::vector<Position> find_shadowed(const Ruleset& r, std::uint64_t budget = kExhaustiveBudget);

// Positions of non-shadowed rules whose removal leaves every packet's
// outcome (including no_match) unchanged. Removal is judged against the live
// ruleset, i.e. with the shadowed rules already taken out.
std::vector<Position> find_redundant(const Ruleset& r, std::uint64_t budget = kExhaustiveBudget);

// Mixed-radix view of the domain: index 0 is the all-minimum packet and the
// last attribute varies fastest.
class PacketSpace {
public:
    // Throws BudgetError when the domain is larger than `budget`.
    PacketSpace(const DomainSpec& domain, std::uint64_t budget);

    std::uint64_t size() const noexcept { return size_; }
    void decode(std::uint64_t index, std::span<Value> out) const noexcept;

private:
    std::vector<Value> lo_;
    std::vector<std::uint64_t> radix_;
    std::uint64_t size_ = 1;
};

} // namespace fwaudit

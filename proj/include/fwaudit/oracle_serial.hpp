#pragma once

// Single-threaded reference versions of the oracle checks. They follow the
// definitions literally (redundancy re-evaluates the whole domain with the
// rule removed) and exist to validate the parallel kernels in oracle.hpp.

#include "fwaudit/oracle.hpp"

namespace fwaudit::serial {

Equivalence equivalent(const Ruleset& a, const Ruleset& b, DefaultPolicy policy = DefaultPolicy::none,
                       std::uint64_t budget = kExhaustiveBudget);

std::vector<Position> find_shadowed(const Ruleset& r, std::uint64_t budget = kExhaustiveBudget);

std::vector<Position> find_redundant(const Ruleset& r, std::uint64_t budget = kExhaustiveBudget);

} // namespace fwaudit::serial

#pragma once

#include "fwaudit/rule.hpp"

namespace fwaudit {

// Points of `from` not covered by `removed`, refined one removed box at a
// time: every working box is replaced by its slab decomposition against the
// current removed box. Output boxes are pairwise disjoint when `from` is.
BoxSet exclude(const BoxSet& from, const BoxSet& removed);

// A fresh rule carrying b's position and decision whose condition is
// b.condition minus a.condition. Both flags of the result are false.
// Throws ArityError when the two conditions disagree on arity.
Rule exclusion(const Rule& b, const Rule& a);

} // namespace fwaudit

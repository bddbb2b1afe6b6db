#include "fwaudit/exclusion.hpp"

namespace fwaudit {

BoxSet exclude(const BoxSet& from, const BoxSet& removed)
{
    BoxSet working = from;
    BoxSet next;
    for (const auto& cut : removed) {
        if (working.empty())
            break;
        next.clear();
        for (const auto& box : working) {
            if (!intersects(box, cut)) {
                next.push_back(box);
                continue;
            }
            auto pieces = subtract(box, cut);
            next.insert(next.end(), std::make_move_iterator(pieces.begin()),
                        std::make_move_iterator(pieces.end()));
        }
        working.swap(next);
    }
    return working;
}

Rule exclusion(const Rule& b, const Rule& a)
{
    Rule c(b.position, exclude(b.condition, a.condition), b.decision);
    c.shadowing = false;
    c.redundancy = false;
    return c;
}

} // namespace fwaudit

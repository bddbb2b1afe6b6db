#include "fwaudit/interval.hpp"

#include "fwaudit/error.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace fwaudit {

std::optional<Interval> intersect(const Interval& a, const Interval& b) noexcept
{
    const Value lo = std::max(a.lo(), b.lo());
    const Value hi = std::min(a.hi(), b.hi());
    if (lo > hi)
        return std::nullopt;
    return Interval{lo, hi};
}

std::vector<Interval> subtract(const Interval& b, const Interval& a)
{
    const auto common = intersect(a, b);
    if (!common)
        return {b};
    std::vector<Interval> out;
    if (b.lo() < common->lo())
        out.emplace_back(b.lo(), common->lo() - 1);
    if (common->hi() < b.hi())
        out.emplace_back(common->hi() + 1, b.hi());
    return out;
}

std::string to_string(const Interval& iv)
{
    return "[" + std::to_string(iv.lo()) + "," + std::to_string(iv.hi()) + "]";
}

DomainSpec::DomainSpec(std::vector<Attribute> attributes) : attributes_(std::move(attributes))
{
    if (attributes_.empty())
        throw DomainError("domain needs at least one attribute");
    std::set<std::string> seen;
    for (const auto& attr : attributes_) {
        if (attr.name.empty())
            throw DomainError("attribute name must not be empty");
        if (!seen.insert(attr.name).second)
            throw DomainError("duplicate attribute name '" + attr.name + "'");
    }
}

DomainSpec DomainSpec::five_tuple()
{
    constexpr Value kAddrMax = 0xFFFFFFFFLL;
    return DomainSpec({
        {"protocol", {0, 255}},
        {"source", {0, kAddrMax}},
        {"sport", {0, 65535}},
        {"destination", {0, kAddrMax}},
        {"dport", {0, 65535}},
    });
}

std::optional<std::size_t> DomainSpec::index_of(std::string_view name) const
{
    for (std::size_t k = 0; k < attributes_.size(); ++k)
        if (attributes_[k].name == name)
            return k;
    return std::nullopt;
}

Box DomainSpec::full_box() const
{
    std::vector<Interval> ivs;
    ivs.reserve(attributes_.size());
    for (const auto& attr : attributes_)
        ivs.push_back(attr.range);
    return Box(std::move(ivs));
}

std::optional<std::uint64_t> DomainSpec::packet_count() const noexcept
{
    std::uint64_t total = 1;
    for (const auto& attr : attributes_) {
        const std::uint64_t n = attr.range.size();
        if (n != 0 && total > std::numeric_limits<std::uint64_t>::max() / n)
            return std::nullopt;
        total *= n;
    }
    return total;
}

bool DomainSpec::contains(const Box& box) const noexcept
{
    if (box.arity() != arity())
        return false;
    for (std::size_t k = 0; k < arity(); ++k)
        if (!attributes_[k].range.contains(box[k]))
            return false;
    return true;
}

bool DomainSpec::contains(std::span<const Value> packet) const noexcept
{
    if (packet.size() != arity())
        return false;
    for (std::size_t k = 0; k < arity(); ++k)
        if (!attributes_[k].range.contains(packet[k]))
            return false;
    return true;
}

void DomainSpec::check(const Box& box) const
{
    if (box.arity() != arity())
        throw ArityError("box has " + std::to_string(box.arity()) + " attributes, domain has " +
                         std::to_string(arity()));
    for (std::size_t k = 0; k < arity(); ++k)
        if (!attributes_[k].range.contains(box[k]))
            throw DomainError(attributes_[k].name + " interval " + to_string(box[k]) +
                              " outside domain " + to_string(attributes_[k].range));
}

void DomainSpec::check(std::span<const Value> packet) const
{
    if (packet.size() != arity())
        throw ArityError("packet has " + std::to_string(packet.size()) + " values, domain has " +
                         std::to_string(arity()));
    for (std::size_t k = 0; k < arity(); ++k)
        if (!attributes_[k].range.contains(packet[k]))
            throw DomainError(attributes_[k].name + " value " + std::to_string(packet[k]) +
                              " outside domain " + to_string(attributes_[k].range));
}

bool Box::contains(std::span<const Value> packet) const noexcept
{
    if (packet.size() != intervals_.size())
        return false;
    for (std::size_t k = 0; k < intervals_.size(); ++k)
        if (!intervals_[k].contains(packet[k]))
            return false;
    return true;
}

bool Box::contains(const Box& other) const noexcept
{
    if (other.arity() != arity())
        return false;
    for (std::size_t k = 0; k < intervals_.size(); ++k)
        if (!intervals_[k].contains(other[k]))
            return false;
    return true;
}

std::uint64_t Box::volume() const noexcept
{
    std::uint64_t v = 1;
    for (const auto& iv : intervals_) {
        const auto n = iv.size();
        v = (n != 0 && v > std::numeric_limits<std::uint64_t>::max() / n)
                ? std::numeric_limits<std::uint64_t>::max()
                : v * n;
    }
    return v;
}

namespace {

void require_same_arity(const Box& a, const Box& b)
{
    if (a.arity() != b.arity())
        throw ArityError("boxes have different arity (" + std::to_string(a.arity()) + " vs " +
                         std::to_string(b.arity()) + ")");
}

} // namespace

bool intersects(const Box& a, const Box& b)
{
    require_same_arity(a, b);
    for (std::size_t k = 0; k < a.arity(); ++k)
        if (a[k].hi() < b[k].lo() || b[k].hi() < a[k].lo())
            return false;
    return true;
}

std::optional<Box> intersect(const Box& a, const Box& b)
{
    require_same_arity(a, b);
    std::vector<Interval> ivs;
    ivs.reserve(a.arity());
    for (std::size_t k = 0; k < a.arity(); ++k) {
        auto common = intersect(a[k], b[k]);
        if (!common)
            return std::nullopt;
        ivs.push_back(*common);
    }
    return Box(std::move(ivs));
}

BoxSet subtract(const Box& b, const Box& a)
{
    auto common = intersect(a, b);
    if (!common)
        return {b};

    BoxSet out;
    std::vector<Interval> slab = b.intervals();
    for (std::size_t k = 0; k < b.arity(); ++k) {
        for (const auto& residual : subtract(b[k], a[k])) {
            slab[k] = residual;
            out.emplace_back(slab);
        }
        // Later slabs are confined to the overlap on this attribute.
        slab[k] = (*common)[k];
    }
    return out;
}

bool pairwise_disjoint(std::span<const Box> boxes)
{
    for (std::size_t i = 0; i < boxes.size(); ++i)
        for (std::size_t j = i + 1; j < boxes.size(); ++j)
            if (intersects(boxes[i], boxes[j]))
                return false;
    return true;
}

std::string to_string(const Box& box)
{
    std::string out = "(";
    for (std::size_t k = 0; k < box.arity(); ++k) {
        if (k)
            out += ", ";
        out += to_string(box[k]);
    }
    return out + ")";
}

} // namespace fwaudit

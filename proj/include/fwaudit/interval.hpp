#pragma once

// Closed integer intervals and boxes (one interval per attribute), the
// building blocks of every rule condition.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fwaudit {

using Value = std::int64_t;

// [lo, hi], inclusive on both ends. An interval is never empty; emptiness is
// expressed by the absence of an interval (std::nullopt or an empty list).
class Interval {
public:
    constexpr Interval(Value lo, Value hi) : lo_(lo), hi_(hi)
    {
        if (lo > hi)
            throw std::invalid_argument("interval lower bound exceeds upper bound");
    }

    static constexpr Interval point(Value v) { return {v, v}; }

    constexpr Value lo() const noexcept { return lo_; }
    constexpr Value hi() const noexcept { return hi_; }
    constexpr bool contains(Value v) const noexcept { return lo_ <= v && v <= hi_; }
    constexpr bool contains(const Interval& o) const noexcept { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    // Number of integers covered; saturates only beyond 2^63.
    constexpr std::uint64_t size() const noexcept
    {
        return static_cast<std::uint64_t>(hi_ - lo_) + 1;
    }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;

private:
    Value lo_;
    Value hi_;
};

std::optional<Interval> intersect(const Interval& a, const Interval& b) noexcept;

// Points of b not in a, as at most two disjoint intervals in ascending order.
std::vector<Interval> subtract(const Interval& b, const Interval& a);

std::string to_string(const Interval& iv);

struct Attribute {
    std::string name;
    Interval range;

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

class Box;

// The ordered attribute list every rule of a ruleset is expressed over.
class DomainSpec {
public:
    explicit DomainSpec(std::vector<Attribute> attributes);

    // protocol, source, sport, destination, dport over their natural IPv4 ranges.
    static DomainSpec five_tuple();

    std::size_t arity() const noexcept { return attributes_.size(); }
    const std::vector<Attribute>& attributes() const noexcept { return attributes_; }
    const Attribute& operator[](std::size_t k) const { return attributes_.at(k); }
    std::optional<std::size_t> index_of(std::string_view name) const;

    // The box that matches every packet ("any" on every attribute).
    Box full_box() const;

    // Total packet count, or nullopt when it does not fit in 64 bits.
    std::optional<std::uint64_t> packet_count() const noexcept;

    bool contains(const Box& box) const noexcept;
    bool contains(std::span<const Value> packet) const noexcept;
    // Throws ArityError / DomainError.
    void check(const Box& box) const;
    void check(std::span<const Value> packet) const;

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

private:
    std::vector<Attribute> attributes_;
};

// A conjunctive condition term: one interval per attribute.
class Box {
public:
    Box() = default;
    explicit Box(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {}
    Box(std::initializer_list<Interval> intervals) : intervals_(intervals) {}

    std::size_t arity() const noexcept { return intervals_.size(); }
    const Interval& operator[](std::size_t k) const { return intervals_[k]; }
    const std::vector<Interval>& intervals() const noexcept { return intervals_; }

    bool contains(std::span<const Value> packet) const noexcept;
    bool contains(const Box& other) const noexcept;
    std::uint64_t volume() const noexcept;

    friend bool operator==(const Box&, const Box&) = default;

private:
    std::vector<Interval> intervals_;
};

// Pairwise-disjoint boxes in generation order; empty means the empty set.
using BoxSet = std::vector<Box>;

// Throws ArityError when the boxes have different arity.
bool intersects(const Box& a, const Box& b);
std::optional<Box> intersect(const Box& a, const Box& b);

// b \ a as a slab decomposition: slab k keeps attributes before k at a∩b,
// attribute k at each interval of b_k - a_k, and attributes after k at b.
// Returns {b} when the boxes are disjoint. At most 2 * arity boxes.
BoxSet subtract(const Box& b, const Box& a);

bool pairwise_disjoint(std::span<const Box> boxes);

std::string to_string(const Box& box);

} // namespace fwaudit

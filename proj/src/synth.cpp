#include "fwaudit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>

namespace fwaudit {

GeneratorProfile GeneratorProfile::named(std::string_view name, std::uint64_t seed)
{
    GeneratorProfile p;
    p.name = std::string(name);
    p.seed = seed;
    if (name == "beginner")
        p.overlap_probability = 0.05;
    else if (name == "intermediate")
        p.overlap_probability = 0.475;
    else if (name == "expert")
        p.overlap_probability = 0.90;
    else
        throw std::invalid_argument("unknown profile '" + std::string(name) +
                                    "' (expected beginner, intermediate or expert)");
    return p;
}

namespace {

// Small portable sampling helpers; std::*_distribution output differs
// between standard libraries, which would break cross-platform determinism.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    // Uniform in [lo, hi].
    Value uniform(Value lo, Value hi)
    {
        const auto span = static_cast<unsigned __int128>(hi - lo) + 1;
        const auto r = static_cast<unsigned __int128>(rng_()) * span;
        return lo + static_cast<Value>(r >> 64);
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<Value>(n) - 1)); }

    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 rng_;
};

Interval clamp_to(const Interval& range, Value lo, Value hi)
{
    return {std::max(range.lo(), lo), std::min(range.hi(), hi)};
}

Box derived_box(Sampler& s, const Box& parent, const DomainSpec& domain)
{
    std::vector<Interval> ivs;
    ivs.reserve(parent.arity());
    for (std::size_t k = 0; k < parent.arity(); ++k) {
        const Interval& p = parent[k];
        if (s.chance(0.5)) {
            ivs.push_back(p);
            continue;
        }
        const Value anchor = s.uniform(p.lo(), p.hi());
        const Value reach = std::max<Value>(1, static_cast<Value>(p.size() / 2));
        ivs.push_back(clamp_to(domain[k].range, anchor - s.uniform(0, reach), anchor + s.uniform(0, reach)));
    }
    return Box(std::move(ivs));
}

bool covered(const std::vector<Box>& boxes, const std::vector<Value>& q)
{
    return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(q); });
}

// Grows a box around an unmatched packet, then trims it away from every
// earlier box it meets. Each trim keeps the seed packet, which lies outside
// the earlier box on at least one attribute.
std::optional<Box> fresh_box(Sampler& s, const std::vector<Box>& existing, const DomainSpec& domain)
{
    const std::size_t p = domain.arity();
    std::vector<Value> seed(p);
    bool found = false;
    for (int attempt = 0; attempt < 64 && !found; ++attempt) {
        for (std::size_t k = 0; k < p; ++k)
            seed[k] = s.uniform(domain[k].range.lo(), domain[k].range.hi());
        found = !covered(existing, seed);
    }
    if (!found)
        return std::nullopt;

    std::vector<Value> lo(p), hi(p);
    for (std::size_t k = 0; k < p; ++k) {
        const auto& range = domain[k].range;
        // Extent between 1/256 and 1/4 of the attribute range, log-uniform.
        const double frac = std::exp2(-2.0 - 6.0 * s.unit());
        const Value reach = static_cast<Value>(static_cast<double>(range.size()) * frac / 2.0);
        lo[k] = std::max(range.lo(), seed[k] - s.uniform(0, reach));
        hi[k] = std::min(range.hi(), seed[k] + s.uniform(0, reach));
    }

    std::vector<std::size_t> cuts;
    for (const auto& other : existing) {
        bool meets = true;
        for (std::size_t k = 0; k < p && meets; ++k)
            meets = !(hi[k] < other[k].lo() || other[k].hi() < lo[k]);
        if (!meets)
            continue;
        cuts.clear();
        for (std::size_t k = 0; k < p; ++k)
            if (!other[k].contains(seed[k]))
                cuts.push_back(k);
        const std::size_t k = cuts[s.index(cuts.size())];
        if (other[k].hi() < seed[k])
            lo[k] = std::max(lo[k], other[k].hi() + 1);
        else
            hi[k] = std::min(hi[k], other[k].lo() - 1);
    }

    std::vector<Interval> ivs;
    ivs.reserve(p);
    for (std::size_t k = 0; k < p; ++k)
        ivs.emplace_back(lo[k], hi[k]);
    return Box(std::move(ivs));
}

} // namespace

Ruleset generate(const GeneratorProfile& profile, std::size_t n, const DomainSpec& domain)
{
    Sampler s(profile.seed);
    Ruleset out(domain);
    std::vector<Box> boxes;
    boxes.reserve(n);

    for (std::size_t i = 0; i < n; ++i) {
        std::optional<Box> box;
        const bool derive = i > 0 && s.chance(profile.overlap_probability);
        if (!derive)
            box = fresh_box(s, boxes, domain);
        if (!box)
            box = derived_box(s, boxes[s.index(boxes.size())], domain);
        const Decision d = s.chance(profile.decision_bias) ? Decision::accept : Decision::deny;
        out.rules.emplace_back(static_cast<Position>(i + 1), *box, d);
        boxes.push_back(std::move(*box));
    }
    return out;
}

Ruleset worst_case_family(std::size_t n, std::size_t p)
{
    if (n < 2 || p < 2)
        throw std::invalid_argument("worst-case family needs n >= 2 and p >= 2");
    std::vector<Attribute> attrs;
    for (std::size_t k = 0; k < p; ++k)
        attrs.push_back({"a" + std::to_string(k + 1), {0, static_cast<Value>(10 * n)}});
    Ruleset out{DomainSpec(std::move(attrs))};
    for (std::size_t i = 1; i <= n; ++i) {
        const Value corner = static_cast<Value>(10 * i);
        out.rules.emplace_back(static_cast<Position>(i), Box(std::vector<Interval>(p, Interval{0, corner})),
                               i % 2 ? Decision::accept : Decision::deny);
    }
    return out;
}

std::size_t worst_case_bound(std::size_t n, std::size_t p) noexcept
{
    constexpr auto kMax = std::numeric_limits<std::size_t>::max();
    std::size_t total = 0;
    std::size_t term = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > kMax - term)
            return kMax;
        total += term;
        if (i + 1 < n) {
            if (term > kMax / p)
                return kMax;
            term *= p;
        }
    }
    return total;
}

} // namespace fwaudit

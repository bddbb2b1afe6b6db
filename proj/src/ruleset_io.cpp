#include "fwaudit/ruleset_io.hpp"

#include <charconv>
#include <cstdint>
#include <sstream>

namespace fwaudit {

namespace {

constexpr Value kAddrMax = 0xFFFFFFFFLL;

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

// Splits on `sep` outside square brackets.
std::vector<std::string_view> split_top_level(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '[')
            ++depth;
        else if (s[i] == ']')
            --depth;
        else if (s[i] == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

std::optional<Value> parse_integer(std::string_view s)
{
    Value v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        return std::nullopt;
    return v;
}

std::optional<Value> parse_octet(std::string_view s)
{
    if (s.empty() || s.size() > 3)
        return std::nullopt;
    auto v = parse_integer(s);
    if (!v || *v < 0 || *v > 255)
        return std::nullopt;
    return v;
}

std::optional<Value> parse_dotted_quad(std::string_view s)
{
    Value addr = 0;
    std::size_t start = 0;
    for (int i = 0; i < 4; ++i) {
        const auto dot = i < 3 ? s.find('.', start) : s.size();
        if (dot == std::string_view::npos)
            return std::nullopt;
        auto octet = parse_octet(s.substr(start, dot - start));
        if (!octet)
            return std::nullopt;
        addr = (addr << 8) | *octet;
        start = dot + 1;
    }
    return addr;
}

std::optional<Value> protocol_number(std::string_view s)
{
    if (s == "icmp")
        return 1;
    if (s == "tcp")
        return 6;
    if (s == "udp")
        return 17;
    return std::nullopt;
}

std::optional<std::string_view> protocol_name(Value v)
{
    switch (v) {
    case 1:
        return "icmp";
    case 6:
        return "tcp";
    case 17:
        return "udp";
    default:
        return std::nullopt;
    }
}

bool is_protocol(const Attribute& attr)
{
    return attr.name == "protocol" || attr.name == "proto";
}

bool is_address(const Attribute& attr)
{
    return attr.range == Interval{0, kAddrMax};
}

struct Located {
    std::size_t line;
};

// One scalar: integer, dotted quad, or protocol name.
Value parse_scalar(std::string_view s, bool protocol, Located at)
{
    s = trim(s);
    if (auto v = parse_integer(s))
        return *v;
    if (auto v = parse_dotted_quad(s))
        return *v;
    if (protocol)
        if (auto v = protocol_number(s))
            return *v;
    throw ParseError(at.line, "cannot read value '" + std::string(s) + "'");
}

Interval make_interval(Value lo, Value hi, Located at)
{
    if (lo > hi)
        throw ValidationError(at.line, "range lower bound " + std::to_string(lo) + " exceeds upper bound " +
                                           std::to_string(hi));
    return {lo, hi};
}

// `[a,b]`, `a.b.c.[x,y]` or a scalar. `any` is handled by the caller.
Interval parse_range(std::string_view s, bool protocol, Located at)
{
    s = trim(s);
    if (s.empty())
        throw ParseError(at.line, "empty attribute value");

    if (s.back() == ']') {
        const auto open = s.find('[');
        if (open == std::string_view::npos)
            throw ParseError(at.line, "unbalanced ']' in '" + std::string(s) + "'");
        const auto prefix = s.substr(0, open);
        const auto body = s.substr(open + 1, s.size() - open - 2);
        const auto parts = split_top_level(body, ',');
        if (parts.size() != 2)
            throw ParseError(at.line, "range '" + std::string(s) + "' needs exactly two bounds");

        if (prefix.empty())
            return make_interval(parse_scalar(parts[0], protocol, at), parse_scalar(parts[1], protocol, at), at);

        // Table-style address range: the prefix fixes the first three octets.
        if (prefix.back() != '.')
            throw ParseError(at.line, "malformed address range '" + std::string(s) + "'");
        const auto lo_octet = parse_octet(parts[0]);
        const auto hi_octet = parse_octet(parts[1]);
        const auto lo_addr = parse_dotted_quad(std::string(prefix) + "0");
        if (!lo_octet || !hi_octet || !lo_addr)
            throw ParseError(at.line, "malformed address range '" + std::string(s) + "'");
        return make_interval(*lo_addr + *lo_octet, *lo_addr + *hi_octet, at);
    }

    const Value v = parse_scalar(s, protocol, at);
    return {v, v};
}

Interval parse_attribute(std::string_view s, const Attribute& attr, Located at)
{
    s = trim(s);
    if (s == "any" || s == "*")
        return attr.range;
    const auto iv = parse_range(s, is_protocol(attr), at);
    if (!attr.range.contains(iv))
        throw DomainError("line " + std::to_string(at.line) + ": " + attr.name + " value " + to_string(iv) +
                          " outside domain " + to_string(attr.range));
    return iv;
}

std::string format_address(Value v)
{
    std::string out;
    for (int shift = 24; shift >= 0; shift -= 8) {
        if (!out.empty())
            out += '.';
        out += std::to_string((v >> shift) & 0xFF);
    }
    return out;
}

std::string format_scalar(Value v, const Attribute& attr)
{
    if (is_address(attr))
        return format_address(v);
    if (is_protocol(attr))
        if (auto name = protocol_name(v))
            return std::string(*name);
    return std::to_string(v);
}

std::string format_attribute(const Interval& iv, const Attribute& attr)
{
    if (iv == attr.range)
        return "any";
    if (iv.lo() == iv.hi())
        return format_scalar(iv.lo(), attr);
    if (is_address(attr) && (iv.lo() >> 8) == (iv.hi() >> 8)) {
        const auto net = format_address(iv.lo() & ~Value{0xFF});
        return net.substr(0, net.size() - 1) + "[" + std::to_string(iv.lo() & 0xFF) + "," +
               std::to_string(iv.hi() & 0xFF) + "]";
    }
    return "[" + format_scalar(iv.lo(), attr) + "," + format_scalar(iv.hi(), attr) + "]";
}

struct Order {
    Position major = 0;
    std::optional<std::uint32_t> sub;
};

Order parse_order(std::string_view s, Located at)
{
    s = trim(s);
    const auto dot = s.find('.');
    auto read = [&](std::string_view part) -> std::uint64_t {
        auto v = parse_integer(part);
        if (!v || *v <= 0 || *v > 0xFFFFFFFFLL)
            throw ParseError(at.line, "order '" + std::string(s) + "' is not a positive integer");
        return static_cast<std::uint64_t>(*v);
    };
    Order o;
    o.major = static_cast<Position>(read(s.substr(0, dot)));
    if (dot != std::string_view::npos)
        o.sub = static_cast<std::uint32_t>(read(s.substr(dot + 1)));
    return o;
}

DomainSpec parse_domain_at(std::string_view text, Located at)
{
    text = trim(text);
    if (text == "5tuple" || text == "five-tuple" || text == "ipv4")
        return DomainSpec::five_tuple();

    std::vector<Attribute> attrs;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError(at.line, "domain entry '" + token + "' must look like name=[lo,hi]");
        const std::string name = token.substr(0, eq);
        const auto iv = parse_range(std::string_view(token).substr(eq + 1), false, at);
        attrs.push_back({name, iv});
    }
    if (attrs.empty())
        throw ParseError(at.line, "empty domain declaration");
    try {
        return DomainSpec(std::move(attrs));
    } catch (const DomainError& e) {
        throw ParseError(at.line, e.what());
    }
}

} // namespace

DomainSpec parse_domain(std::string_view text)
{
    return parse_domain_at(text, {1});
}

std::string format_domain(const DomainSpec& domain)
{
    std::string out;
    for (const auto& attr : domain.attributes()) {
        if (!out.empty())
            out += ' ';
        out += attr.name + "=[" + format_scalar(attr.range.lo(), attr) + "," + format_scalar(attr.range.hi(), attr) +
               "]";
    }
    return out;
}

Ruleset parse_ruleset(std::string_view text, const std::optional<DomainSpec>& fallback)
{
    std::optional<DomainSpec> domain;
    std::optional<Ruleset> result;
    std::optional<std::uint32_t> last_sub;
    std::size_t line_no = 0;

    auto ensure_ruleset = [&]() -> Ruleset& {
        if (!result)
            result.emplace(domain ? *domain : fallback ? *fallback : DomainSpec::five_tuple());
        return *result;
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const Located at{line_no};

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.starts_with("@domain")) {
            if (domain || result)
                throw ParseError(line_no, "@domain must appear once, before any rule");
            domain = parse_domain_at(line.substr(7), at);
            continue;
        }

        Ruleset& rs = ensure_ruleset();
        const auto fields = split_top_level(line, ',');
        const std::size_t p = rs.domain.arity();
        if (fields.size() != p + 2)
            throw ParseError(line_no, "expected " + std::to_string(p + 2) + " comma-separated fields, found " +
                                          std::to_string(fields.size()));

        const Order order = parse_order(fields.front(), at);
        const auto decision = parse_decision(fields.back());
        if (!decision)
            throw ParseError(line_no, "decision must be 'accept' or 'deny', found '" + std::string(fields.back()) + "'");

        std::vector<Interval> ivs;
        ivs.reserve(p);
        for (std::size_t k = 0; k < p; ++k)
            ivs.push_back(parse_attribute(fields[k + 1], rs.domain[k], at));

        const bool continues = !rs.rules.empty() && rs.rules.back().position == order.major;
        if (continues) {
            if (!order.sub || !last_sub || *order.sub != *last_sub + 1)
                throw ParseError(line_no, "order values must be strictly increasing");
            if (rs.rules.back().decision != *decision)
                throw ParseError(line_no, "boxes of rule " + std::to_string(order.major) +
                                              " disagree on the decision");
            rs.rules.back().condition.emplace_back(std::move(ivs));
        } else {
            if (!rs.rules.empty() && order.major <= rs.rules.back().position)
                throw ParseError(line_no, "order values must be strictly increasing");
            if (order.sub && *order.sub != 1)
                throw ParseError(line_no, "sub-indexed rule must start at .1");
            rs.rules.emplace_back(order.major, Box(std::move(ivs)), *decision);
        }
        last_sub = order.sub;
    }
    return std::move(ensure_ruleset());
}

std::string serialize_ruleset(const Ruleset& r)
{
    std::string out = "@domain " + format_domain(r.domain) + "\n";
    for (const auto& rule : r.rules) {
        const bool multi = rule.condition.size() > 1;
        for (std::size_t b = 0; b < rule.condition.size(); ++b) {
            out += std::to_string(rule.position);
            if (multi)
                out += "." + std::to_string(b + 1);
            for (std::size_t k = 0; k < r.domain.arity(); ++k)
                out += ", " + format_attribute(rule.condition[b][k], r.domain[k]);
            out += ", ";
            out += to_string(rule.decision);
            out += '\n';
        }
    }
    return out;
}

std::string describe_box(const Box& box, const DomainSpec& domain)
{
    std::string out;
    for (std::size_t k = 0; k < box.arity(); ++k) {
        if (box[k] == domain[k].range)
            continue;
        if (!out.empty())
            out += " and ";
        out += domain[k].name + " in " + format_attribute(box[k], domain[k]);
    }
    return "(" + (out.empty() ? std::string("any") : out) + ")";
}

std::string describe_rule(const Rule& rule, const DomainSpec& domain)
{
    std::string out = "R" + std::to_string(rule.position) + ": ";
    if (rule.condition.empty()) {
        out += "{}";
    } else if (rule.condition.size() == 1) {
        out += describe_box(rule.condition.front(), domain);
    } else {
        out += "{";
        for (std::size_t b = 0; b < rule.condition.size(); ++b) {
            if (b)
                out += ", ";
            out += describe_box(rule.condition[b], domain);
        }
        out += "}";
    }
    out += " -> ";
    out += to_string(rule.decision);
    return out;
}

} // namespace fwaudit

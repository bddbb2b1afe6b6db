#include "cli.hpp"

#include "fwaudit/audit.hpp"
#include "fwaudit/bench.hpp"
#include "fwaudit/error.hpp"
#include "fwaudit/oracle.hpp"
#include "fwaudit/ruleset_io.hpp"
#include "fwaudit/synth.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace fwaudit::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, std::istream& in)
{
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw UsageError("cannot read '" + path + "'");
    buf << file.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw UsageError("cannot write '" + path + "'");
    file << text;
}

std::optional<DomainSpec> domain_flag(const std::string& text)
{
    if (text.empty())
        return std::nullopt;
    return parse_domain(text);
}

std::string describe_packet(const Packet& q, const DomainSpec& domain)
{
    std::string out;
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (k)
            out += ", ";
        out += domain[k].name + "=" + std::to_string(q[k]);
    }
    return out;
}

struct AuditOptions {
    std::string input;
    std::string algorithm = "complete";
    std::string format = "text";
    std::string output = "-";
    std::string domain;
};

int cmd_audit(const AuditOptions& o, std::istream& in, std::ostream& out)
{
    const auto text = read_input(o.input, in);
    const auto rules = parse_ruleset(text, domain_flag(o.domain));
    const auto algorithm = o.algorithm == "detection" ? Algorithm::detection : Algorithm::complete;
    const ReportDocument doc(audit(rules, algorithm), input_digest(text));
    write_output(o.output, emit_report(doc, o.format == "json" ? ReportFormat::json : ReportFormat::text), out);
    return exit_status_hint(doc.report) == 0 ? kClean : kFindings;
}

struct RewriteOptions {
    std::string input;
    std::string mode = "positive";
    std::string output = "-";
    std::string domain;
};

int cmd_rewrite(const RewriteOptions& o, std::istream& in, std::ostream& out)
{
    const auto rules = parse_ruleset(read_input(o.input, in), domain_flag(o.domain));
    const auto mode = o.mode == "negative" ? RewriteMode::negative : RewriteMode::positive;
    const auto rewritten = rewrite(complete_detection(rules).transformed, mode);
    write_output(o.output, serialize_ruleset(rewritten), out);
    return kClean;
}

struct CheckOptions {
    std::string original;
    std::string transformed;
    bool exhaustive = false;
    std::uint64_t samples = 0;
    std::uint64_t seed = 1;
    std::uint64_t budget = kExhaustiveBudget;
    std::string policy = "none";
    std::string domain;
};

int cmd_check(const CheckOptions& o, std::istream& in, std::ostream& out)
{
    const auto fallback = domain_flag(o.domain);
    const auto a = parse_ruleset(read_input(o.original, in), fallback);
    const auto b = parse_ruleset(read_input(o.transformed, in), fallback);
    if (!(a.domain == b.domain))
        throw UsageError("the two rule files declare different domains");

    const DefaultPolicy policy = o.policy == "accept" ? DefaultPolicy::accept
                                 : o.policy == "deny" ? DefaultPolicy::deny
                                                      : DefaultPolicy::none;
    const bool sampled = o.samples > 0 && !o.exhaustive;
    const auto result = sampled ? sample_equivalent(a, b, o.samples, o.seed, policy)
                                : equivalent(a, b, policy, o.budget);

    if (result.equivalent) {
        out << "equivalent (" << result.packets_checked << " packets" << (sampled ? " sampled" : " checked")
            << ")\n";
        return kClean;
    }
    out << "not equivalent\ncounterexample: " << describe_packet(*result.counterexample, a.domain)
        << "\n  original: " << to_string(result.left) << "\n  transformed: " << to_string(result.right) << "\n";
    return kFindings;
}

struct GenOptions {
    std::string profile;
    std::size_t count = 0;
    std::uint64_t seed = 1;
    std::string domain;
    std::string output = "-";
    std::optional<double> overlap;
    std::optional<double> accept_bias;
};

int cmd_gen(const GenOptions& o, std::ostream& out)
{
    auto profile = GeneratorProfile::named(o.profile, o.seed);
    if (o.overlap)
        profile.overlap_probability = *o.overlap;
    if (o.accept_bias)
        profile.decision_bias = *o.accept_bias;
    const auto domain = o.domain.empty() ? DomainSpec::five_tuple() : parse_domain(o.domain);
    write_output(o.output, serialize_ruleset(generate(profile, o.count, domain)), out);
    return kClean;
}

struct BenchOptions {
    std::string config;
    std::vector<std::string> algorithms;
    std::vector<std::string> profiles;
    std::vector<std::size_t> sizes;
    std::optional<std::size_t> seeds;
    std::vector<std::string> worst_cases;
    std::string domain;
    bool parallel = false;
    std::string output = "-";
};

int cmd_bench(const BenchOptions& o, std::istream& in, std::ostream& out)
{
    BenchConfig cfg;
    if (!o.config.empty())
        cfg = parse_bench_config(read_input(o.config, in));
    if (!o.algorithms.empty()) {
        cfg.algorithms.clear();
        for (const auto& a : o.algorithms)
            cfg.algorithms.push_back(a == "detection" ? Algorithm::detection : Algorithm::complete);
    }
    if (!o.profiles.empty()) {
        for (const auto& p : o.profiles)
            GeneratorProfile::named(p);
        cfg.profiles = o.profiles;
    }
    if (!o.sizes.empty())
        cfg.sizes = o.sizes;
    if (o.seeds)
        cfg.seeds = *o.seeds;
    if (!o.domain.empty())
        cfg.domain = parse_domain(o.domain);
    for (const auto& wc : o.worst_cases) {
        std::size_t n = 0, p = 0;
        char sep = 0;
        std::istringstream ss(wc);
        if (!(ss >> n >> sep >> p) || sep != ':')
            throw UsageError("--worst-case expects n:p, got '" + wc + "'");
        cfg.worst_cases.emplace_back(n, p);
    }
    cfg.parallel = cfg.parallel || o.parallel;
    const auto records = bench(cfg);
    write_output(o.output, to_csv(records), out);
    return kClean;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Firewall ruleset auditor: shadowing/redundancy detection and disjoint rewriting", "fwaudit"};
    app.require_subcommand(1, 1);

    const std::vector<std::string> algorithms{"detection", "complete"};
    const std::vector<std::string> formats{"json", "text"};

    AuditOptions audit_opts;
    auto* audit_cmd = app.add_subcommand("audit", "Report shadowed and redundant rules");
    audit_cmd->add_option("input", audit_opts.input, "Rule file ('-' for stdin)")->required();
    audit_cmd->add_option("--algorithm", audit_opts.algorithm, "detection or complete")
        ->check(CLI::IsMember(algorithms));
    audit_cmd->add_option("--format", audit_opts.format, "json or text")->check(CLI::IsMember(formats));
    audit_cmd->add_option("-o,--output", audit_opts.output, "Report destination ('-' for stdout)");
    audit_cmd->add_option("--domain", audit_opts.domain, "Domain used when the file has no @domain header");

    RewriteOptions rewrite_opts;
    auto* rewrite_cmd = app.add_subcommand("rewrite", "Audit, then keep only accept (positive) or deny (negative) rules");
    rewrite_cmd->add_option("input", rewrite_opts.input, "Rule file ('-' for stdin)")->required();
    rewrite_cmd->add_option("--mode", rewrite_opts.mode, "positive (default deny) or negative (default accept)")
        ->check(CLI::IsMember({"positive", "negative"}));
    rewrite_cmd->add_option("-o,--output", rewrite_opts.output, "Rule file destination ('-' for stdout)");
    rewrite_cmd->add_option("--domain", rewrite_opts.domain, "Domain used when the file has no @domain header");

    CheckOptions check_opts;
    auto* check_cmd = app.add_subcommand("check", "Compare two rule files packet by packet");
    check_cmd->add_option("original", check_opts.original, "Reference rule file")->required();
    check_cmd->add_option("transformed", check_opts.transformed, "Rule file to compare")->required();
    auto* exhaustive = check_cmd->add_flag("--exhaustive", check_opts.exhaustive, "Enumerate every packet (default)");
    check_cmd->add_option("--samples", check_opts.samples, "Compare this many random packets instead")
        ->excludes(exhaustive);
    check_cmd->add_option("--seed", check_opts.seed, "Sampling seed");
    check_cmd->add_option("--budget", check_opts.budget, "Largest domain enumerated exhaustively");
    check_cmd->add_option("--default-policy", check_opts.policy, "Outcome of unmatched packets: none, accept or deny")
        ->check(CLI::IsMember({"none", "accept", "deny"}));
    check_cmd->add_option("--domain", check_opts.domain, "Domain used when a file has no @domain header");

    GenOptions gen_opts;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic ruleset");
    gen_cmd->add_option("--profile", gen_opts.profile, "beginner, intermediate or expert")->required();
    gen_cmd->add_option("--count", gen_opts.count, "Number of rules")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen_opts.seed, "Generator seed");
    gen_cmd->add_option("--domain", gen_opts.domain, "Attribute domain, e.g. 'source=[0,63] destination=[0,63]'");
    gen_cmd->add_option("--overlap", gen_opts.overlap, "Override the profile's overlap probability")
        ->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--accept-bias", gen_opts.accept_bias, "Probability that a rule accepts")
        ->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("-o,--output", gen_opts.output, "Rule file destination ('-' for stdout)");

    BenchOptions bench_opts;
    auto* bench_cmd = app.add_subcommand("bench", "Time audits over synthetic rulesets and write CSV");
    bench_cmd->add_option("--config", bench_opts.config, "JSON bench configuration");
    bench_cmd->add_option("--algorithms", bench_opts.algorithms, "detection and/or complete")
        ->check(CLI::IsMember(algorithms));
    bench_cmd->add_option("--profiles", bench_opts.profiles, "Officer profiles");
    bench_cmd->add_option("--sizes", bench_opts.sizes, "Rule counts");
    bench_cmd->add_option("--seeds", bench_opts.seeds, "Seeds per cell");
    bench_cmd->add_option("--worst-case", bench_opts.worst_cases, "Worst-case family cells as n:p");
    bench_cmd->add_option("--domain", bench_opts.domain, "Attribute domain for generated rulesets");
    bench_cmd->add_flag("--parallel", bench_opts.parallel, "Run cells on parallel workers");
    bench_cmd->add_option("-o,--output", bench_opts.output, "CSV destination ('-' for stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kClean : kUsage;
    }

    try {
        if (audit_cmd->parsed())
            return cmd_audit(audit_opts, in, out);
        if (rewrite_cmd->parsed())
            return cmd_rewrite(rewrite_opts, in, out);
        if (check_cmd->parsed())
            return cmd_check(check_opts, in, out);
        if (gen_cmd->parsed())
            return cmd_gen(gen_opts, out);
        return cmd_bench(bench_opts, in, out);
    } catch (const std::exception& e) {
        err << "fwaudit: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace fwaudit::cli

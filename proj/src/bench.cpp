#include "fwaudit/bench.hpp"

#include "fwaudit/ruleset_io.hpp"

#include "json.hpp"

#include <cstdio>
#include <stdexcept>

namespace fwaudit {

namespace {

Algorithm algorithm_from(const std::string& name)
{
    if (name == "detection")
        return Algorithm::detection;
    if (name == "complete")
        return Algorithm::complete;
    throw std::invalid_argument("unknown algorithm '" + name + "' (expected detection or complete)");
}

struct Cell {
    Algorithm algorithm;
    std::string profile;
    std::size_t n = 0;
    std::size_t p = 0;
    std::uint64_t seed = 0;
    bool worst_case = false;
};

} // namespace

BenchConfig parse_bench_config(std::string_view json)
{
    const auto j = nlohmann::json::parse(json);
    BenchConfig cfg;
    if (j.contains("algorithms")) {
        cfg.algorithms.clear();
        for (const auto& a : j["algorithms"])
            cfg.algorithms.push_back(algorithm_from(a.get<std::string>()));
    }
    if (j.contains("profiles")) {
        cfg.profiles.clear();
        for (const auto& p : j["profiles"]) {
            const auto name = p.get<std::string>();
            GeneratorProfile::named(name);
            cfg.profiles.push_back(name);
        }
    }
    if (j.contains("sizes"))
        cfg.sizes = j["sizes"].get<std::vector<std::size_t>>();
    if (j.contains("seeds"))
        cfg.seeds = j["seeds"].get<std::size_t>();
    if (j.contains("first_seed"))
        cfg.first_seed = j["first_seed"].get<std::uint64_t>();
    if (j.contains("domain"))
        cfg.domain = parse_domain(j["domain"].get<std::string>());
    if (j.contains("worst_cases"))
        for (const auto& c : j["worst_cases"])
            cfg.worst_cases.emplace_back(c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>());
    if (j.contains("parallel"))
        cfg.parallel = j["parallel"].get<bool>();
    return cfg;
}

BenchRecord measure(Algorithm algorithm, const Ruleset& r, std::string profile, std::uint64_t seed)
{
    const auto report = audit(r, algorithm);
    BenchRecord rec;
    rec.algorithm = std::string(to_string(algorithm));
    rec.profile = std::move(profile);
    rec.n = r.size();
    rec.p = r.domain.arity();
    rec.seed = seed;
    rec.elapsed_ms = report.stats.elapsed_ms;
    rec.out_rules = report.stats.output_rules;
    rec.out_boxes = report.stats.output_boxes;
    rec.peak_boxes = report.stats.peak_boxes;
    rec.shadowing_warnings = report.count(WarningKind::shadowing);
    rec.redundancy_warnings = report.count(WarningKind::redundancy);
    return rec;
}

std::vector<BenchRecord> bench(const BenchConfig& config)
{
    std::vector<Cell> cells;
    for (const auto& profile : config.profiles)
        for (auto n : config.sizes)
            for (std::size_t s = 0; s < config.seeds; ++s)
                for (auto alg : config.algorithms)
                    cells.push_back({alg, profile, n, config.domain.arity(), config.first_seed + s, false});
    for (const auto& [n, p] : config.worst_cases)
        for (auto alg : config.algorithms)
            cells.push_back({alg, "worst-case", n, p, 0, true});

    std::vector<BenchRecord> records(cells.size());
    const auto count = static_cast<std::ptrdiff_t>(cells.size());
    // Generation happens before the audit's clock starts; the timing in each
    // record covers the audit alone.
#pragma omp parallel for schedule(dynamic, 1) if (config.parallel)
    for (std::ptrdiff_t c = 0; c < count; ++c) {
        const Cell& cell = cells[static_cast<std::size_t>(c)];
        const Ruleset r = cell.worst_case
                              ? worst_case_family(cell.n, cell.p)
                              : generate(GeneratorProfile::named(cell.profile, cell.seed), cell.n, config.domain);
        records[static_cast<std::size_t>(c)] = measure(cell.algorithm, r, cell.profile, cell.seed);
    }
    return records;
}

std::string to_csv(std::span<const BenchRecord> records)
{
    std::string out(kBenchCsvHeader);
    out += '\n';
    char elapsed[64];
    for (const auto& r : records) {
        std::snprintf(elapsed, sizeof elapsed, "%.4f", r.elapsed_ms);
        out += r.algorithm + "," + r.profile + "," + std::to_string(r.n) + "," + std::to_string(r.p) + "," +
               std::to_string(r.seed) + "," + elapsed + "," + std::to_string(r.out_rules) + "," +
               std::to_string(r.out_boxes) + "," + std::to_string(r.shadowing_warnings) + "," +
               std::to_string(r.redundancy_warnings) + "\n";
    }
    return out;
}

} // namespace fwaudit

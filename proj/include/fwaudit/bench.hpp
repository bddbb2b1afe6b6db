#pragma once

#include "fwaudit/audit.hpp"
#include "fwaudit/synth.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fwaudit {

inline constexpr std::string_view kBenchCsvHeader =
    "algorithm,profile,n,p,seed,elapsed_ms,out_rules,out_boxes,shadowing_warnings,redundancy_warnings";

struct BenchRecord {
    std::string algorithm;
    std::string profile;
    std::size_t n = 0;
    std::size_t p = 0;
    std::uint64_t seed = 0;
    double elapsed_ms = 0.0;
    std::size_t out_rules = 0;
    std::size_t out_boxes = 0;
    // Not part of the CSV; kept for the memory proxy.
    std::size_t peak_boxes = 0;
    std::size_t shadowing_warnings = 0;
    std::size_t redundancy_warnings = 0;
};

struct BenchConfig {
    std::vector<Algorithm> algorithms{Algorithm::detection, Algorithm::complete};
    std::vector<std::string> profiles{"beginner", "intermediate", "expert"};
    std::vector<std::size_t> sizes;
    std::size_t seeds = 1;
    std::uint64_t first_seed = 1;
    DomainSpec domain = DomainSpec::five_tuple();
    // (n, p) cells of the nested worst-case family, profile "worst-case".
    std::vector<std::pair<std::size_t, std::size_t>> worst_cases;
    // Run cells on separate OpenMP workers; each cell stays on one worker.
    bool parallel = false;
};

// JSON object with any of: algorithms, profiles, sizes, seeds, first_seed,
// domain (rule-file @domain syntax), worst_cases ([[n,p], ...]), parallel.
// Throws std::invalid_argument on unknown names.
BenchConfig parse_bench_config(std::string_view json);

// Cells in order: profiles x sizes x seeds x algorithms, then worst cases x
// algorithms. Output order is this cell order whatever the execution order.
std::vector<BenchRecord> bench(const BenchConfig& config);

BenchRecord measure(Algorithm algorithm, const Ruleset& r, std::string profile, std::uint64_t seed);

std::string to_csv(std::span<const BenchRecord> records);

} // namespace fwaudit

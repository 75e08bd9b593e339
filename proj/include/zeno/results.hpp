// results.hpp — sweep execution and machine-readable result emission
// (CSV + JSON) with byte-stable formatting.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zeno/config.hpp"

namespace zeno {

// One sweep point. Fields that do not apply to the protocol stay unset and are
// emitted as empty CSV cells / JSON nulls.
struct ResultRow {
    std::string protocol;
    std::string preset; // empty for explicit matrices
    long long n0 = 0;
    std::optional<long long> num_measurements; // N
    std::optional<double> time;                // t
    std::optional<double> rate;                // f
    std::optional<double> accuracy;            // delta_a
    std::string log_base;
    std::string distribution;
    std::string zeno_formula;
    double survival_probability = 0.0;
    double entropy_nats = 0.0;
    double entropy_bits = 0.0;
    std::optional<double> total_weight; // unnormalized modes only
    std::string validity_flag;          // "ok" | "unreliable" | "" (not applicable)

    bool operator==(const ResultRow&) const = default;
};

struct RunSummary {
    double min_entropy_nats = 0.0;
    double max_entropy_nats = 0.0;
    double threshold = 0.0;
    // Index into rows of the first sweep point with entropy_nats < threshold.
    std::optional<std::size_t> first_below_threshold;

    bool operator==(const RunSummary&) const = default;
};

struct RunResult {
    std::vector<ResultRow> rows;
    RunSummary summary;
};

// Execute every sweep point of the config, in fixed nesting order
// N → t → f → delta_a with axis values in config order. Deterministic:
// identical configs produce identical rows (Monte Carlo included).
RunResult run_experiment(const ExperimentConfig& cfg);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

extern const char* const kCsvHeader;

std::string results_to_csv(const std::vector<ResultRow>& rows);
std::string run_result_to_json(const RunResult& result);

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
void emit_json(const RunResult& result, const std::filesystem::path& path);

// Inverse of results_to_csv; numeric fields round-trip losslessly.
std::vector<ResultRow> parse_results_csv(const std::string& text);

} // namespace zeno

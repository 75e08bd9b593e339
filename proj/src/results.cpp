#include "zeno/results.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace zeno {

namespace {

using Json = nlohmann::ordered_json;

std::string format_optional(const std::optional<double>& x) {
    return x ? format_double(*x) : std::string();
}

std::string format_optional(const std::optional<long long>& x) {
    return x ? std::to_string(*x) : std::string();
}

Json json_value(const std::optional<double>& x) {
    return x ? Json(*x) : Json(nullptr);
}

Json json_value(const std::optional<long long>& x) {
    return x ? Json(*x) : Json(nullptr);
}

Json row_to_json(const ResultRow& row) {
    Json j = Json::object();
    j["protocol"] = row.protocol;
    j["preset"] = row.preset;
    j["n0"] = row.n0;
    j["N"] = json_value(row.num_measurements);
    j["t"] = json_value(row.time);
    j["f"] = json_value(row.rate);
    j["delta_a"] = json_value(row.accuracy);
    j["log_base"] = row.log_base;
    j["distribution"] = row.distribution;
    j["zeno_formula"] = row.zeno_formula;
    j["survival_probability"] = row.survival_probability;
    j["entropy_nats"] = row.entropy_nats;
    j["entropy_bits"] = row.entropy_bits;
    j["total_weight"] = json_value(row.total_weight);
    j["validity_flag"] = row.validity_flag;
    return j;
}

double parse_double_field(const std::string& field, const char* name) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(std::string("results csv: bad ") + name + " value '" + field + "'");
    }
    return value;
}

long long parse_int_field(const std::string& field, const char* name) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(std::string("results csv: bad ") + name + " value '" + field + "'");
    }
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

// Shared row skeleton for one run.
ResultRow base_row(const ExperimentConfig& cfg) {
    ResultRow row;
    row.protocol = protocol_name(cfg.protocol);
    row.preset = cfg.preset_name;
    row.n0 = cfg.n0;
    row.log_base = log_base_name(cfg.modes.log_base);
    row.distribution = distribution_name(cfg.modes.distribution);
    row.zeno_formula = zeno_formula_name(cfg.modes.zeno_formula);
    return row;
}

void fill_entropy(ResultRow& row, double nats) {
    row.entropy_nats = nats;
    row.entropy_bits = nats / std::numbers::ln2;
}

std::vector<ResultRow> run_free(const ExperimentConfig& cfg, const Hamiltonian& h,
                                const Observable& a) {
    std::vector<ResultRow> rows;
    for (double t : cfg.sweep_t) {
        ResultRow row = base_row(cfg);
        row.time = t;
        if (cfg.modes.distribution == DistributionMode::Normalized) {
            const OutcomeDistribution dist = free_evolution_distribution(h, a, cfg.n0, t);
            row.survival_probability = dist.weights(cfg.n0);
            fill_entropy(row, shannon_entropy(dist).value);
        } else {
            const OutcomeDistribution family = free_survival_family(h, a, t);
            row.survival_probability = family.weights(cfg.n0);
            row.total_weight = family.total();
            fill_entropy(row, shannon_entropy(family).value);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ResultRow> run_zeno(const ExperimentConfig& cfg, const Hamiltonian& h,
                                const Observable& a) {
    std::vector<ResultRow> rows;
    for (long long n : cfg.sweep_n) {
        for (double t : cfg.sweep_t) {
            const ZenoSchedule schedule(t, n);
            ResultRow row = base_row(cfg);
            row.num_measurements = n;
            row.time = t;
            row.survival_probability =
                zeno_survival(h, a, cfg.n0, schedule, cfg.modes.zeno_formula);
            if (cfg.modes.distribution == DistributionMode::Normalized) {
                const OutcomeDistribution dist =
                    cfg.monte_carlo
                        ? monte_carlo_zeno(h, a, cfg.n0, schedule, cfg.monte_carlo->trials,
                                           static_cast<std::uint64_t>(cfg.monte_carlo->seed))
                        : zeno_chain_distribution(h, a, cfg.n0, schedule);
                fill_entropy(row, shannon_entropy(dist).value);
            } else {
                fill_entropy(row, zeno_entropy_asymptotic(h, a, schedule));
            }
            row.validity_flag =
                zeno_diagnostics(h, schedule).short_time_reliable ? "ok" : "unreliable";
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<ResultRow> run_continuous(const ExperimentConfig& cfg, const Hamiltonian& h,
                                      const Observable& a) {
    std::vector<ResultRow> rows;
    // The apparatus readout is pinned to the prepared eigenstate's eigenvalue.
    const double readout = a.outcome_value(cfg.n0);
    for (double t : cfg.sweep_t) {
        for (double f : cfg.sweep_f) {
            for (double delta_a : cfg.sweep_delta_a) {
                const MeasurementConfig mc(f, readout, delta_a);
                ResultRow row = base_row(cfg);
                row.time = t;
                row.rate = f;
                row.accuracy = delta_a;
                const OutcomeDistribution literal =
                    continuous_distribution(h, a, cfg.n0, mc, t, DistributionMode::PaperLiteral);
                row.survival_probability = literal.weights(cfg.n0);
                if (cfg.modes.distribution == DistributionMode::Normalized) {
                    fill_entropy(row, shannon_entropy(normalize(literal)).value);
                } else {
                    row.total_weight = literal.total();
                    fill_entropy(row, shannon_entropy(literal).value);
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

} // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
    const Hamiltonian h(cfg.hamiltonian);
    const Observable a(cfg.observable);

    RunResult result;
    switch (cfg.protocol) {
    case Protocol::Free:
        result.rows = run_free(cfg, h, a);
        break;
    case Protocol::Zeno:
        result.rows = run_zeno(cfg, h, a);
        break;
    case Protocol::Continuous:
        result.rows = run_continuous(cfg, h, a);
        break;
    }

    RunSummary& summary = result.summary;
    summary.threshold = cfg.threshold;
    if (result.rows.empty()) {
        return result;
    }
    summary.min_entropy_nats = result.rows.front().entropy_nats;
    summary.max_entropy_nats = result.rows.front().entropy_nats;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const double s = result.rows[i].entropy_nats;
        summary.min_entropy_nats = std::min(summary.min_entropy_nats, s);
        summary.max_entropy_nats = std::max(summary.max_entropy_nats, s);
        if (!summary.first_below_threshold && s < cfg.threshold) {
            summary.first_below_threshold = i;
        }
    }
    return result;
}

std::string format_double(double x) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
    if (ec != std::errc()) {
        throw NumericalFailure("format_double: conversion failed");
    }
    return std::string(buffer, ptr);
}

const char* const kCsvHeader =
    "protocol,preset,n0,N,t,f,delta_a,log_base,distribution,zeno_formula,"
    "survival_probability,entropy_nats,entropy_bits,total_weight,validity_flag";

std::string results_to_csv(const std::vector<ResultRow>& rows) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const ResultRow& row : rows) {
        out += row.protocol;
        out += ',';
        out += row.preset;
        out += ',';
        out += std::to_string(row.n0);
        out += ',';
        out += format_optional(row.num_measurements);
        out += ',';
        out += format_optional(row.time);
        out += ',';
        out += format_optional(row.rate);
        out += ',';
        out += format_optional(row.accuracy);
        out += ',';
        out += row.log_base;
        out += ',';
        out += row.distribution;
        out += ',';
        out += row.zeno_formula;
        out += ',';
        out += format_double(row.survival_probability);
        out += ',';
        out += format_double(row.entropy_nats);
        out += ',';
        out += format_double(row.entropy_bits);
        out += ',';
        out += format_optional(row.total_weight);
        out += ',';
        out += row.validity_flag;
        out += '\n';
    }
    return out;
}

std::string run_result_to_json(const RunResult& result) {
    Json doc = Json::object();
    Json rows = Json::array();
    for (const ResultRow& row : result.rows) {
        rows.push_back(row_to_json(row));
    }
    doc["rows"] = std::move(rows);

    Json summary = Json::object();
    summary["min_entropy_nats"] = result.summary.min_entropy_nats;
    summary["max_entropy_nats"] = result.summary.max_entropy_nats;
    summary["threshold"] = result.summary.threshold;
    if (result.summary.first_below_threshold) {
        const std::size_t i = *result.summary.first_below_threshold;
        Json first = row_to_json(result.rows[i]);
        first["row_index"] = i;
        summary["first_below_threshold"] = std::move(first);
    } else {
        summary["first_below_threshold"] = nullptr;
    }
    doc["summary"] = std::move(summary);
    return doc.dump(2) + "\n";
}

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file: " + path.string());
    }
    out << results_to_csv(rows);
    if (!out) {
        throw IoError("cannot write output file: " + path.string());
    }
}

void emit_json(const RunResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file: " + path.string());
    }
    out << run_result_to_json(result);
    if (!out) {
        throw IoError("cannot write output file: " + path.string());
    }
}

std::vector<ResultRow> parse_results_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("results csv: empty document");
    }
    if (line != kCsvHeader) {
        throw ParseError("results csv: unexpected header '" + line + "'");
    }
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 15) {
            throw ParseError("results csv: expected 15 fields, got " +
                             std::to_string(fields.size()));
        }
        ResultRow row;
        row.protocol = fields[0];
        row.preset = fields[1];
        row.n0 = parse_int_field(fields[2], "n0");
        if (!fields[3].empty()) {
            row.num_measurements = parse_int_field(fields[3], "N");
        }
        if (!fields[4].empty()) {
            row.time = parse_double_field(fields[4], "t");
        }
        if (!fields[5].empty()) {
            row.rate = parse_double_field(fields[5], "f");
        }
        if (!fields[6].empty()) {
            row.accuracy = parse_double_field(fields[6], "delta_a");
        }
        row.log_base = fields[7];
        row.distribution = fields[8];
        row.zeno_formula = fields[9];
        row.survival_probability = parse_double_field(fields[10], "survival_probability");
        row.entropy_nats = parse_double_field(fields[11], "entropy_nats");
        row.entropy_bits = parse_double_field(fields[12], "entropy_bits");
        if (!fields[13].empty()) {
            row.total_weight = parse_double_field(fields[13], "total_weight");
        }
        row.validity_flag = fields[14];
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace zeno

// config.hpp — experiment configuration: strict JSON schema parsing and
// validation for the CLI and the run pipeline.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zeno/continuous.hpp"
#include "zeno/entropy.hpp"
#include "zeno/linalg.hpp"
#include "zeno/zeno_dynamics.hpp"

namespace zeno {

enum class Protocol { Free, Zeno, Continuous };

struct ModeFlags {
    LogBase log_base = LogBase::Nats;
    DistributionMode distribution = DistributionMode::Normalized;
    ZenoFormula zeno_formula = ZenoFormula::Corrected;

    bool operator==(const ModeFlags&) const = default;
};

struct MonteCarloConfig {
    long long trials = 0;
    long long seed = 0;

    bool operator==(const MonteCarloConfig&) const = default;
};

// Parsed and validated experiment description.
//
// JSON schema (unknown keys rejected at every level):
//   system      {"preset": <name>[, "omega": <real>]}  — omega only for two-level-rabi
//               or {"hamiltonian": [[[re,im],...],...], "observable": [[[re,im],...],...]}
//   protocol    "free" | "zeno" | "continuous"
//   n0          preparation index into the sorted A eigenbasis
//   sweep       {"N": [...]} and/or {"t": [...]}, {"f": [...]}, {"delta_a": [...]};
//               free uses t; zeno uses N and t (t = total time); continuous
//               uses t, f and delta_a. Axes foreign to the protocol are rejected.
//   modes       {"log_base": "nats"|"bits", "distribution": "normalized"|"paper_literal",
//                "zeno_formula": "corrected"|"paper_literal"} (all optional)
//   monte_carlo {"trials": <int>, "seed": <int>} (optional, zeno only)
//   threshold   entropy threshold for the summary, nats (optional, default 0.01)
struct ExperimentConfig {
    std::string preset_name; // empty when matrices were given explicitly
    double preset_omega = 1.0;
    ComplexMatrix hamiltonian;
    ComplexMatrix observable;
    Protocol protocol = Protocol::Free;
    long long n0 = 0;
    std::vector<long long> sweep_n;
    std::vector<double> sweep_t;
    std::vector<double> sweep_f;
    std::vector<double> sweep_delta_a;
    ModeFlags modes;
    std::optional<MonteCarloConfig> monte_carlo;
    double threshold = 0.01;

    Index dim() const { return hamiltonian.rows(); }

    bool operator==(const ExperimentConfig& other) const;
};

// Parse a JSON document. Throws ParseError (malformed JSON), SchemaError
// (unknown key / wrong type), or ValidationError (non-Hermitian matrix, bad
// index, empty or foreign sweep axis, ...).
ExperimentConfig parse_config(const std::string& text);

// Read the file (IoError on failure), then parse_config.
ExperimentConfig load_config(const std::filesystem::path& path);

// Serialize back to the schema above; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

const char* protocol_name(Protocol p);
const char* log_base_name(LogBase b);
const char* distribution_name(DistributionMode m);
const char* zeno_formula_name(ZenoFormula f);

} // namespace zeno

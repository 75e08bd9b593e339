#include "zeno/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "zeno/presets.hpp"

namespace zeno {

namespace {

using Json = nlohmann::ordered_json;

void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                const std::string& context) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw SchemaError("config: unknown key '" + item.key() + "' in " + context);
        }
    }
}

const Json& require_key(const Json& obj, const char* key, const std::string& context) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError("config: missing key '" + std::string(key) + "' in " + context);
    }
    return *it;
}

double as_number(const Json& j, const std::string& context) {
    if (!j.is_number()) {
        throw SchemaError("config: " + context + " must be a number");
    }
    return j.get<double>();
}

long long as_integer(const Json& j, const std::string& context) {
    if (!j.is_number_integer()) {
        throw SchemaError("config: " + context + " must be an integer");
    }
    return j.get<long long>();
}

std::string as_string(const Json& j, const std::string& context) {
    if (!j.is_string()) {
        throw SchemaError("config: " + context + " must be a string");
    }
    return j.get<std::string>();
}

// Nested arrays of [re, im] pairs, row-major.
ComplexMatrix parse_matrix(const Json& j, const std::string& name) {
    if (!j.is_array() || j.empty()) {
        throw SchemaError("config: " + name + " must be a nonempty array of rows");
    }
    const auto rows = static_cast<Index>(j.size());
    ComplexMatrix m(rows, rows);
    for (Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != rows) {
            throw ValidationError("config: " + name + " row " + std::to_string(r) +
                                  " does not make the matrix square");
        }
        for (Index c = 0; c < rows; ++c) {
            const Json& entry = row[static_cast<std::size_t>(c)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number()) {
                throw SchemaError("config: " + name + "[" + std::to_string(r) + "][" +
                                  std::to_string(c) + "] must be a [re, im] pair");
            }
            m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    if (!all_finite(m)) {
        throw ValidationError("config: " + name + " has non-finite entries");
    }
    const double defect = hermiticity_defect(m);
    if (defect > tol::hermiticity) {
        throw ValidationError("config: " + name + " is not Hermitian (defect " +
                              std::to_string(defect) + ")");
    }
    return m;
}

std::vector<double> parse_real_axis(const Json& j, const std::string& name) {
    if (!j.is_array()) {
        throw SchemaError("config: sweep." + name + " must be an array");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const Json& v : j) {
        const double x = as_number(v, "sweep." + name + " entry");
        if (!std::isfinite(x)) {
            throw ValidationError("config: sweep." + name + " entries must be finite");
        }
        out.push_back(x);
    }
    return out;
}

std::vector<long long> parse_count_axis(const Json& j) {
    if (!j.is_array()) {
        throw SchemaError("config: sweep.N must be an array");
    }
    std::vector<long long> out;
    out.reserve(j.size());
    for (const Json& v : j) {
        const long long n = as_integer(v, "sweep.N entry");
        if (n < 1) {
            throw ValidationError("config: sweep.N entries must be >= 1");
        }
        out.push_back(n);
    }
    return out;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

bool ExperimentConfig::operator==(const ExperimentConfig& other) const {
    const auto same_matrix = [](const ComplexMatrix& x, const ComplexMatrix& y) {
        return x.rows() == y.rows() && x.cols() == y.cols() && (x - y).cwiseAbs().maxCoeff() == 0.0;
    };
    return preset_name == other.preset_name && preset_omega == other.preset_omega &&
           same_matrix(hamiltonian, other.hamiltonian) &&
           same_matrix(observable, other.observable) && protocol == other.protocol &&
           n0 == other.n0 && sweep_n == other.sweep_n && sweep_t == other.sweep_t &&
           sweep_f == other.sweep_f && sweep_delta_a == other.sweep_delta_a &&
           modes == other.modes && monte_carlo == other.monte_carlo &&
           threshold == other.threshold;
}

ExperimentConfig parse_config(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw SchemaError("config: top level must be an object");
    }
    check_keys(doc, {"system", "protocol", "n0", "sweep", "modes", "monte_carlo", "threshold"},
               "top level");

    ExperimentConfig cfg;

    // --- system ---
    const Json& system = require_key(doc, "system", "top level");
    if (!system.is_object()) {
        throw SchemaError("config: system must be an object");
    }
    if (system.contains("preset")) {
        check_keys(system, {"preset", "omega"}, "system");
        cfg.preset_name = as_string(system["preset"], "system.preset");
        if (system.contains("omega")) {
            if (cfg.preset_name != "two-level-rabi") {
                throw SchemaError("config: system.omega is only valid for the two-level-rabi "
                                  "preset");
            }
            cfg.preset_omega = as_number(system["omega"], "system.omega");
        }
        const Preset preset = make_preset(cfg.preset_name, cfg.preset_omega);
        cfg.hamiltonian = preset.hamiltonian;
        cfg.observable = preset.observable;
    } else {
        check_keys(system, {"hamiltonian", "observable"}, "system");
        cfg.hamiltonian = parse_matrix(require_key(system, "hamiltonian", "system"), "hamiltonian");
        cfg.observable = parse_matrix(require_key(system, "observable", "system"), "observable");
        if (cfg.hamiltonian.rows() != cfg.observable.rows()) {
            throw ValidationError("config: hamiltonian and observable dimensions differ");
        }
    }

    // --- protocol ---
    const std::string protocol = as_string(require_key(doc, "protocol", "top level"), "protocol");
    if (protocol == "free") {
        cfg.protocol = Protocol::Free;
    } else if (protocol == "zeno") {
        cfg.protocol = Protocol::Zeno;
    } else if (protocol == "continuous") {
        cfg.protocol = Protocol::Continuous;
    } else {
        throw ValidationError("config: protocol must be free, zeno or continuous, got '" +
                              protocol + "'");
    }

    // --- n0 ---
    cfg.n0 = as_integer(require_key(doc, "n0", "top level"), "n0");
    if (cfg.n0 < 0 || cfg.n0 >= cfg.dim()) {
        throw ValidationError("config: n0 = " + std::to_string(cfg.n0) + " outside [0, " +
                              std::to_string(cfg.dim()) + ")");
    }

    // --- sweep ---
    const Json& sweep = require_key(doc, "sweep", "top level");
    if (!sweep.is_object()) {
        throw SchemaError("config: sweep must be an object");
    }
    check_keys(sweep, {"N", "t", "f", "delta_a"}, "sweep");
    if (sweep.contains("N")) {
        cfg.sweep_n = parse_count_axis(sweep["N"]);
    }
    if (sweep.contains("t")) {
        cfg.sweep_t = parse_real_axis(sweep["t"], "t");
    }
    if (sweep.contains("f")) {
        cfg.sweep_f = parse_real_axis(sweep["f"], "f");
    }
    if (sweep.contains("delta_a")) {
        cfg.sweep_delta_a = parse_real_axis(sweep["delta_a"], "delta_a");
    }

    const auto require_axis = [&](bool present, const char* axis) {
        if (!present) {
            throw ValidationError(std::string("config: protocol '") + protocol +
                                  "' needs a nonempty sweep." + axis + " axis");
        }
    };
    const auto forbid_axis = [&](bool present, const char* axis) {
        if (present) {
            throw ValidationError(std::string("config: sweep.") + axis +
                                  " does not apply to protocol '" + protocol + "'");
        }
    };
    switch (cfg.protocol) {
    case Protocol::Free:
        require_axis(!cfg.sweep_t.empty(), "t");
        forbid_axis(!cfg.sweep_n.empty(), "N");
        forbid_axis(!cfg.sweep_f.empty(), "f");
        forbid_axis(!cfg.sweep_delta_a.empty(), "delta_a");
        break;
    case Protocol::Zeno:
        require_axis(!cfg.sweep_n.empty(), "N");
        require_axis(!cfg.sweep_t.empty(), "t");
        forbid_axis(!cfg.sweep_f.empty(), "f");
        forbid_axis(!cfg.sweep_delta_a.empty(), "delta_a");
        for (double t : cfg.sweep_t) {
            if (t <= 0.0) {
                throw ValidationError("config: zeno total times must be > 0");
            }
        }
        break;
    case Protocol::Continuous:
        require_axis(!cfg.sweep_t.empty(), "t");
        require_axis(!cfg.sweep_f.empty(), "f");
        require_axis(!cfg.sweep_delta_a.empty(), "delta_a");
        forbid_axis(!cfg.sweep_n.empty(), "N");
        for (double t : cfg.sweep_t) {
            if (t < 0.0) {
                throw ValidationError("config: continuous times must be >= 0");
            }
        }
        for (double f : cfg.sweep_f) {
            if (f < 0.0) {
                throw ValidationError("config: measurement rates f must be >= 0");
            }
        }
        for (double da : cfg.sweep_delta_a) {
            if (da <= 0.0) {
                throw ValidationError("config: accuracies delta_a must be > 0");
            }
        }
        break;
    }

    // --- modes ---
    if (doc.contains("modes")) {
        const Json& modes = doc["modes"];
        if (!modes.is_object()) {
            throw SchemaError("config: modes must be an object");
        }
        check_keys(modes, {"log_base", "distribution", "zeno_formula"}, "modes");
        if (modes.contains("log_base")) {
            const std::string v = as_string(modes["log_base"], "modes.log_base");
            if (v == "nats") {
                cfg.modes.log_base = LogBase::Nats;
            } else if (v == "bits") {
                cfg.modes.log_base = LogBase::Bits;
            } else {
                throw ValidationError("config: modes.log_base must be nats or bits");
            }
        }
        if (modes.contains("distribution")) {
            const std::string v = as_string(modes["distribution"], "modes.distribution");
            if (v == "normalized") {
                cfg.modes.distribution = DistributionMode::Normalized;
            } else if (v == "paper_literal") {
                cfg.modes.distribution = DistributionMode::PaperLiteral;
            } else {
                throw ValidationError("config: modes.distribution must be normalized or "
                                      "paper_literal");
            }
        }
        if (modes.contains("zeno_formula")) {
            const std::string v = as_string(modes["zeno_formula"], "modes.zeno_formula");
            if (v == "corrected") {
                cfg.modes.zeno_formula = ZenoFormula::Corrected;
            } else if (v == "paper_literal") {
                cfg.modes.zeno_formula = ZenoFormula::PaperLiteral;
            } else {
                throw ValidationError("config: modes.zeno_formula must be corrected or "
                                      "paper_literal");
            }
        }
    }

    // --- monte_carlo ---
    if (doc.contains("monte_carlo")) {
        const Json& mc = doc["monte_carlo"];
        if (!mc.is_object()) {
            throw SchemaError("config: monte_carlo must be an object");
        }
        check_keys(mc, {"trials", "seed"}, "monte_carlo");
        if (cfg.protocol != Protocol::Zeno) {
            throw ValidationError("config: monte_carlo applies to the zeno protocol only");
        }
        MonteCarloConfig m;
        m.trials = as_integer(require_key(mc, "trials", "monte_carlo"), "monte_carlo.trials");
        m.seed = as_integer(require_key(mc, "seed", "monte_carlo"), "monte_carlo.seed");
        if (m.trials < 1) {
            throw ValidationError("config: monte_carlo.trials must be >= 1");
        }
        cfg.monte_carlo = m;
    }

    // --- threshold ---
    if (doc.contains("threshold")) {
        cfg.threshold = as_number(doc["threshold"], "threshold");
        if (!std::isfinite(cfg.threshold) || cfg.threshold <= 0.0) {
            throw ValidationError("config: threshold must be finite and > 0");
        }
    }

    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read config file: " + path.string());
    }
    return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    Json doc = Json::object();
    Json system = Json::object();
    if (!cfg.preset_name.empty()) {
        system["preset"] = cfg.preset_name;
        if (cfg.preset_name == "two-level-rabi") {
            system["omega"] = cfg.preset_omega;
        }
    } else {
        system["hamiltonian"] = matrix_to_json(cfg.hamiltonian);
        system["observable"] = matrix_to_json(cfg.observable);
    }
    doc["system"] = std::move(system);
    doc["protocol"] = protocol_name(cfg.protocol);
    doc["n0"] = cfg.n0;

    Json sweep = Json::object();
    if (!cfg.sweep_n.empty()) {
        sweep["N"] = cfg.sweep_n;
    }
    if (!cfg.sweep_t.empty()) {
        sweep["t"] = cfg.sweep_t;
    }
    if (!cfg.sweep_f.empty()) {
        sweep["f"] = cfg.sweep_f;
    }
    if (!cfg.sweep_delta_a.empty()) {
        sweep["delta_a"] = cfg.sweep_delta_a;
    }
    doc["sweep"] = std::move(sweep);

    doc["modes"] = Json{{"log_base", log_base_name(cfg.modes.log_base)},
                        {"distribution", distribution_name(cfg.modes.distribution)},
                        {"zeno_formula", zeno_formula_name(cfg.modes.zeno_formula)}};
    if (cfg.monte_carlo) {
        doc["monte_carlo"] = Json{{"trials", cfg.monte_carlo->trials},
                                  {"seed", cfg.monte_carlo->seed}};
    }
    doc["threshold"] = cfg.threshold;
    return doc.dump(2) + "\n";
}

const char* protocol_name(Protocol p) {
    switch (p) {
    case Protocol::Free:
        return "free";
    case Protocol::Zeno:
        return "zeno";
    case Protocol::Continuous:
        return "continuous";
    }
    return "?";
}

const char* log_base_name(LogBase b) {
    return b == LogBase::Nats ? "nats" : "bits";
}

const char* distribution_name(DistributionMode m) {
    return m == DistributionMode::Normalized ? "normalized" : "paper_literal";
}

const char* zeno_formula_name(ZenoFormula f) {
    return f == ZenoFormula::Corrected ? "corrected" : "paper_literal";
}

} // namespace zeno

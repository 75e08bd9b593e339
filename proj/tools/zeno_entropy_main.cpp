// zeno-entropy — config-driven sweeps of measurement-outcome entropy under
// free, repeatedly measured (Zeno) and continuously measured dynamics.

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zeno/presets.hpp"
#include "zeno/results.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const zeno::ConfigError*>(&e) != nullptr) {
        return kExitConfig;
    }
    if (dynamic_cast<const zeno::IoError*>(&e) != nullptr) {
        return kExitIo;
    }
    return kExitNumerical;
}

const char* category_for(int code) {
    switch (code) {
    case kExitConfig:
        return "config";
    case kExitIo:
        return "io";
    default:
        return "numerical";
    }
}

int run_command(const std::string& config_path, const std::string& out_dir,
                const std::string& format) {
    const zeno::ExperimentConfig cfg = zeno::load_config(config_path);
    const zeno::RunResult result = zeno::run_experiment(cfg);

    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw zeno::IoError("cannot create output directory: " + dir.string());
    }
    if (format == "csv" || format == "both") {
        zeno::emit_csv(result.rows, dir / "results.csv");
    }
    if (format == "json" || format == "both") {
        zeno::emit_json(result, dir / "results.json");
    }

    std::cout << "rows: " << result.rows.size() << "\n"
              << "entropy_nats: min " << zeno::format_double(result.summary.min_entropy_nats)
              << ", max " << zeno::format_double(result.summary.max_entropy_nats) << "\n";
    if (result.summary.first_below_threshold) {
        const zeno::ResultRow& row = result.rows[*result.summary.first_below_threshold];
        std::cout << "first below threshold " << zeno::format_double(result.summary.threshold)
                  << " nats at";
        if (row.num_measurements) {
            std::cout << " N=" << *row.num_measurements;
        }
        if (row.time) {
            std::cout << " t=" << zeno::format_double(*row.time);
        }
        if (row.rate) {
            std::cout << " f=" << zeno::format_double(*row.rate);
        }
        if (row.accuracy) {
            std::cout << " delta_a=" << zeno::format_double(*row.accuracy);
        }
        std::cout << "\n";
    } else {
        std::cout << "no sweep point below threshold "
                  << zeno::format_double(result.summary.threshold) << " nats\n";
    }
    return kExitOk;
}

int validate_command(const std::string& config_path) {
    const zeno::ExperimentConfig cfg = zeno::load_config(config_path);
    std::cout << "config ok: protocol=" << zeno::protocol_name(cfg.protocol)
              << " dim=" << cfg.dim() << "\n";
    return kExitOk;
}

int presets_command() {
    for (const std::string& name : zeno::preset_names()) {
        const zeno::Preset preset = zeno::make_preset(name);
        std::cout << name << ": " << preset.description << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"measurement-outcome entropy sweeps for quantum Zeno and "
                 "continuous-measurement dynamics (hbar = 1)"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string format = "both";

    CLI::App* run = app.add_subcommand("run", "run the sweep described by a config file");
    run->add_option("--config", config_path, "JSON experiment config")->required();
    run->add_option("--out-dir", out_dir, "directory for results.csv / results.json");
    run->add_option("--format", format, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));

    CLI::App* validate = app.add_subcommand("validate", "parse a config without running it");
    validate->add_option("--config", config_path, "JSON experiment config")->required();

    app.add_subcommand("presets", "list built-in system presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_command(config_path, out_dir, format);
        }
        if (validate->parsed()) {
            return validate_command(config_path);
        }
        return presets_command();
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        std::cerr << "error: " << category_for(code) << ": " << e.what() << "\n";
        return code;
    }
}

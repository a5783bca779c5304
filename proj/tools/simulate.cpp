// simulate - runs one simulation configuration and writes spectrum CSVs,
// metadata sidecars and a result summary.
//
//   simulate <config.json> [--atomic-data <path>] [--out <dir>] [--validate-only]
//
// Exit codes: 0 ok, 2 configuration error, 3 solver error.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "misim/run.hpp"

namespace {

void print_error(const char* type, const std::string& message) {
    nlohmann::json j;
    j["error"] = {{"type", type}, {"message", message}};
    std::cerr << j.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modified Ives-Stilwell EIT spectrum simulator"};
    std::string config_path;
    std::string atomic_path;
    std::string out_dir = ".";
    bool validate_only = false;
    app.add_option("config", config_path, "run configuration document")->required();
    app.add_option("--atomic-data", atomic_path, "atomic data document (default: built-in Rb-85 D1)");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--validate-only", validate_only, "check the configuration without solving");
    CLI11_PARSE(app, argc, argv);

    misim::RunConfig cfg;
    misim::AtomicData data;
    try {
        cfg = misim::load_run_config_file(config_path);
        data = atomic_path.empty() ? misim::rb85_d1_defaults()
                                   : misim::load_atomic_data_file(atomic_path);
    } catch (const std::exception& e) {
        print_error("config", e.what());
        return 2;
    }

    const auto violations = misim::validate_run_config(cfg, data);
    if (validate_only) {
        nlohmann::json report = nlohmann::json::array();
        for (const auto& v : violations)
            report.push_back({{"field", v.field}, {"message", v.message}});
        std::cout << nlohmann::json{{"violations", report}}.dump(2) << std::endl;
        return violations.empty() ? 0 : 2;
    }
    if (!violations.empty()) {
        std::string msg = "config validation failed:";
        for (const auto& v : violations) msg += " [" + v.field + "] " + v.message + ";";
        print_error("config", msg);
        return 2;
    }

    try {
        const misim::RunArtifacts art = misim::run(cfg, data, out_dir);
        for (const auto& f : art.files) std::cout << f << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        print_error("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error("solver", e.what());
        return 3;
    }
}

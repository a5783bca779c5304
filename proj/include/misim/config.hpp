// config.hpp - run-configuration document: parsing, schema and physics
// validation. Physical quantities carry explicit unit suffixes in the
// document; canonical internal units are Hz, Tesla, m/s, K, kg.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "misim/atomic_data.hpp"
#include "misim/liouville.hpp"
#include "misim/spectra.hpp"

namespace misim {

enum class RunMode { SingleSystem, ToyModel, FullD1, ClassicIs };

const char* to_string(RunMode m);

struct SweepConfig {
    double b_min_tesla = 0.0;
    double b_max_tesla = 0.0;
    int points = 0;
};

struct DistributionConfig {
    double temperature_kelvin = 300.0;
    double half_width_mps = 4.4;
    int quadrature_points = 101;
};

struct ClassicIsConfig {
    double kappa_tr = 0.0;
    double beta = 0.0;
    double beta_sun_dot_beta = 0.0;
};

struct SystemConfig {
    Direction beam = Direction::East;
    HyperfineLevel state1, state2, state3;
};

struct RunConfig {
    RunMode mode = RunMode::FullD1;
    KappaSet kappas;
    std::optional<double> speed_mps;           // absent: critical velocity
    std::optional<double> nu0_hz;              // absent: transition midpoint
    double omega_probe_hz = 0.0;
    double omega_coupling_hz = 0.0;
    DecayRates rates;
    std::optional<DistributionConfig> distribution;  // absent: delta beam
    SweepConfig sweep;
    Normalization normalization = Normalization::None;
    std::optional<SystemConfig> system;        // single-system mode
    double toy_slope_hz_per_tesla = 1e10;      // toy-model mode
    ClassicIsConfig classic_is;
    std::string output_prefix = "run";

    nlohmann::json document;  // resolved source document, for provenance
};

struct Violation {
    std::string field;
    std::string message;
};

// Parses the document; structural errors throw std::invalid_argument.
RunConfig parse_run_config(const nlohmann::json& doc,
                           const std::string& base_dir = ".");
RunConfig load_run_config_file(const std::string& path);

// Dry-run checks (schema ranges, physics preconditions, kappa consistency);
// aggregates every violation instead of failing fast. No solves happen.
std::vector<Violation> validate_run_config(const RunConfig& cfg,
                                           const AtomicData& data);

}  // namespace misim

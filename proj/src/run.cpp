#include "misim/run.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace misim {

namespace {

LambdaSystem toy_system(Direction beam, double slope_hz_per_tesla,
                        const AtomicData& data) {
    // mirrored pair with the requested two-photon slope; probe-leg ground
    // g is negative like the real table, metastable positive
    const double g = slope_hz_per_tesla / (2.0 * data.constants.mu_b_over_h_hz_per_tesla);
    LambdaSystem s;
    const int sgn = beam == Direction::East ? +1 : -1;
    s.state1 = {Manifold::Ground, 2, -g, 2 * sgn};
    s.state2 = {Manifold::Ground, 3, g, 0};
    s.state3 = {Manifold::Excited, 2, -g / 3.0, 1 * sgn};
    s.beam_direction = beam;
    s.label = beam == Direction::East ? 1 : 2;
    s.unique_class = s.label;
    s.magnetically_inert = false;
    s.validate();
    return s;
}

nlohmann::json extrema_to_json(const ExtremaResult& ex) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : ex.minima)
        arr.push_back({{"b_tesla", m.b_tesla}, {"depth", m.depth}});
    return {{"minima", arr}, {"merged", ex.merged}};
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("run: cannot open '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace

RunArtifacts run(const RunConfig& cfg, const AtomicData& data,
                 const std::string& out_dir) {
    const auto violations = validate_run_config(cfg, data);
    if (!violations.empty()) {
        std::string msg = "config validation failed:";
        for (const auto& v : violations) msg += "\n  " + v.field + ": " + v.message;
        throw std::invalid_argument(msg);
    }
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path base = std::filesystem::path(out_dir) / cfg.output_prefix;

    RunArtifacts art;
    art.summary["version"] = kVersion;
    art.summary["mode"] = to_string(cfg.mode);

    if (cfg.mode == RunMode::ClassicIs) {
        const auto& ci = cfg.classic_is;
        art.summary["classic_is"] = {
            {"kappa_tr", ci.kappa_tr},
            {"beta", ci.beta},
            {"beta_sun_dot_beta", ci.beta_sun_dot_beta},
            {"observable", classic_is_observable(ci.kappa_tr, ci.beta, ci.beta_sun_dot_beta)}};
        art.summary["config"] = cfg.document;
        const std::string sf = base.string() + ".summary.json";
        write_json_file(sf, art.summary);
        art.files.push_back(sf);
        return art;
    }

    const AtomicConstants& consts = data.constants;
    const double vc = critical_velocity(consts);
    const double speed = cfg.speed_mps.value_or(vc);
    const double nu0 = cfg.nu0_hz.value_or(laser_frequency(consts));

    FieldConfig field;
    field.nu0_hz = nu0;
    field.omega_probe_hz = cfg.omega_probe_hz;
    field.omega_coupling_hz = cfg.omega_coupling_hz;

    std::vector<LambdaSystem> systems;
    switch (cfg.mode) {
        case RunMode::FullD1: {
            systems = enumerate_lambda_systems(data).contributing;
            break;
        }
        case RunMode::SingleSystem: {
            LambdaSystem s;
            s.state1 = cfg.system->state1;
            s.state2 = cfg.system->state2;
            s.state3 = cfg.system->state3;
            s.beam_direction = cfg.system->beam;
            s.probe_weight = data.probe_weight;
            s.coupling_weight = data.coupling_weight;
            s.label = 1;
            s.unique_class = 1;
            s.validate();
            s.magnetically_inert = std::abs(two_photon_slope(s, consts)) < 1e-12;
            systems.push_back(s);
            break;
        }
        case RunMode::ToyModel: {
            systems.push_back(toy_system(Direction::East, cfg.toy_slope_hz_per_tesla, data));
            systems.push_back(toy_system(Direction::West, cfg.toy_slope_hz_per_tesla, data));
            break;
        }
        default: break;
    }

    SweepRequest req;
    req.b_min_tesla = cfg.sweep.b_min_tesla;
    req.b_max_tesla = cfg.sweep.b_max_tesla;
    req.points = cfg.sweep.points;
    req.normalization = cfg.normalization;
    if (cfg.distribution) {
        VelocityDistribution dist;
        dist.temperature_k = cfg.distribution->temperature_kelvin;
        dist.mass_kg = consts.mass_kg;
        dist.center_mps = speed;
        dist.half_width_mps = cfg.distribution->half_width_mps;
        dist.quadrature_points = cfg.distribution->quadrature_points;
        req.distribution = dist;
    }

    const Spectrum spec = sweep_spectrum(systems, consts, cfg.rates, field, cfg.kappas, req);

    const std::string csv = base.string() + ".csv";
    write_spectrum_csv(csv, spec);
    art.files.push_back(csv);

    nlohmann::json meta;
    meta["version"] = kVersion;
    meta["config"] = cfg.document;
    meta["resolved"] = {{"nu0_hz", nu0},
                        {"beam_speed_mps", speed},
                        {"critical_velocity_mps", vc},
                        {"thermal", spec.thermal},
                        {"quadrature_points",
                         cfg.distribution ? cfg.distribution->quadrature_points : 0},
                        {"systems", systems.size()}};
    const std::string metaf = csv + ".meta.json";
    write_json_file(metaf, meta);
    art.files.push_back(metaf);

    nlohmann::json classes = nlohmann::json::array();
    for (const auto& cc : spec.classes) {
        nlohmann::json cj;
        cj["class_id"] = cc.class_id;
        cj["labels"] = cc.labels;
        cj["multiplicity"] = cc.multiplicity;
        cj["two_photon_slope_hz_per_tesla"] = cc.two_photon_slope;
        try {
            cj["extrema"] = extrema_to_json(extract_extrema(spec.b_grid, cc.absorption));
        } catch (const std::exception& e) {
            cj["extrema"] = {{"error", e.what()}};
        }
        classes.push_back(cj);
    }
    art.summary["classes"] = classes;

    if (cfg.mode == RunMode::FullD1 || cfg.mode == RunMode::ToyModel) {
        const double beta = speed / consts.c_mps;
        const SplittingResult split = estimate_splitting(spec, nu0, beta);
        art.summary["splitting"] = {{"xi_east_tesla", split.xi_east_tesla},
                                    {"xi_west_tesla", split.xi_west_tesla},
                                    {"delta_xi_tesla", split.delta_xi_tesla},
                                    {"kappa_tr_estimate", split.kappa_tr_estimate},
                                    {"upper_bound", split.upper_bound}};
    }
    art.summary["config"] = cfg.document;

    const std::string sf = base.string() + ".summary.json";
    write_json_file(sf, art.summary);
    art.files.push_back(sf);
    return art;
}

}  // namespace misim

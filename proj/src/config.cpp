#include "misim/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace misim {

const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::SingleSystem: return "single-system";
        case RunMode::ToyModel: return "toy-model";
        case RunMode::FullD1: return "full-d1";
        case RunMode::ClassicIs: return "classic-is";
    }
    return "?";
}

namespace {

RunMode mode_from_string(const std::string& s) {
    if (s == "single-system") return RunMode::SingleSystem;
    if (s == "toy-model") return RunMode::ToyModel;
    if (s == "full-d1") return RunMode::FullD1;
    if (s == "classic-is") return RunMode::ClassicIs;
    throw std::invalid_argument("config: unknown mode '" + s + "'");
}

double number_at(const nlohmann::json& j, const char* field, const char* where) {
    if (!j.contains(field)) {
        std::ostringstream os;
        os << "config: missing field '" << where << "." << field << "'";
        throw std::invalid_argument(os.str());
    }
    if (!j.at(field).is_number()) {
        std::ostringstream os;
        os << "config: field '" << where << "." << field << "' must be a number";
        throw std::invalid_argument(os.str());
    }
    return j.at(field).get<double>();
}

HyperfineLevel level_from_json(const nlohmann::json& j, const char* where) {
    HyperfineLevel l;
    const std::string manifold = j.value("manifold", std::string("ground"));
    if (manifold == "ground")
        l.manifold = Manifold::Ground;
    else if (manifold == "excited")
        l.manifold = Manifold::Excited;
    else
        throw std::invalid_argument(std::string("config: ") + where +
                                    ".manifold must be 'ground' or 'excited'");
    l.F = (int)number_at(j, "F", where);
    l.g_F = number_at(j, "g_F", where);
    l.m_F = (int)number_at(j, "m_F", where);
    return l;
}

KappaSet kappas_from_json(const nlohmann::json& j, const std::string& base_dir) {
    if (j.contains("file")) {
        const std::filesystem::path p =
            std::filesystem::path(base_dir) / j.at("file").get<std::string>();
        std::ifstream in(p);
        if (!in) throw std::invalid_argument("config: cannot open kappa file '" + p.string() + "'");
        nlohmann::json doc;
        in >> doc;
        return KappaSet::from_json(doc);
    }
    if (j.contains("kappa_DE")) return KappaSet::from_json(j);
    if (j.contains("kappa_tr")) return KappaSet::isotropic(j.at("kappa_tr").get<double>());
    throw std::invalid_argument(
        "config: kappa must give 'kappa_tr', the inline matrices, or a 'file'");
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& doc, const std::string& base_dir) {
    if (!doc.contains("schema") || doc.at("schema").get<std::string>() != "misim.run.v1")
        throw std::invalid_argument("config: missing or unsupported 'schema' (expect misim.run.v1)");
    RunConfig cfg;
    cfg.document = doc;
    if (!doc.contains("mode")) throw std::invalid_argument("config: missing field 'mode'");
    cfg.mode = mode_from_string(doc.at("mode").get<std::string>());

    if (doc.contains("output") && doc.at("output").contains("prefix"))
        cfg.output_prefix = doc.at("output").at("prefix").get<std::string>();

    if (cfg.mode == RunMode::ClassicIs) {
        const auto& ci = doc.at("classic_is");
        cfg.classic_is.kappa_tr = number_at(ci, "kappa_tr", "classic_is");
        cfg.classic_is.beta = number_at(ci, "beta", "classic_is");
        cfg.classic_is.beta_sun_dot_beta = number_at(ci, "beta_sun_dot_beta", "classic_is");
        return cfg;
    }

    cfg.kappas = doc.contains("kappa") ? kappas_from_json(doc.at("kappa"), base_dir)
                                       : KappaSet::zero();

    if (doc.contains("beam") && doc.at("beam").contains("speed_mps") &&
        doc.at("beam").at("speed_mps").is_number())
        cfg.speed_mps = doc.at("beam").at("speed_mps").get<double>();

    const auto& field = doc.at("field");
    if (field.contains("nu0_hz") && field.at("nu0_hz").is_number())
        cfg.nu0_hz = field.at("nu0_hz").get<double>();
    cfg.omega_probe_hz = number_at(field, "omega_probe_hz", "field");
    cfg.omega_coupling_hz = number_at(field, "omega_coupling_hz", "field");

    const auto& rates = doc.at("rates");
    cfg.rates.Gamma31_hz = number_at(rates, "Gamma31_hz", "rates");
    cfg.rates.Gamma32_hz = number_at(rates, "Gamma32_hz", "rates");
    cfg.rates.gamma21_hz = number_at(rates, "gamma21_hz", "rates");
    cfg.rates.gamma31_hz = number_at(rates, "gamma31_hz", "rates");
    cfg.rates.gamma32_hz = number_at(rates, "gamma32_hz", "rates");
    cfg.rates.gamma41_hz = rates.value("gamma41_hz", 0.0);
    cfg.rates.gamma52_hz = rates.value("gamma52_hz", 0.0);
    cfg.rates.gamma63_hz = rates.value("gamma63_hz", 0.0);

    if (doc.contains("distribution") && !doc.at("distribution").is_null()) {
        const auto& d = doc.at("distribution");
        DistributionConfig dc;
        dc.temperature_kelvin = number_at(d, "temperature_kelvin", "distribution");
        dc.half_width_mps = number_at(d, "half_width_mps", "distribution");
        dc.quadrature_points = (int)number_at(d, "quadrature_points", "distribution");
        cfg.distribution = dc;
    }

    const auto& sweep = doc.at("sweep");
    cfg.sweep.b_min_tesla = number_at(sweep, "b_min_tesla", "sweep");
    cfg.sweep.b_max_tesla = number_at(sweep, "b_max_tesla", "sweep");
    cfg.sweep.points = (int)number_at(sweep, "points", "sweep");

    if (doc.contains("normalization")) {
        const std::string n = doc.at("normalization").get<std::string>();
        if (n == "physical")
            cfg.normalization = Normalization::None;
        else if (n == "per-system-max")
            cfg.normalization = Normalization::PerCurveMax;
        else if (n == "min-max")
            cfg.normalization = Normalization::MinMax;
        else
            throw std::invalid_argument("config: unknown normalization '" + n + "'");
    }

    if (cfg.mode == RunMode::SingleSystem) {
        if (!doc.contains("system"))
            throw std::invalid_argument("config: single-system mode needs a 'system' block");
        const auto& s = doc.at("system");
        SystemConfig sc;
        const std::string beam = s.value("beam", std::string("east"));
        if (beam == "east")
            sc.beam = Direction::East;
        else if (beam == "west")
            sc.beam = Direction::West;
        else
            throw std::invalid_argument("config: system.beam must be 'east' or 'west'");
        sc.state1 = level_from_json(s.at("state1"), "system.state1");
        sc.state2 = level_from_json(s.at("state2"), "system.state2");
        sc.state3 = level_from_json(s.at("state3"), "system.state3");
        cfg.system = sc;
    }
    if (cfg.mode == RunMode::ToyModel && doc.contains("toy"))
        cfg.toy_slope_hz_per_tesla =
            number_at(doc.at("toy"), "two_photon_slope_hz_per_tesla", "toy");
    return cfg;
}

RunConfig load_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw std::invalid_argument("config: parse error in '" + path + "': " + e.what());
    }
    return parse_run_config(doc, std::filesystem::path(path).parent_path().string());
}

std::vector<Violation> validate_run_config(const RunConfig& cfg, const AtomicData& data) {
    std::vector<Violation> out;
    auto flag = [&out](std::string field, std::string message) {
        out.push_back({std::move(field), std::move(message)});
    };

    if (cfg.mode == RunMode::ClassicIs) {
        if (std::abs(cfg.classic_is.beta) >= 1.0)
            flag("classic_is.beta", "|beta| must be below 1");
        return out;
    }

    try {
        cfg.kappas.validate();
    } catch (const std::exception& e) {
        flag("kappa", e.what());
    }
    if (cfg.omega_probe_hz < 0.0) flag("field.omega_probe_hz", "must be non-negative");
    if (cfg.omega_coupling_hz < 0.0) flag("field.omega_coupling_hz", "must be non-negative");
    if (cfg.nu0_hz && *cfg.nu0_hz <= 0.0) flag("field.nu0_hz", "must be positive");
    try {
        cfg.rates.validate();
    } catch (const std::exception& e) {
        flag("rates", e.what());
    }
    if (!cfg.rates.has_damping())
        flag("rates", "at least one decay channel or dephasing must be positive "
                      "for a unique steady state");

    const double vc = critical_velocity(data.constants);
    if (cfg.speed_mps) {
        if (!(*cfg.speed_mps > 0.0)) flag("beam.speed_mps", "must be positive");
        if (*cfg.speed_mps / data.constants.c_mps >= 1e-4)
            flag("beam.speed_mps", "beam must stay in the thermal regime (beta < 1e-4)");
    }
    if (cfg.distribution) {
        const auto& d = *cfg.distribution;
        if (!(d.half_width_mps > 0.0)) flag("distribution.half_width_mps", "must be positive");
        if (d.quadrature_points < 21 || d.quadrature_points % 2 == 0)
            flag("distribution.quadrature_points", "must be >= 21 and odd");
        if (!(d.temperature_kelvin > 0.0))
            flag("distribution.temperature_kelvin", "must be positive");
        const double center = cfg.speed_mps.value_or(vc);
        if (d.half_width_mps >= center)
            flag("distribution.half_width_mps",
                 "window must stay inside (0, 2 v_c): half width exceeds the beam speed");
    }
    if (cfg.sweep.points < 51) flag("sweep.points", "need at least 51 field points");
    if (!(cfg.sweep.b_max_tesla > cfg.sweep.b_min_tesla))
        flag("sweep.b_max_tesla", "must exceed sweep.b_min_tesla");

    if (cfg.mode == RunMode::SingleSystem) {
        if (!cfg.system) {
            flag("system", "single-system mode needs a 'system' block");
        } else {
            try {
                LambdaSystem s;
                s.state1 = cfg.system->state1;
                s.state2 = cfg.system->state2;
                s.state3 = cfg.system->state3;
                s.beam_direction = cfg.system->beam;
                s.validate();
            } catch (const std::exception& e) {
                flag("system", e.what());
            }
        }
    }
    if (cfg.mode == RunMode::ToyModel && !(cfg.toy_slope_hz_per_tesla > 0.0))
        flag("toy.two_photon_slope_hz_per_tesla", "must be positive");
    return out;
}

}  // namespace misim

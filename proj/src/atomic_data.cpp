#include "misim/atomic_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace misim {

void HyperfineLevel::validate() const {
    if (std::abs(m_F) > F)
        throw std::invalid_argument("HyperfineLevel: |m_F| must not exceed F");
    if (manifold == Manifold::Ground && F != 2 && F != 3)
        throw std::invalid_argument("HyperfineLevel: ground manifold F must be 2 or 3");
    if (manifold == Manifold::Excited && F != 2)
        throw std::invalid_argument("HyperfineLevel: only the F' = 2 excited state is modeled");
}

void AtomicConstants::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) {
            std::ostringstream os;
            os << "AtomicConstants: field '" << name << "' must be positive";
            throw std::invalid_argument(os.str());
        }
    };
    positive(nu31_hz, "nu31_hz");
    positive(nu32_hz, "nu32_hz");
    positive(nu21_hz, "nu21_hz");
    positive(gamma31_natural_hz, "gamma31_natural_hz");
    positive(mass_kg, "mass_kg");
    positive(mu_b_over_h_hz_per_tesla, "mu_b_over_h_hz_per_tesla");
    positive(c_mps, "c_mps");
    if (std::abs(nu21_hz - (nu31_hz - nu32_hz)) > 1e3)
        throw std::invalid_argument(
            "AtomicConstants: nu21_hz must equal nu31_hz - nu32_hz within 1 kHz");
}

AtomicData rb85_d1_defaults() {
    AtomicData d;
    d.constants.nu31_hz = 377108911.7e6;
    d.constants.nu21_hz = 3035.732e6;
    // kept exactly consistent with nu21; the published rounding of nu32 is
    // 32 kHz off its own splitting
    d.constants.nu32_hz = d.constants.nu31_hz - d.constants.nu21_hz;
    d.constants.gamma31_natural_hz = 5.746e6;
    d.constants.mass_kg = 1.409993e-25;
    d.constants.mu_b_over_h_hz_per_tesla = 1.399624e10;
    d.constants.c_mps = kSpeedOfLight;
    d.g_ground_f2 = -1.0 / 3.0;
    d.g_ground_f3 = 1.0 / 3.0;
    d.g_excited_f2 = -1.0 / 9.0;
    d.probe_weight = 1.0;
    d.coupling_weight = 1.0;
    return d;
}

namespace {
double require_number(const nlohmann::json& doc, const char* field) {
    if (!doc.contains(field)) {
        std::ostringstream os;
        os << "atomic data: missing field '" << field << "'";
        throw std::invalid_argument(os.str());
    }
    if (!doc.at(field).is_number()) {
        std::ostringstream os;
        os << "atomic data: field '" << field << "' must be a number";
        throw std::invalid_argument(os.str());
    }
    return doc.at(field).get<double>();
}
}  // namespace

AtomicData load_atomic_data(const nlohmann::json& doc) {
    if (!doc.contains("schema") || doc.at("schema").get<std::string>() != "misim.atomic.v1")
        throw std::invalid_argument("atomic data: missing or unsupported 'schema' (expect misim.atomic.v1)");
    AtomicData d;
    d.constants.nu31_hz = require_number(doc, "nu31_hz");
    d.constants.nu32_hz = require_number(doc, "nu32_hz");
    d.constants.nu21_hz = require_number(doc, "nu21_hz");
    d.constants.gamma31_natural_hz = require_number(doc, "gamma31_natural_hz");
    d.constants.mass_kg = require_number(doc, "mass_kg");
    d.constants.mu_b_over_h_hz_per_tesla = require_number(doc, "mu_b_over_h_hz_per_tesla");
    d.constants.c_mps = doc.contains("c_mps") ? doc.at("c_mps").get<double>() : kSpeedOfLight;
    if (!doc.contains("levels"))
        throw std::invalid_argument("atomic data: missing field 'levels'");
    const auto& lv = doc.at("levels");
    d.g_ground_f2 = require_number(lv, "ground_f2_g");
    d.g_ground_f3 = require_number(lv, "ground_f3_g");
    d.g_excited_f2 = require_number(lv, "excited_f2_g");
    if (doc.contains("dipole_weights")) {
        d.probe_weight = require_number(doc.at("dipole_weights"), "probe");
        d.coupling_weight = require_number(doc.at("dipole_weights"), "coupling");
    }
    d.constants.validate();
    return d;
}

AtomicData load_atomic_data_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("atomic data: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw std::invalid_argument("atomic data: parse error in '" + path + "': " + e.what());
    }
    return load_atomic_data(doc);
}

void LambdaSystem::validate() const {
    state1.validate();
    state2.validate();
    state3.validate();
    if (std::abs(state3.m_F - state1.m_F) != 1 || std::abs(state3.m_F - state2.m_F) != 1 ||
        std::abs(state2.m_F - state1.m_F) != 2)
        throw std::invalid_argument(
            "LambdaSystem: states must satisfy the circular-polarisation selection "
            "structure |m3-m1| = |m3-m2| = 1, |m2-m1| = 2");
}

LambdaEnumeration enumerate_lambda_systems(const AtomicData& data,
                                           Polarization east_field_pol,
                                           std::optional<Direction> only_beam) {
    LambdaEnumeration out;
    const int q_east_field = east_field_pol == Polarization::SigmaPlus ? +1 : -1;

    int label = 0;
    for (Direction beam : {Direction::East, Direction::West}) {
        if (only_beam && *only_beam != beam) continue;
        // the probe is the field counter-propagating with the beam
        const int q_probe = beam == Direction::East ? -q_east_field : q_east_field;
        for (int m1 = 2; m1 >= -2; --m1) {
            const int m2 = m1 + 2 * q_probe;
            const int m3 = m1 + q_probe;
            if (std::abs(m2) > 3 || std::abs(m3) > 2) continue;
            LambdaSystem s;
            s.state1 = {Manifold::Ground, 2, data.g_ground_f2, m1};
            s.state2 = {Manifold::Ground, 3, data.g_ground_f3, m2};
            s.state3 = {Manifold::Excited, 2, data.g_excited_f2, m3};
            s.probe_weight = data.probe_weight;
            s.coupling_weight = data.coupling_weight;
            s.beam_direction = beam;
            s.label = ++label;
            s.validate();
            const double slope_factor =
                s.state2.m_F * s.state2.g_F - s.state1.m_F * s.state1.g_F;
            s.magnetically_inert = std::abs(slope_factor) < 1e-12;
            out.systems.push_back(s);
        }
    }

    // group the contributing systems into unique-spectrum classes by their
    // two-photon Zeeman slope; most sensitive classes first
    std::vector<double> keys;
    auto key_of = [&keys](double f) -> int {
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (std::abs(keys[i] - f) < 1e-9 * std::max(1.0, std::abs(f))) return (int)i;
        keys.push_back(f);
        return (int)keys.size() - 1;
    };
    std::vector<std::pair<int, int>> membership;  // (key index, system index)
    for (std::size_t i = 0; i < out.systems.size(); ++i) {
        const auto& s = out.systems[i];
        if (s.magnetically_inert) continue;
        const double f = s.state2.m_F * s.state2.g_F - s.state1.m_F * s.state1.g_F;
        membership.emplace_back(key_of(f), (int)i);
    }
    std::vector<int> order(keys.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    auto first_label = [&](int key) {
        int best = 1 << 30;
        for (auto& [k, idx] : membership)
            if (k == key) best = std::min(best, out.systems[idx].label);
        return best;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double fa = std::abs(keys[a]), fb = std::abs(keys[b]);
        if (std::abs(fa - fb) > 1e-9 * std::max(1.0, std::max(fa, fb))) return fa > fb;
        return first_label(a) < first_label(b);
    });
    std::vector<int> class_of(keys.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) class_of[order[rank]] = (int)rank + 1;
    for (auto& [k, idx] : membership) out.systems[idx].unique_class = class_of[k];

    for (const auto& s : out.systems)
        if (!s.magnetically_inert) out.contributing.push_back(s);
    out.unique_class_count = (int)keys.size();
    return out;
}

}  // namespace misim

// atomic_data.hpp - Rb-85 D1 constants, hyperfine levels and enumeration of
// the Lambda systems available to two counter-propagating circular fields.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "misim/sme_photon.hpp"  // Direction

namespace misim {

enum class Manifold { Ground, Excited };

struct HyperfineLevel {
    Manifold manifold = Manifold::Ground;
    int F = 2;
    double g_F = 0.0;
    int m_F = 0;

    void validate() const;  // |m_F| <= F, ground F in {2,3}, excited F' = 2
};

struct AtomicConstants {
    double nu31_hz = 0.0;
    double nu32_hz = 0.0;
    double nu21_hz = 0.0;
    double gamma31_natural_hz = 0.0;  // excited-state linewidth
    double mass_kg = 0.0;
    double mu_b_over_h_hz_per_tesla = 0.0;
    double c_mps = kSpeedOfLight;

    // positivity and nu21 = nu31 - nu32 within 1 kHz
    void validate() const;
};

// Constants plus the level g-factors and the relative dipole amplitudes;
// the level table is what enumerate_lambda_systems() consumes.
struct AtomicData {
    AtomicConstants constants;
    double g_ground_f2 = 0.0;
    double g_ground_f3 = 0.0;
    double g_excited_f2 = 0.0;
    double probe_weight = 1.0;
    double coupling_weight = 1.0;
};

// Shipped Rb-85 D1 defaults.
AtomicData rb85_d1_defaults();

// Parses the versioned atomic-data document. Missing or inconsistent fields
// throw std::invalid_argument naming the field.
AtomicData load_atomic_data(const nlohmann::json& doc);
AtomicData load_atomic_data_file(const std::string& path);

enum class Polarization { SigmaPlus, SigmaMinus };

struct LambdaSystem {
    HyperfineLevel state1;  // true ground, probe leg
    HyperfineLevel state2;  // metastable ground, coupling leg
    HyperfineLevel state3;  // excited
    double probe_weight = 1.0;
    double coupling_weight = 1.0;
    int label = 0;  // 1..8
    Direction beam_direction = Direction::East;
    bool magnetically_inert = false;  // two-photon Zeeman slope vanishes
    int unique_class = 0;             // 1..4 among contributing systems, 0 if inert

    // sigma-/sigma+ selection structure of a Lambda configuration
    void validate() const;
};

struct LambdaEnumeration {
    std::vector<LambdaSystem> systems;        // all, 4 per beam direction
    std::vector<LambdaSystem> contributing;   // magnetically active ones
    int unique_class_count = 0;
};

// Enumerates every Lambda system the two beams support, flags the
// magnetically inert ones (excited m_F = 0) and groups the rest into
// unique-spectrum classes keyed on the two-photon Zeeman slope.
// east_field_pol is the helicity of the Easterly-traveling field.
LambdaEnumeration enumerate_lambda_systems(
    const AtomicData& data,
    Polarization east_field_pol = Polarization::SigmaPlus,
    std::optional<Direction> only_beam = std::nullopt);

}  // namespace misim

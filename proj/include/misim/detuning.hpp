// detuning.hpp - critical velocity, Zeeman shifts and the one-/two-photon
// detunings with and without the Lorentz-violating phase-speed terms.
#pragma once

#include "misim/atomic_data.hpp"
#include "misim/sme_photon.hpp"

namespace misim {

// Signed velocity along the East axis; positive = Eastward beam.
struct BeamConfig {
    double v_at_mps = 0.0;

    Direction direction() const {
        return v_at_mps >= 0.0 ? Direction::East : Direction::West;
    }
    double speed() const { return v_at_mps < 0.0 ? -v_at_mps : v_at_mps; }
    double beta(const AtomicConstants& c) const { return speed() / c.c_mps; }

    void validate(const AtomicConstants& c) const;  // thermal regime guard
};

struct FieldConfig {
    double nu0_hz = 0.0;             // common rest-frame laser frequency
    double omega_probe_hz = 0.0;     // Rabi rates
    double omega_coupling_hz = 0.0;
    double b_tesla = 0.0;            // axial magnetic field

    void validate() const;
};

struct Detunings {
    double Delta_hz = 0.0;  // one-photon (probe leg)
    double delta_hz = 0.0;  // two-photon
};

// nu0 = (nu31 + nu32) / 2: the symmetric-Doppler midpoint.
double laser_frequency(const AtomicConstants& c);

// v_c = nu21 / (2 nu0) * c: beam speed bringing both fields into resonance.
double critical_velocity(const AtomicConstants& c);

double zeeman_shift(const HyperfineLevel& level, double b_tesla,
                    double mu_b_over_h_hz_per_tesla);

// d(delta)/dB and d(Delta)/dB for a system, Hz/T.
double two_photon_slope(const LambdaSystem& s, const AtomicConstants& c);
double one_photon_slope(const LambdaSystem& s, const AtomicConstants& c);

// Special-relativity detunings at first order in the beam speed. Each beam
// sees the same symmetric Doppler physics, so the speed enters, with the
// direction carried by the system's level structure.
Detunings detunings_sr(const LambdaSystem& s, const BeamConfig& beam,
                       const FieldConfig& field, const AtomicConstants& c);

// Phase-speed corrections for the two propagation directions, from the full
// tensor route.
struct RhoPair {
    double east = 0.0;
    double west = 0.0;
    double sum() const { return east + west; }
    double of(Direction d) const { return d == Direction::East ? east : west; }
};

RhoPair rho_pair(const KappaSet& kappas);

// Adds the Lorentz-violating terms: the probe leg gains
// nu0 * beta * rho(probe direction), the two-photon detuning gains
// nu0 * beta * (rho_E + rho_W). Reduces bit-for-bit to detunings_sr when
// every kappa vanishes.
Detunings detunings_sme(const LambdaSystem& s, const BeamConfig& beam,
                        const FieldConfig& field, const AtomicConstants& c,
                        const RhoPair& rho);
Detunings detunings_sme(const LambdaSystem& s, const BeamConfig& beam,
                        const FieldConfig& field, const AtomicConstants& c,
                        const KappaSet& kappas);

// Line-centre offset scale Xi = 2 kappa_tr nu0 beta (Hz).
double lv_frequency_offset(double kappa_tr, double nu0_hz, double beta);

}  // namespace misim

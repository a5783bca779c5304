#include "misim/detuning.hpp"

#include <cmath>
#include <stdexcept>

namespace misim {

void BeamConfig::validate(const AtomicConstants& c) const {
    if (beta(c) >= 1e-4)
        throw std::invalid_argument("BeamConfig: |v_at|/c must stay below 1e-4");
}

void FieldConfig::validate() const {
    if (!(nu0_hz > 0.0))
        throw std::invalid_argument("FieldConfig: nu0_hz must be positive");
    if (omega_probe_hz < 0.0 || omega_coupling_hz < 0.0)
        throw std::invalid_argument("FieldConfig: Rabi rates must be non-negative");
}

double laser_frequency(const AtomicConstants& c) {
    return 0.5 * (c.nu31_hz + c.nu32_hz);
}

double critical_velocity(const AtomicConstants& c) {
    return c.nu21_hz / (2.0 * laser_frequency(c)) * c.c_mps;
}

double zeeman_shift(const HyperfineLevel& level, double b_tesla,
                    double mu_b_over_h_hz_per_tesla) {
    return mu_b_over_h_hz_per_tesla * level.m_F * level.g_F * b_tesla;
}

double two_photon_slope(const LambdaSystem& s, const AtomicConstants& c) {
    return c.mu_b_over_h_hz_per_tesla *
           (s.state2.m_F * s.state2.g_F - s.state1.m_F * s.state1.g_F);
}

double one_photon_slope(const LambdaSystem& s, const AtomicConstants& c) {
    return c.mu_b_over_h_hz_per_tesla *
           (s.state3.m_F * s.state3.g_F - s.state1.m_F * s.state1.g_F);
}

Detunings detunings_sr(const LambdaSystem& s, const BeamConfig& beam,
                       const FieldConfig& field, const AtomicConstants& c) {
    beam.validate(c);
    field.validate();
    if (beam.speed() > 0.0 && s.beam_direction != beam.direction())
        throw std::invalid_argument(
            "detunings_sr: beam direction disagrees with the system's beam");
    const double v = beam.speed();
    Detunings d;
    d.Delta_hz = c.nu31_hz + one_photon_slope(s, c) * field.b_tesla -
                 field.nu0_hz * (1.0 + v / c.c_mps);
    d.delta_hz = c.nu21_hz + two_photon_slope(s, c) * field.b_tesla -
                 2.0 * field.nu0_hz * v / c.c_mps;
    return d;
}

RhoPair rho_pair(const KappaSet& kappas) {
    const KFTensor kf = kf_from_kappas(kappas);
    RhoPair r;
    r.east = rho(contract(kf, WaveFourVector::along(Direction::East)));
    r.west = rho(contract(kf, WaveFourVector::along(Direction::West)));
    return r;
}

Detunings detunings_sme(const LambdaSystem& s, const BeamConfig& beam,
                        const FieldConfig& field, const AtomicConstants& c,
                        const RhoPair& rho) {
    Detunings d = detunings_sr(s, beam, field, c);
    const double beta = beam.beta(c);
    const Direction probe_dir = opposite(s.beam_direction);
    d.Delta_hz += field.nu0_hz * beta * rho.of(probe_dir);
    d.delta_hz += field.nu0_hz * beta * rho.sum();
    return d;
}

Detunings detunings_sme(const LambdaSystem& s, const BeamConfig& beam,
                        const FieldConfig& field, const AtomicConstants& c,
                        const KappaSet& kappas) {
    return detunings_sme(s, beam, field, c, rho_pair(kappas));
}

double lv_frequency_offset(double kappa_tr, double nu0_hz, double beta) {
    return 2.0 * kappa_tr * nu0_hz * beta;
}

}  // namespace misim

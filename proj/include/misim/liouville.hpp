// liouville.hpp - rotating-frame Hamiltonians, decay operator, steady-state
// solves for the 3- and 6-level systems and the probe susceptibility.
#pragma once

#include <complex>

#include <Eigen/Dense>

#include "misim/atomic_data.hpp"
#include "misim/detuning.hpp"

namespace misim {

// Population decay channels (Gamma) and pure coherence dephasings (gamma),
// all in Hz. The gamma41/52/63 rates damp the cross-block coherences of the
// 6-level system.
struct DecayRates {
    double Gamma31_hz = 0.0;
    double Gamma32_hz = 0.0;
    double gamma21_hz = 0.0;
    double gamma31_hz = 0.0;
    double gamma32_hz = 0.0;
    double gamma41_hz = 0.0;
    double gamma52_hz = 0.0;
    double gamma63_hz = 0.0;

    void validate() const;  // all >= 0
    bool has_damping() const;
};

struct SteadyState {
    Eigen::MatrixXcd rho;     // n x n, Hermitian, unit trace
    bool degenerate = false;  // solution picked by the initial-state anchor
    double residual = 0.0;    // ||L vec(rho)|| / ||L||_F
};

// Hermiticity / trace / positivity checks for a steady-state solution.
// Throws std::runtime_error when violated.
void validate_density_matrix(const Eigen::MatrixXcd& rho,
                             double herm_tol = 1e-12, double trace_tol = 1e-12,
                             double diag_tol = 1e-12, double psd_tol = 1e-10);

// Rotating-frame Hamiltonian (angular units, built from Hz inputs):
//   [[0, 0, wp/2], [0, -delta, wc/2], [wp/2, wc/2, -Delta]] * 2*pi
Eigen::Matrix3cd hamiltonian_3(const Detunings& det, double omega_p_hz,
                               double omega_c_hz);

// Steady state of L(rho) = -i [H, rho] + D(rho) = 0 with unit trace.
// Populations decay at Gamma, coherences at (Gamma31+Gamma32)/2 plus the
// pure dephasing. The trace row replaces the first population equation and
// the solve applies a minimum-norm correction from the all-population-in-
// state-1 anchor, so degenerate (dark) cases resolve deterministically and
// are reported through the `degenerate` flag.
SteadyState steady_state_3(const Detunings& det, const DecayRates& rates,
                           double omega_p_hz, double omega_c_hz);
// Applies the system's relative dipole amplitudes to the Rabi rates.
SteadyState steady_state_3(const LambdaSystem& s, const Detunings& det,
                           const DecayRates& rates, double omega_p_hz,
                           double omega_c_hz);

// Two independent Lambda blocks A (states 1-3) and B (states 4-6) with the
// cross-block coherence dampings. The two true grounds stay equally
// populated: the block traces are constrained to 1/2 each and the anchor is
// diag(1/2, 0, 0, 1/2, 0, 0).
SteadyState steady_state_6(const Detunings& det_a, const Detunings& det_b,
                           const DecayRates& rates, double omega_p_hz,
                           double omega_c_hz);
SteadyState steady_state_6(const LambdaSystem& sys_a, const LambdaSystem& sys_b,
                           const Detunings& det_a, const Detunings& det_b,
                           const DecayRates& rates, double omega_p_hz,
                           double omega_c_hz);

struct PrefactorInputs {
    double n_atoms = 1.0;
    double volume_m3 = 1.0;
    double probe_field_v_per_m = 1.0;
    double eps0 = 1.0;
    double mu13 = 1.0;
    double mu23 = 1.0;
    double mu46 = 1.0;
    double mu56 = 1.0;

    double scale() const { return 2.0 * n_atoms / (eps0 * probe_field_v_per_m * volume_m3); }
};

// chi = 2N/(eps0 E0 V) * (mu13 rho_13 + mu46 rho_46 + mu23 rho_23 + mu56 rho_56)
// for the 6-level solution; the 3-level case keeps only the probe-leg term.
// The absorptive quadrature is Im(chi) >= 0.
std::complex<double> susceptibility(const Eigen::MatrixXcd& rho,
                                    const PrefactorInputs& pref = {});

}  // namespace misim

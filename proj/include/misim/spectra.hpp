// spectra.hpp - magnetic-field sweeps of the thermally averaged probe
// absorption, extrema extraction and inversion of the class splitting for
// kappa_tr.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "misim/detuning.hpp"
#include "misim/liouville.hpp"
#include "misim/quadrature.hpp"

namespace misim {

// Thermal velocity window sampled by fixed-node Gauss-Legendre quadrature.
// The window is centred on the critical speed; an odd node count keeps the
// exact centre in the rule.
struct VelocityDistribution {
    double temperature_k = 300.0;
    double mass_kg = 0.0;
    double center_mps = 0.0;
    double half_width_mps = 4.4;
    int quadrature_points = 101;

    void validate() const;  // half_width > 0, points >= 21 and odd
    double pdf(double v_mps) const {
        return maxwell_boltzmann_pdf(v_mps, mass_kg, temperature_k);
    }
};

// Im chi of one system at one (B, speed) point.
double im_chi_point(const LambdaSystem& s, const AtomicConstants& c,
                    const DecayRates& rates, const FieldConfig& field,
                    const RhoPair& rho, double speed_mps);

struct ThermalPoint {
    double integral = 0.0;  // integral of Im[chi] P(v) dv over the window
    double mean = 0.0;      // integral normalised by the window probability
};

ThermalPoint thermal_average(const LambdaSystem& s, const AtomicConstants& c,
                             const DecayRates& rates, const FieldConfig& field,
                             const RhoPair& rho, const VelocityDistribution& dist);

// Doubling the node count must move the integral by less than rel_tol.
struct ConvergenceReport {
    double value = 0.0;
    double refined = 0.0;
    double rel_change = 0.0;
    bool converged = false;
};
ConvergenceReport check_thermal_convergence(const LambdaSystem& s,
                                            const AtomicConstants& c,
                                            const DecayRates& rates,
                                            const FieldConfig& field,
                                            const RhoPair& rho,
                                            const VelocityDistribution& dist,
                                            double rel_tol = 1e-3);

enum class Normalization { None, PerCurveMax, MinMax };

struct ClassCurve {
    int class_id = 0;
    std::vector<int> labels;       // member systems
    int multiplicity = 0;
    double two_photon_slope = 0.0; // Hz/T
    std::vector<double> absorption;
};

struct Extremum {
    double b_tesla = 0.0;
    double depth = 0.0;
};

struct ExtremaResult {
    std::vector<Extremum> minima;  // ascending in B
    bool merged = false;           // fewer minima found than expected
};

struct Spectrum {
    std::vector<double> b_grid;
    std::vector<ClassCurve> classes;
    std::vector<double> total;
    Normalization normalization = Normalization::None;
    bool thermal = false;
    double speed_mps = 0.0;
};

struct SweepRequest {
    double b_min_tesla = 0.0;
    double b_max_tesla = 0.0;
    int points = 0;  // >= 51
    Normalization normalization = Normalization::None;
    std::optional<VelocityDistribution> distribution;  // absent = delta beam
};

// Per-class and summed absorption versus B for the given systems. Inert
// systems are skipped; class curves sum their members, so paired classes
// carry the doubled amplitude naturally. Solver failures are rethrown with
// the offending (B, v, system label) attached.
Spectrum sweep_spectrum(const std::vector<LambdaSystem>& systems,
                        const AtomicConstants& c, const DecayRates& rates,
                        const FieldConfig& field_template, const KappaSet& kappas,
                        const SweepRequest& req);

// Local minima by 3-point quadratic interpolation around each discrete
// minimum; plateau ties resolve toward smaller |B|. Throws when the data is
// monotone; sets `merged` when fewer than `expected` minima are present.
ExtremaResult extract_extrema(const std::vector<double>& b_grid,
                              const std::vector<double>& y, int expected = 1);

struct SplittingResult {
    double xi_east_tesla = 0.0;   // line-centre offset, East-beam class
    double xi_west_tesla = 0.0;
    double delta_xi_tesla = 0.0;  // |xi_east - xi_west|
    double kappa_tr_estimate = 0.0;
    bool upper_bound = false;     // splitting below grid resolution
};

// kappa_tr = delta_xi * |slope| / (4 nu0 beta)
double estimate_kappa_tr(double delta_xi_tesla, double slope_hz_per_tesla,
                         double nu0_hz, double beta);

// Reads the line centres of the two most magnetically sensitive classes
// (one per beam) off the spectrum and inverts for kappa_tr. A separation
// under half a grid step is reported as merged: estimate 0, upper bound.
SplittingResult estimate_splitting(const Spectrum& spec, double nu0_hz, double beta);

// RFC-4180-style CSV, header row, >= 14 significant digits.
void write_spectrum_csv(const std::string& path, const Spectrum& spec);

}  // namespace misim

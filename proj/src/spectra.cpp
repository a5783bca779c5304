#include "misim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace misim {

void VelocityDistribution::validate() const {
    if (!(half_width_mps > 0.0))
        throw std::invalid_argument("VelocityDistribution: half_width must be positive");
    if (quadrature_points < 21 || quadrature_points % 2 == 0)
        throw std::invalid_argument(
            "VelocityDistribution: quadrature_points must be >= 21 and odd");
    if (!(mass_kg > 0.0) || !(temperature_k > 0.0))
        throw std::invalid_argument("VelocityDistribution: mass and temperature must be positive");
}

double im_chi_point(const LambdaSystem& s, const AtomicConstants& c,
                    const DecayRates& rates, const FieldConfig& field,
                    const RhoPair& rho, double speed_mps) {
    BeamConfig beam{s.beam_direction == Direction::East ? speed_mps : -speed_mps};
    const Detunings det = detunings_sme(s, beam, field, c, rho);
    const SteadyState ss = steady_state_3(s, det, rates, field.omega_probe_hz,
                                          field.omega_coupling_hz);
    PrefactorInputs pref;
    pref.mu13 = s.probe_weight;
    return susceptibility(ss.rho, pref).imag();
}

ThermalPoint thermal_average(const LambdaSystem& s, const AtomicConstants& c,
                             const DecayRates& rates, const FieldConfig& field,
                             const RhoPair& rho, const VelocityDistribution& dist) {
    dist.validate();
    const QuadratureRule rule = gauss_legendre(dist.quadrature_points);
    ThermalPoint out;
    double norm = 0.0;
    for (int i = 0; i < dist.quadrature_points; ++i) {
        const double v = dist.center_mps + dist.half_width_mps * rule.nodes[i];
        const double wp = rule.weights[i] * dist.pdf(v) * dist.half_width_mps;
        out.integral += wp * im_chi_point(s, c, rates, field, rho, v);
        norm += wp;
    }
    out.mean = out.integral / norm;
    return out;
}

ConvergenceReport check_thermal_convergence(const LambdaSystem& s,
                                            const AtomicConstants& c,
                                            const DecayRates& rates,
                                            const FieldConfig& field,
                                            const RhoPair& rho,
                                            const VelocityDistribution& dist,
                                            double rel_tol) {
    ConvergenceReport r;
    r.value = thermal_average(s, c, rates, field, rho, dist).integral;
    VelocityDistribution fine = dist;
    fine.quadrature_points = 2 * dist.quadrature_points + 1;  // stays odd
    r.refined = thermal_average(s, c, rates, field, rho, fine).integral;
    const double scale = std::max({std::abs(r.value), std::abs(r.refined), 1e-300});
    r.rel_change = std::abs(r.refined - r.value) / scale;
    r.converged = r.rel_change <= rel_tol;
    return r;
}

namespace {
void normalize_curve(std::vector<double>& y, Normalization mode) {
    if (mode == Normalization::None || y.empty()) return;
    const double ymax = *std::max_element(y.begin(), y.end());
    if (mode == Normalization::PerCurveMax) {
        if (ymax != 0.0)
            for (double& v : y) v /= ymax;
        return;
    }
    const double ymin = *std::min_element(y.begin(), y.end());
    const double span = ymax - ymin;
    if (span == 0.0) return;
    for (double& v : y) v = (v - ymin) / span;
}
}  // namespace

Spectrum sweep_spectrum(const std::vector<LambdaSystem>& systems,
                        const AtomicConstants& c, const DecayRates& rates,
                        const FieldConfig& field_template, const KappaSet& kappas,
                        const SweepRequest& req) {
    if (req.points < 51)
        throw std::invalid_argument("sweep_spectrum: need at least 51 field points");
    if (!(req.b_max_tesla > req.b_min_tesla))
        throw std::invalid_argument("sweep_spectrum: b_max must exceed b_min");
    if (req.distribution) req.distribution->validate();

    Spectrum spec;
    spec.normalization = req.normalization;
    spec.thermal = req.distribution.has_value();
    spec.speed_mps = req.distribution ? req.distribution->center_mps : critical_velocity(c);
    spec.b_grid.resize(req.points);
    const double step = (req.b_max_tesla - req.b_min_tesla) / (req.points - 1);
    for (int i = 0; i < req.points; ++i) spec.b_grid[i] = req.b_min_tesla + i * step;

    const RhoPair rho = rho_pair(kappas);

    // one curve per contributing system, then accumulate into classes
    std::map<int, ClassCurve> classes;
    for (const auto& s : systems) {
        if (s.magnetically_inert) continue;
        std::vector<double> y(req.points);
        for (int i = 0; i < req.points; ++i) {
            FieldConfig f = field_template;
            f.b_tesla = spec.b_grid[i];
            try {
                if (req.distribution) {
                    y[i] = thermal_average(s, c, rates, f, rho, *req.distribution).integral;
                } else {
                    y[i] = im_chi_point(s, c, rates, f, rho, spec.speed_mps);
                }
            } catch (const std::exception& e) {
                std::ostringstream os;
                os << "sweep_spectrum: system " << s.label << " at B = " << f.b_tesla
                   << " T, v = " << spec.speed_mps << " m/s: " << e.what();
                throw std::runtime_error(os.str());
            }
        }
        normalize_curve(y, req.normalization == Normalization::PerCurveMax
                               ? Normalization::PerCurveMax
                               : Normalization::None);
        ClassCurve& cc = classes[s.unique_class];
        if (cc.absorption.empty()) {
            cc.class_id = s.unique_class;
            cc.two_photon_slope = two_photon_slope(s, c);
            cc.absorption.assign(req.points, 0.0);
        }
        cc.labels.push_back(s.label);
        cc.multiplicity += 1;
        for (int i = 0; i < req.points; ++i) cc.absorption[i] += y[i];
    }

    spec.total.assign(req.points, 0.0);
    for (auto& [id, cc] : classes) {
        for (int i = 0; i < req.points; ++i) spec.total[i] += cc.absorption[i];
        spec.classes.push_back(cc);
    }
    std::sort(spec.classes.begin(), spec.classes.end(),
              [](const ClassCurve& a, const ClassCurve& b) { return a.class_id < b.class_id; });

    if (req.normalization == Normalization::MinMax) {
        for (auto& cc : spec.classes) normalize_curve(cc.absorption, Normalization::MinMax);
        normalize_curve(spec.total, Normalization::MinMax);
    }
    return spec;
}

ExtremaResult extract_extrema(const std::vector<double>& b_grid,
                              const std::vector<double>& y, int expected) {
    const int n = (int)y.size();
    if (n != (int)b_grid.size() || n < 3)
        throw std::invalid_argument("extract_extrema: need matching grids of length >= 3");

    ExtremaResult out;
    int i = 1;
    while (i < n - 1) {
        if (y[i] < y[i - 1] && y[i] <= y[i + 1]) {
            // plateau of equal values: pick the member closest to B = 0
            int j = i;
            while (j + 1 < n - 1 && y[j + 1] == y[i]) ++j;
            if (y[j + 1] < y[i]) {  // still descending, not a minimum
                i = j + 1;
                continue;
            }
            int pick = i;
            for (int k = i; k <= j; ++k)
                if (std::abs(b_grid[k]) < std::abs(b_grid[pick])) pick = k;

            const double ym = y[pick - 1], y0 = y[pick], yp = y[std::min(pick + 1, n - 1)];
            const double denom = ym - 2.0 * y0 + yp;
            const double h = b_grid[1] - b_grid[0];
            double off = 0.0;
            if (denom > 0.0) off = 0.5 * (ym - yp) / denom;
            off = std::clamp(off, -0.5, 0.5);
            Extremum e;
            e.b_tesla = b_grid[pick] + off * h;
            e.depth = y0 - 0.25 * (ym - yp) * off;
            out.minima.push_back(e);
            i = j + 2;
        } else {
            ++i;
        }
    }
    if (out.minima.empty())
        throw std::runtime_error("extract_extrema: no local minimum (data is monotone on the grid)");
    out.merged = (int)out.minima.size() < expected;
    return out;
}

double estimate_kappa_tr(double delta_xi_tesla, double slope_hz_per_tesla,
                         double nu0_hz, double beta) {
    if (delta_xi_tesla < 0.0) return 0.0;
    return delta_xi_tesla * std::abs(slope_hz_per_tesla) / (4.0 * nu0_hz * beta);
}

SplittingResult estimate_splitting(const Spectrum& spec, double nu0_hz, double beta) {
    if (spec.classes.size() < 2)
        throw std::invalid_argument("estimate_splitting: need the two most sensitive classes");
    // classes 1 and 2 are the single-member, most magnetically sensitive pair
    const ClassCurve* east = nullptr;
    const ClassCurve* west = nullptr;
    for (const auto& cc : spec.classes) {
        if (cc.class_id == 1) east = &cc;
        if (cc.class_id == 2) west = &cc;
    }
    if (!east || !west)
        throw std::invalid_argument("estimate_splitting: classes 1 and 2 missing from spectrum");

    SplittingResult r;
    r.xi_east_tesla = extract_extrema(spec.b_grid, east->absorption).minima.front().b_tesla;
    r.xi_west_tesla = extract_extrema(spec.b_grid, west->absorption).minima.front().b_tesla;
    r.delta_xi_tesla = std::abs(r.xi_east_tesla - r.xi_west_tesla);
    const double step = spec.b_grid[1] - spec.b_grid[0];
    if (r.delta_xi_tesla < 0.5 * step) {
        r.upper_bound = true;
        r.kappa_tr_estimate = 0.0;
        return r;
    }
    r.kappa_tr_estimate =
        estimate_kappa_tr(r.delta_xi_tesla, east->two_photon_slope, nu0_hz, beta);
    return r;
}

void write_spectrum_csv(const std::string& path, const Spectrum& spec) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_spectrum_csv: cannot open '" + path + "'");
    out << "B_tesla";
    for (const auto& cc : spec.classes) out << ",class_" << cc.class_id;
    out << ",total\n";
    char buf[40];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.14e", v);
        out << buf;
    };
    for (std::size_t i = 0; i < spec.b_grid.size(); ++i) {
        put(spec.b_grid[i]);
        for (const auto& cc : spec.classes) {
            out << ",";
            put(cc.absorption[i]);
        }
        out << ",";
        put(spec.total[i]);
        out << "\n";
    }
}

}  // namespace misim

// quadrature.hpp - Gauss-Legendre nodes/weights and the 1-D thermal
// velocity density used for the Doppler average.
#pragma once

#include <vector>

namespace misim {

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K, exact

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;  // sum = 2
};

// Newton iteration on the Legendre polynomial. For odd n the middle node is
// snapped to exactly zero so a symmetric window always samples its centre.
QuadratureRule gauss_legendre(int n);

// Maxwell-Boltzmann density for one velocity component, 1/sqrt unit norm.
double maxwell_boltzmann_pdf(double v_mps, double mass_kg, double temperature_k);

}  // namespace misim

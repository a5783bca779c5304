#include "misim/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace misim {

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    const int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        // Chebyshev estimate of the i-th root, then Newton
        double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        if (n % 2 == 1 && i == m) z = 0.0;  // middle root is exact
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        if (n % 2 == 1 && i == m) z = 0.0;
        rule.nodes[i - 1] = -z;
        rule.nodes[n - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[i - 1] = w;
        rule.weights[n - i] = w;
    }
    return rule;
}

double maxwell_boltzmann_pdf(double v_mps, double mass_kg, double temperature_k) {
    const double a = mass_kg / (2.0 * kBoltzmann * temperature_k);
    return std::sqrt(a / std::numbers::pi) * std::exp(-a * v_mps * v_mps);
}

}  // namespace misim

// sme_photon.hpp - photon-sector Lorentz-violation algebra: the rank-4
// coefficient tensor with Riemann symmetries, its electrodynamic 3x3
// decomposition, wave-vector contractions and the phase-speed scalars
// rho and sigma for axis-aligned propagation.
#pragma once

#include <array>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

namespace misim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact

enum class Direction { East, West };

inline Direction opposite(Direction d) {
    return d == Direction::East ? Direction::West : Direction::East;
}

inline const char* to_string(Direction d) {
    return d == Direction::East ? "east" : "west";
}

// Rank-4 coefficient tensor, dense 4x4x4x4, index 0 = time.
// Valid tensors are antisymmetric within each index pair, symmetric under
// pair exchange and satisfy the cyclic (first Bianchi) identity.
class KFTensor {
public:
    KFTensor() : c_{} {}

    double& operator()(int a, int b, int m, int n) { return c_[idx(a, b, m, n)]; }
    double operator()(int a, int b, int m, int n) const { return c_[idx(a, b, m, n)]; }

    double max_abs() const;

    // Largest violation over all components of the four symmetry identities.
    double symmetry_violation() const;

    // Throws std::invalid_argument when the symmetries are violated beyond
    // tol * max(1, |k|_inf).
    void validate(double tol = 1e-12) const;

    bool is_zero() const;

private:
    static int idx(int a, int b, int m, int n) { return ((a * 4 + b) * 4 + m) * 4 + n; }
    std::array<double, 256> c_;
};

using Matrix3 = Eigen::Matrix3d;
using Matrix4 = Eigen::Matrix4d;

// The four electrodynamic matrices. kappa_HE is stored explicitly but must
// always equal -kappa_DB^T; the experimental combinations are derived.
struct KappaSet {
    Matrix3 kappa_DE = Matrix3::Zero();
    Matrix3 kappa_HB = Matrix3::Zero();
    Matrix3 kappa_DB = Matrix3::Zero();
    Matrix3 kappa_HE = Matrix3::Zero();

    static KappaSet zero() { return {}; }
    // kappa_DE = k I, kappa_HB = -k I, kappa_DB = 0: the trace sector alone.
    static KappaSet isotropic(double kappa_tr);

    Matrix3 kappa_e_plus() const { return 0.5 * (kappa_DE + kappa_HB); }
    Matrix3 kappa_e_minus() const {
        return 0.5 * (kappa_DE - kappa_HB) - (kappa_DE.trace() / 3.0) * Matrix3::Identity();
    }
    Matrix3 kappa_o_plus() const { return 0.5 * (kappa_DB + kappa_HE); }
    Matrix3 kappa_o_minus() const { return 0.5 * (kappa_DB - kappa_HE); }
    double kappa_tr() const { return kappa_DE.trace() / 3.0; }

    // Checks kappa_HE = -kappa_DB^T, symmetry of kappa_DE/kappa_HB and
    // tracelessness of kappa_DB (required for the cyclic identity of the
    // reconstructed tensor). Throws std::invalid_argument.
    void validate(double tol = 1e-12) const;

    nlohmann::json to_json() const;
    static KappaSet from_json(const nlohmann::json& j);
};

// Unit wave four-vector, contravariant components, p0 = 1, |spatial| = 1.
// Direction labels name the direction of travel: Easterly-traveling light
// has third spatial component +1.
struct WaveFourVector {
    std::array<double, 4> p_hat{1.0, 0.0, 0.0, 1.0};

    static WaveFourVector along(Direction d) {
        return {{1.0, 0.0, 0.0, d == Direction::East ? 1.0 : -1.0}};
    }
    void validate(double tol = 1e-12) const;
};

struct DispersionResult {
    Matrix4 k_ab = Matrix4::Zero();
    double rho = 0.0;
    double sigma2 = 0.0;   // clamped at 0 when negative within noise
    double u_plus = kSpeedOfLight;
    double u_minus = kSpeedOfLight;
};

enum class Branch { Plus, Minus, Mean };

// Builds the full tensor from the electrodynamic matrices and completes all
// components by the symmetry identities. Input is validated.
KFTensor kf_from_kappas(const KappaSet& k);

// Inverse of kf_from_kappas. Input symmetries validated to 1e-12.
KappaSet decompose_kf(const KFTensor& kf);

// k^{ab} = kF^{a m b n} p_m p_n, indices lowered with diag(+,-,-,-).
// Symmetric in (a, b) for valid tensors.
Matrix4 contract(const KFTensor& kf, const WaveFourVector& p);

// rho = -1/2 (k^00 - k^11 - k^22 - k^33)
double rho(const Matrix4& k_ab);

// sigma^2 = 1/2 sum s(a)s(b) (k^ab)^2 - rho^2 with s = (+,-,-,-) signs.
// Small negative results are clamped to zero; negatives beyond the noise
// scale throw std::runtime_error.
double sigma2(const Matrix4& k_ab, double rho_value);

// Closed forms for axis-aligned propagation, written directly in the kappa
// matrices; independent route used to cross-check the contraction.
// The kappa_DB cross terms change sign with the propagation direction.
double rho_axis_closed_form(const KappaSet& k, Direction d);
double sigma2_axis_closed_form(const KappaSet& k, Direction d);

DispersionResult dispersion(const KFTensor& kf, Direction d);

// u = c (1 + rho +- sigma); Branch::Mean returns c (1 + rho).
double phase_speed(const KFTensor& kf, Direction d, Branch branch = Branch::Mean);

// nu_E nu_W / nu_0^2 = 1 + 2 kappa_tr (beta^2 + 2 beta_sun . beta)
double classic_is_observable(double kappa_tr, double beta, double beta_sun_dot_beta);

}  // namespace misim

#include "misim/sme_photon.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace misim {

namespace {

// 3D Levi-Civita, indices 0..2
constexpr double eps3(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0.0;
    if ((i == 0 && j == 1 && k == 2) || (i == 1 && j == 2 && k == 0) ||
        (i == 2 && j == 0 && k == 1))
        return 1.0;
    return -1.0;
}

constexpr double metric_sign(int a) { return a == 0 ? 1.0 : -1.0; }

// One component of the tensor expressed in the kappa matrices. Handles all
// index orderings via the antisymmetry / pair-exchange signs.
double component_from_kappas(const KappaSet& k, int a, int b, int m, int n) {
    if (a == b || m == n) return 0.0;

    // normalize each pair to time-first, tracking the antisymmetry sign
    double sign = 1.0;
    if (b == 0) { std::swap(a, b); sign = -sign; }
    if (n == 0) { std::swap(m, n); sign = -sign; }

    const bool first_time = (a == 0);
    const bool second_time = (m == 0);

    if (first_time && second_time) {
        return sign * (-0.5 * k.kappa_DE(b - 1, n - 1));
    }
    if (first_time && !second_time) {
        // k^{0jpq} = 1/2 kappa_DB^{jk} eps_{kpq}
        double v = 0.0;
        for (int kk = 0; kk < 3; ++kk)
            v += 0.5 * k.kappa_DB(b - 1, kk) * eps3(kk, m - 1, n - 1);
        return sign * v;
    }
    if (!first_time && second_time) {
        // pair exchange onto the previous case
        double v = 0.0;
        for (int kk = 0; kk < 3; ++kk)
            v += 0.5 * k.kappa_DB(n - 1, kk) * eps3(kk, a - 1, b - 1);
        return sign * v;
    }
    // fully spatial: k^{pqrs} = 1/2 eps_{jpq} eps_{krs} kappa_HB^{jk}
    double v = 0.0;
    for (int j = 0; j < 3; ++j)
        for (int kk = 0; kk < 3; ++kk)
            v += 0.5 * eps3(j, a - 1, b - 1) * eps3(kk, m - 1, n - 1) * k.kappa_HB(j, kk);
    return sign * v;
}

void check_symmetric(const Matrix3& m, const char* name, double tol) {
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol) {
        std::ostringstream os;
        os << "KappaSet: " << name << " must be symmetric";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

double KFTensor::max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

double KFTensor::symmetry_violation() const {
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n) {
                    const double v = (*this)(a, b, m, n);
                    worst = std::max(worst, std::abs(v + (*this)(b, a, m, n)));
                    worst = std::max(worst, std::abs(v + (*this)(a, b, n, m)));
                    worst = std::max(worst, std::abs(v - (*this)(m, n, a, b)));
                    const double cyc = v + (*this)(a, m, n, b) + (*this)(a, n, b, m);
                    worst = std::max(worst, std::abs(cyc));
                }
    return worst;
}

void KFTensor::validate(double tol) const {
    const double scale = std::max(1.0, max_abs());
    if (symmetry_violation() > tol * scale)
        throw std::invalid_argument("KFTensor: Riemann-type symmetry identities violated");
}

bool KFTensor::is_zero() const { return max_abs() == 0.0; }

KappaSet KappaSet::isotropic(double kappa_tr) {
    KappaSet k;
    k.kappa_DE = kappa_tr * Matrix3::Identity();
    k.kappa_HB = -kappa_tr * Matrix3::Identity();
    return k;
}

void KappaSet::validate(double tol) const {
    const double scale = std::max({1.0, kappa_DE.cwiseAbs().maxCoeff(),
                                   kappa_HB.cwiseAbs().maxCoeff(),
                                   kappa_DB.cwiseAbs().maxCoeff()});
    const double t = tol * scale;
    if ((kappa_HE + kappa_DB.transpose()).cwiseAbs().maxCoeff() > t)
        throw std::invalid_argument(
            "KappaSet: kappa_HE must equal -transpose(kappa_DB)");
    check_symmetric(kappa_DE, "kappa_DE", t);
    check_symmetric(kappa_HB, "kappa_HB", t);
    // a traceful kappa_DB cannot satisfy the cyclic identity of the tensor
    if (std::abs(kappa_DB.trace()) > t)
        throw std::invalid_argument("KappaSet: kappa_DB must be traceless");
}

namespace {
nlohmann::json matrix_to_json(const Matrix3& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < 3; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

Matrix3 matrix_from_json(const nlohmann::json& j, const char* name) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument(std::string("KappaSet: ") + name + " must be a 3x3 array");
    Matrix3 m;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_array() || j[i].size() != 3)
            throw std::invalid_argument(std::string("KappaSet: ") + name + " must be a 3x3 array");
        for (int k = 0; k < 3; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}
}  // namespace

nlohmann::json KappaSet::to_json() const {
    nlohmann::json j;
    j["kappa_DE"] = matrix_to_json(kappa_DE);
    j["kappa_HB"] = matrix_to_json(kappa_HB);
    j["kappa_DB"] = matrix_to_json(kappa_DB);
    j["kappa_HE"] = matrix_to_json(kappa_HE);
    j["kappa_tr"] = kappa_tr();
    return j;
}

KappaSet KappaSet::from_json(const nlohmann::json& j) {
    KappaSet k;
    for (const char* f : {"kappa_DE", "kappa_HB", "kappa_DB", "kappa_HE"})
        if (!j.contains(f))
            throw std::invalid_argument(std::string("KappaSet: missing field '") + f + "'");
    k.kappa_DE = matrix_from_json(j.at("kappa_DE"), "kappa_DE");
    k.kappa_HB = matrix_from_json(j.at("kappa_HB"), "kappa_HB");
    k.kappa_DB = matrix_from_json(j.at("kappa_DB"), "kappa_DB");
    k.kappa_HE = matrix_from_json(j.at("kappa_HE"), "kappa_HE");
    if (j.contains("kappa_tr")) {
        const double stored = j.at("kappa_tr").get<double>();
        const double derived = k.kappa_tr();
        if (std::abs(stored - derived) > 1e-12 * std::max(1.0, std::abs(derived)))
            throw std::invalid_argument(
                "KappaSet: stored kappa_tr disagrees with trace(kappa_DE)/3");
    }
    k.validate();
    return k;
}

void WaveFourVector::validate(double tol) const {
    const double spatial = std::sqrt(p_hat[1] * p_hat[1] + p_hat[2] * p_hat[2] +
                                     p_hat[3] * p_hat[3]);
    if (std::abs(p_hat[0] - 1.0) > tol || std::abs(spatial - 1.0) > tol)
        throw std::invalid_argument("WaveFourVector: require p0 = 1 and unit spatial part");
}

KFTensor kf_from_kappas(const KappaSet& k) {
    k.validate();
    KFTensor kf;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n)
                    kf(a, b, m, n) = component_from_kappas(k, a, b, m, n);
    return kf;
}

KappaSet decompose_kf(const KFTensor& kf) {
    kf.validate();
    KappaSet k;
    for (int j = 0; j < 3; ++j)
        for (int kk = 0; kk < 3; ++kk) {
            k.kappa_DE(j, kk) = -2.0 * kf(0, j + 1, 0, kk + 1);
            double hb = 0.0;
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q)
                    for (int r = 0; r < 3; ++r)
                        for (int s = 0; s < 3; ++s)
                            hb += 0.5 * eps3(j, p, q) * eps3(kk, r, s) *
                                  kf(p + 1, q + 1, r + 1, s + 1);
            k.kappa_HB(j, kk) = hb;
            double db = 0.0;
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q)
                    db += kf(0, j + 1, p + 1, q + 1) * eps3(kk, p, q);
            k.kappa_DB(j, kk) = db;
        }
    k.kappa_HE = -k.kappa_DB.transpose();
    return k;
}

Matrix4 contract(const KFTensor& kf, const WaveFourVector& p) {
    p.validate();
    const std::array<double, 4> p_low{p.p_hat[0], -p.p_hat[1], -p.p_hat[2], -p.p_hat[3]};
    Matrix4 k = Matrix4::Zero();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double v = 0.0;
            for (int m = 0; m < 4; ++m) {
                if (p_low[m] == 0.0) continue;
                for (int n = 0; n < 4; ++n) {
                    if (p_low[n] == 0.0) continue;
                    v += kf(a, m, b, n) * p_low[m] * p_low[n];
                }
            }
            k(a, b) = v;
        }
    return k;
}

double rho(const Matrix4& k_ab) {
    return -0.5 * (k_ab(0, 0) - k_ab(1, 1) - k_ab(2, 2) - k_ab(3, 3));
}

double sigma2(const Matrix4& k_ab, double rho_value) {
    double sum = 0.0;
    double mag = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const double term = metric_sign(a) * metric_sign(b) * k_ab(a, b) * k_ab(a, b);
            sum += term;
            mag += std::abs(term);
        }
    const double s2 = 0.5 * sum - rho_value * rho_value;
    mag = 0.5 * mag + rho_value * rho_value;
    // noise floor: the fixed 1e-20 of the contract plus the cancellation
    // scale of the actual terms
    const double floor = std::max(1e-20, 64.0 * std::numeric_limits<double>::epsilon() * mag);
    if (s2 < -floor)
        throw std::runtime_error("sigma2: negative beyond numerical noise (inconsistent input)");
    return std::max(s2, 0.0);
}

double rho_axis_closed_form(const KappaSet& k, Direction d) {
    // East corresponds to the stored (1;0,0,+1) contraction; the kappa_DB
    // cross terms flip sign between the two directions.
    const double s = (d == Direction::West) ? 1.0 : -1.0;
    const Matrix3 de_hb = k.kappa_DE - k.kappa_HB;
    return -0.25 * (de_hb(0, 0) + de_hb(1, 1) +
                    s * (2.0 * k.kappa_DB(1, 0) - 2.0 * k.kappa_DB(0, 1)));
}

double sigma2_axis_closed_form(const KappaSet& k, Direction d) {
    const double s = (d == Direction::West) ? 1.0 : -1.0;
    const Matrix3& DE = k.kappa_DE;
    const Matrix3& HB = k.kappa_HB;
    const Matrix3 DB = s * k.kappa_DB;
    return (1.0 / 16.0) *
           (4 * DB(0, 0) * DB(0, 0) + 4 * DB(0, 1) * DB(0, 1) +
            8 * DB(0, 1) * DB(1, 0) + 4 * DB(1, 0) * DB(1, 0) -
            8 * DB(0, 0) * DB(1, 1) + 4 * DB(1, 1) * DB(1, 1) -
            4 * DB(0, 1) * DE(0, 0) - 4 * DB(1, 0) * DE(0, 0) + DE(0, 0) * DE(0, 0) +
            8 * DB(0, 0) * DE(1, 0) - 8 * DB(1, 1) * DE(1, 0) + 4 * DE(1, 0) * DE(1, 0) +
            4 * DB(0, 1) * DE(1, 1) + 4 * DB(1, 0) * DE(1, 1) -
            2 * DE(0, 0) * DE(1, 1) + DE(1, 1) * DE(1, 1) -
            4 * DB(0, 1) * HB(0, 0) - 4 * DB(1, 0) * HB(0, 0) +
            2 * DE(0, 0) * HB(0, 0) - 2 * DE(1, 1) * HB(0, 0) + HB(0, 0) * HB(0, 0) +
            8 * DB(0, 0) * HB(1, 0) - 8 * DB(1, 1) * HB(1, 0) +
            8 * DE(1, 0) * HB(1, 0) + 4 * HB(1, 0) * HB(1, 0) +
            4 * DB(0, 1) * HB(1, 1) + 4 * DB(1, 0) * HB(1, 1) -
            2 * DE(0, 0) * HB(1, 1) + 2 * DE(1, 1) * HB(1, 1) -
            2 * HB(0, 0) * HB(1, 1) + HB(1, 1) * HB(1, 1));
}

DispersionResult dispersion(const KFTensor& kf, Direction d) {
    DispersionResult r;
    r.k_ab = contract(kf, WaveFourVector::along(d));
    r.rho = rho(r.k_ab);
    r.sigma2 = sigma2(r.k_ab, r.rho);
    const double sigma = std::sqrt(r.sigma2);
    r.u_plus = kSpeedOfLight * (1.0 + r.rho + sigma);
    r.u_minus = kSpeedOfLight * (1.0 + r.rho - sigma);
    return r;
}

double phase_speed(const KFTensor& kf, Direction d, Branch branch) {
    const DispersionResult r = dispersion(kf, d);
    switch (branch) {
        case Branch::Plus: return r.u_plus;
        case Branch::Minus: return r.u_minus;
        case Branch::Mean: return kSpeedOfLight * (1.0 + r.rho);
    }
    return kSpeedOfLight;
}

double classic_is_observable(double kappa_tr, double beta, double beta_sun_dot_beta) {
    if (std::abs(beta) >= 1.0)
        throw std::invalid_argument("classic_is_observable: |beta| must be < 1");
    return 1.0 + 2.0 * kappa_tr * (beta * beta + 2.0 * beta_sun_dot_beta);
}

}  // namespace misim

#include "misim/liouville.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace misim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cplx = std::complex<double>;

int vec_index(int n, int i, int j) { return i * n + j; }

// -i [H, rho] part, row-major vectorization
void add_hamiltonian(MatrixXcd& L, const MatrixXcd& H) {
    const int n = (int)H.rows();
    const cplx mi(0.0, -1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                L(vec_index(n, i, j), vec_index(n, k, j)) += mi * H(i, k);
                L(vec_index(n, i, j), vec_index(n, i, k)) -= mi * H(k, j);
            }
}

struct DecayTables {
    Eigen::MatrixXd feed;   // population feed: drho_ii += feed(i,j) rho_jj
    Eigen::MatrixXd damp;   // coherence damping rates, (i,j), i != j
};

// Decay operator tables in angular units. Populations decay at Gamma and
// coherences at (Gamma31+Gamma32)/2 plus pure dephasing; the cross-block
// pairs carry the gamma41/52/63 pattern (mixed pairs get the mean).
DecayTables decay_tables(int n, const DecayRates& r) {
    const double G31 = kTwoPi * r.Gamma31_hz;
    const double G32 = kTwoPi * r.Gamma32_hz;
    const double Gt = G31 + G32;
    const double g21 = kTwoPi * r.gamma21_hz;
    const double g31 = kTwoPi * r.gamma31_hz;
    const double g32 = kTwoPi * r.gamma32_hz;

    DecayTables t;
    t.feed = Eigen::MatrixXd::Zero(n, n);
    t.damp = Eigen::MatrixXd::Zero(n, n);

    auto fill_block = [&](int o) {
        t.feed(o + 0, o + 2) += G31;
        t.feed(o + 1, o + 2) += G32;
        t.feed(o + 2, o + 2) -= Gt;
        t.damp(o + 1, o + 0) = g21;
        t.damp(o + 2, o + 0) = Gt / 2.0 + g31;
        t.damp(o + 2, o + 1) = Gt / 2.0 + g32;
    };
    fill_block(0);
    if (n == 6) {
        fill_block(3);
        const double gp[3] = {kTwoPi * r.gamma41_hz, kTwoPi * r.gamma52_hz,
                              kTwoPi * r.gamma63_hz};
        for (int m = 0; m < 3; ++m)
            for (int k = 0; k < 3; ++k) {
                double d = 0.5 * (gp[m] + gp[k]);
                if (m == 2) d += Gt / 2.0;
                if (k == 2) d += Gt / 2.0;
                t.damp(3 + m, k) = d;
            }
    }
    // mirror the lower-triangle rates
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) t.damp(j, i) = t.damp(i, j);
    return t;
}

MatrixXcd build_liouvillian(const MatrixXcd& H, const DecayRates& rates) {
    const int n = (int)H.rows();
    MatrixXcd L = MatrixXcd::Zero(n * n, n * n);
    add_hamiltonian(L, H);
    const DecayTables t = decay_tables(n, rates);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                for (int k = 0; k < n; ++k)
                    if (t.feed(i, k) != 0.0)
                        L(vec_index(n, i, i), vec_index(n, k, k)) += t.feed(i, k);
            } else {
                L(vec_index(n, i, j), vec_index(n, i, j)) -= t.damp(i, j);
            }
        }
    return L;
}

struct TraceConstraint {
    int replaced_row;          // population equation to drop
    int first, last;           // diagonal range the constraint sums over
    double value;
};

SteadyState solve_steady(const MatrixXcd& L,
                         const std::vector<TraceConstraint>& constraints,
                         const MatrixXcd& anchor) {
    const int N = (int)L.rows();
    const int n = (int)anchor.rows();

    const double scale = L.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        throw std::runtime_error("steady state: empty generator (no dynamics, no damping)");

    MatrixXcd A = L / scale;
    VectorXcd b = VectorXcd::Zero(N);
    for (const auto& c : constraints) {
        A.row(c.replaced_row).setZero();
        for (int k = c.first; k <= c.last; ++k) A(c.replaced_row, vec_index(n, k, k)) = 1.0;
        b(c.replaced_row) = c.value;
    }

    VectorXcd x0 = VectorXcd::Zero(N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x0(vec_index(n, i, j)) = anchor(i, j);

    Eigen::CompleteOrthogonalDecomposition<MatrixXcd> cod(A);
    cod.setThreshold(1e-10);
    const VectorXcd dx = cod.solve(b - A * x0);
    const VectorXcd x = x0 + dx;

    SteadyState out;
    out.degenerate = cod.rank() < N;
    out.rho = MatrixXcd(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.rho(i, j) = x(vec_index(n, i, j));
    out.rho = 0.5 * (out.rho + out.rho.adjoint()).eval();
    const double tr = out.rho.trace().real();
    if (!(std::abs(tr) > 1e-6))
        throw std::runtime_error("steady state: trace collapsed, solve is inconsistent");
    out.rho /= tr;

    VectorXcd xr(N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) xr(vec_index(n, i, j)) = out.rho(i, j);
    out.residual = (L * xr).norm() / L.norm();
    if (out.residual > 1e-10)
        throw std::runtime_error("steady state: residual exceeds 1e-10 of the generator norm");
    return out;
}

}  // namespace

void DecayRates::validate() const {
    for (double v : {Gamma31_hz, Gamma32_hz, gamma21_hz, gamma31_hz, gamma32_hz,
                     gamma41_hz, gamma52_hz, gamma63_hz})
        if (v < 0.0) throw std::invalid_argument("DecayRates: rates must be non-negative");
}

bool DecayRates::has_damping() const {
    return Gamma31_hz > 0.0 || Gamma32_hz > 0.0 || gamma21_hz > 0.0 ||
           gamma31_hz > 0.0 || gamma32_hz > 0.0;
}

void validate_density_matrix(const Eigen::MatrixXcd& rho, double herm_tol,
                             double trace_tol, double diag_tol, double psd_tol) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw std::runtime_error("density matrix: not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > trace_tol || std::abs(rho.trace().imag()) > trace_tol)
        throw std::runtime_error("density matrix: trace differs from 1");
    for (int i = 0; i < rho.rows(); ++i) {
        const double p = rho(i, i).real();
        if (p < -diag_tol || p > 1.0 + diag_tol)
            throw std::runtime_error("density matrix: population outside [0, 1]");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw std::runtime_error("density matrix: not positive semidefinite");
}

Eigen::Matrix3cd hamiltonian_3(const Detunings& det, double omega_p_hz,
                               double omega_c_hz) {
    Eigen::Matrix3cd H;
    const double wp = kTwoPi * omega_p_hz, wc = kTwoPi * omega_c_hz;
    const double wD = kTwoPi * det.Delta_hz, wd = kTwoPi * det.delta_hz;
    H << 0.0, 0.0, wp / 2.0,
         0.0, -wd, wc / 2.0,
         wp / 2.0, wc / 2.0, -wD;
    return H;
}

SteadyState steady_state_3(const Detunings& det, const DecayRates& rates,
                           double omega_p_hz, double omega_c_hz) {
    rates.validate();
    if (!rates.has_damping())
        throw std::invalid_argument(
            "steady_state_3: need a decay channel or dephasing for a unique steady state");
    const MatrixXcd L = build_liouvillian(hamiltonian_3(det, omega_p_hz, omega_c_hz), rates);
    MatrixXcd anchor = MatrixXcd::Zero(3, 3);
    anchor(0, 0) = 1.0;  // population starts in the true ground state
    return solve_steady(L, {{vec_index(3, 0, 0), 0, 2, 1.0}}, anchor);
}

SteadyState steady_state_3(const LambdaSystem& s, const Detunings& det,
                           const DecayRates& rates, double omega_p_hz,
                           double omega_c_hz) {
    return steady_state_3(det, rates, omega_p_hz * s.probe_weight,
                          omega_c_hz * s.coupling_weight);
}

namespace {
SteadyState steady_state_6_core(const Eigen::Matrix3cd& block_a,
                                const Eigen::Matrix3cd& block_b,
                                const DecayRates& rates) {
    rates.validate();
    if (!rates.has_damping())
        throw std::invalid_argument(
            "steady_state_6: need a decay channel or dephasing for a unique steady state");
    MatrixXcd H = MatrixXcd::Zero(6, 6);
    H.block<3, 3>(0, 0) = block_a;
    H.block<3, 3>(3, 3) = block_b;
    const MatrixXcd L = build_liouvillian(H, rates);
    MatrixXcd anchor = MatrixXcd::Zero(6, 6);
    anchor(0, 0) = 0.5;
    anchor(3, 3) = 0.5;
    return solve_steady(L,
                        {{vec_index(6, 0, 0), 0, 2, 0.5}, {vec_index(6, 3, 3), 3, 5, 0.5}},
                        anchor);
}
}  // namespace

SteadyState steady_state_6(const Detunings& det_a, const Detunings& det_b,
                           const DecayRates& rates, double omega_p_hz,
                           double omega_c_hz) {
    return steady_state_6_core(hamiltonian_3(det_a, omega_p_hz, omega_c_hz),
                               hamiltonian_3(det_b, omega_p_hz, omega_c_hz), rates);
}

SteadyState steady_state_6(const LambdaSystem& sys_a, const LambdaSystem& sys_b,
                           const Detunings& det_a, const Detunings& det_b,
                           const DecayRates& rates, double omega_p_hz,
                           double omega_c_hz) {
    return steady_state_6_core(
        hamiltonian_3(det_a, omega_p_hz * sys_a.probe_weight,
                      omega_c_hz * sys_a.coupling_weight),
        hamiltonian_3(det_b, omega_p_hz * sys_b.probe_weight,
                      omega_c_hz * sys_b.coupling_weight),
        rates);
}

std::complex<double> susceptibility(const Eigen::MatrixXcd& rho,
                                    const PrefactorInputs& pref) {
    const double s = pref.scale();
    if (rho.rows() == 3) return s * pref.mu13 * rho(0, 2);
    if (rho.rows() == 6)
        return s * (pref.mu13 * rho(0, 2) + pref.mu46 * rho(3, 5) +
                    pref.mu23 * rho(1, 2) + pref.mu56 * rho(4, 5));
    throw std::invalid_argument("susceptibility: expected a 3x3 or 6x6 density matrix");
}

}  // namespace misim

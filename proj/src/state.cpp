#include "he6/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace he6 {

namespace {

constexpr double kNormTol = 1e-6;

void check_qubit(int qubit, int n) {
  if (qubit < 1 || qubit > n) {
    throw std::invalid_argument("qubit " + std::to_string(qubit) +
                                " out of range for " + std::to_string(n) + " qubits");
  }
}

// Bit position of qubit q in a basis index (qubit 1 = MSB).
int bitpos(int qubit, int n) { return n - qubit; }

}  // namespace

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 20) {
    throw std::invalid_argument("state vector needs 1..20 qubits");
  }
  amps_ = Eigen::VectorXcd::Zero(1 << n_qubits);
  amps_(0) = 1.0;
}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > 20) {
    throw std::invalid_argument("state vector needs 1..20 qubits");
  }
  if (amps_.size() != (1 << n_qubits)) {
    throw std::invalid_argument("amplitude count does not match qubit count");
  }
  if (std::abs(amps_.norm() - 1.0) > kNormTol) {
    throw std::invalid_argument("state vector is not normalized (norm " +
                                std::to_string(amps_.norm()) + ")");
  }
}

StateVector StateVector::computational(int n_qubits, uint32_t bits) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(1 << n_qubits);
  if (bits >= (1u << n_qubits)) throw std::invalid_argument("basis index out of range");
  a(bits) = 1.0;
  return {n_qubits, std::move(a)};
}

StateVector StateVector::all_plus(int n_qubits) {
  const int dim = 1 << n_qubits;
  Eigen::VectorXcd a = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim)));
  return {n_qubits, std::move(a)};
}

DensityMatrix::DensityMatrix(const StateVector& psi) : n_(psi.n_qubits()) {
  m_ = psi.amps() * psi.amps().adjoint();
}

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd matrix)
    : n_(n_qubits), m_(std::move(matrix)) {
  const Eigen::Index dim = 1 << n_qubits;
  if (m_.rows() != dim || m_.cols() != dim) {
    throw std::invalid_argument("density matrix dimension does not match qubit count");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const Eigen::Index dim = 1 << n_qubits;
  return {n_qubits, Eigen::MatrixXcd::Identity(dim, dim) / double(dim)};
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

void DensityMatrix::validate(double tol_herm, double tol_trace, double tol_psd) const {
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol_herm) {
    throw std::runtime_error("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace().real() - 1.0) > tol_trace || std::abs(m_.trace().imag()) > tol_trace) {
    throw std::runtime_error("density matrix trace differs from 1");
  }
  if (eigenvalues().minCoeff() < -tol_psd) {
    throw std::runtime_error("density matrix has a negative eigenvalue");
  }
}

GateSpec GateSpec::u2(int q, const Eigen::Matrix2cd& u) {
  GateSpec g{Kind::U2, q};
  g.custom = u;
  if ((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("custom gate is not unitary");
  }
  return g;
}

Eigen::Matrix2cd mat_h() {
  Eigen::Matrix2cd m;
  const double s = 1.0 / std::numbers::sqrt2;
  m << s, s, s, -s;
  return m;
}

Eigen::Matrix2cd mat_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd mat_y() {
  Eigen::Matrix2cd m;
  m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
  return m;
}

Eigen::Matrix2cd mat_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd mat_rx(double alpha) {
  const double c = std::cos(alpha / 2), s = std::sin(alpha / 2);
  Eigen::Matrix2cd m;
  m << cplx(c, 0), cplx(0, -s), cplx(0, -s), cplx(c, 0);
  return m;
}

Eigen::Matrix2cd mat_rz(double beta) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::exp(cplx(0, -beta / 2));
  m(1, 1) = std::exp(cplx(0, beta / 2));
  return m;
}

Eigen::Matrix2cd GateSpec::matrix() const {
  switch (kind) {
    case Kind::H: return mat_h();
    case Kind::X: return mat_x();
    case Kind::Y: return mat_y();
    case Kind::Z: return mat_z();
    case Kind::Rx: return mat_rx(angle);
    case Kind::Rz: return mat_rz(angle);
    case Kind::U2: return custom;
    default: throw std::logic_error("matrix() called on a two-qubit gate");
  }
}

StateVector apply_gate(const StateVector& psi, const GateSpec& gate) {
  const int n = psi.n_qubits();
  check_qubit(gate.q1, n);
  Eigen::VectorXcd a = psi.amps();

  if (gate.is_two_qubit()) {
    check_qubit(gate.q2, n);
    if (gate.q1 == gate.q2) {
      throw std::invalid_argument("control and target qubits coincide");
    }
    const uint32_t cbit = 1u << bitpos(gate.q1, n);
    const uint32_t tbit = 1u << bitpos(gate.q2, n);
    const uint32_t dim = static_cast<uint32_t>(a.size());
    if (gate.kind == GateSpec::Kind::CZ) {
      for (uint32_t i = 0; i < dim; ++i) {
        if ((i & cbit) && (i & tbit)) a(i) = -a(i);
      }
    } else {  // CX
      for (uint32_t i = 0; i < dim; ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(a(i), a(i | tbit));
      }
    }
    return {n, std::move(a)};
  }

  const Eigen::Matrix2cd u = gate.matrix();
  const uint32_t qbit = 1u << bitpos(gate.q1, n);
  const uint32_t dim = static_cast<uint32_t>(a.size());
  for (uint32_t i = 0; i < dim; ++i) {
    if (i & qbit) continue;
    const cplx a0 = a(i), a1 = a(i | qbit);
    a(i) = u(0, 0) * a0 + u(0, 1) * a1;
    a(i | qbit) = u(1, 0) * a0 + u(1, 1) * a1;
  }
  return {n, std::move(a)};
}

StateVector apply_gates(const StateVector& psi, const std::vector<GateSpec>& gates) {
  StateVector out = psi;
  for (const auto& g : gates) out = apply_gate(out, g);
  return out;
}

QubitBasis QubitBasis::computational() {
  QubitBasis b;
  b.b0 << 1, 0;
  b.b1 << 0, 1;
  return b;
}

QubitBasis QubitBasis::diagonal() {
  QubitBasis b;
  const double s = 1.0 / std::numbers::sqrt2;
  b.b0 << s, s;
  b.b1 << s, -s;
  return b;
}

void QubitBasis::validate(double tol) const {
  if (std::abs(b0.norm() - 1.0) > tol || std::abs(b1.norm() - 1.0) > tol ||
      std::abs(b0.dot(b1)) > tol) {
    throw std::invalid_argument("measurement basis is not orthonormal");
  }
}

namespace {

// Unnormalized projection <b_s| psi at `qubit`, qubit removed.
Eigen::VectorXcd project_component(const StateVector& psi, int qubit,
                                   const Eigen::Vector2cd& b) {
  const int n = psi.n_qubits();
  const int low_bits = n - qubit;               // qubits after `qubit`
  const uint32_t low_dim = 1u << low_bits;
  const uint32_t high_dim = 1u << (qubit - 1);  // qubits before `qubit`
  Eigen::VectorXcd out(Eigen::Index(high_dim) << low_bits);
  for (uint32_t hi = 0; hi < high_dim; ++hi) {
    for (uint32_t lo = 0; lo < low_dim; ++lo) {
      const uint32_t base = (hi << (low_bits + 1)) | lo;
      out((hi << low_bits) | lo) = std::conj(b(0)) * psi.amp(base) +
                                   std::conj(b(1)) * psi.amp(base | low_dim);
    }
  }
  return out;
}

}  // namespace

std::pair<double, double> outcome_probabilities(const StateVector& psi, int qubit,
                                                const QubitBasis& basis) {
  check_qubit(qubit, psi.n_qubits());
  basis.validate();
  const double p0 = project_component(psi, qubit, basis.b0).squaredNorm();
  const double p1 = project_component(psi, qubit, basis.b1).squaredNorm();
  return {p0, p1};
}

MeasureResult measure_qubit(const StateVector& psi, int qubit, const QubitBasis& basis,
                            int forced_outcome) {
  check_qubit(qubit, psi.n_qubits());
  basis.validate();
  if (psi.n_qubits() < 2) {
    throw std::invalid_argument("measurement would leave an empty register");
  }
  if (forced_outcome != 0 && forced_outcome != 1) {
    throw std::invalid_argument("forced outcome must be 0 or 1");
  }
  Eigen::VectorXcd proj = project_component(
      psi, qubit, forced_outcome == 0 ? basis.b0 : basis.b1);
  const double p = proj.squaredNorm();
  if (p < 1e-12) {
    throw std::runtime_error("forced measurement outcome has vanishing probability");
  }
  proj /= std::sqrt(p);
  return {forced_outcome, p, StateVector(psi.n_qubits() - 1, std::move(proj))};
}

MeasureResult measure_qubit(const StateVector& psi, int qubit, const QubitBasis& basis,
                            std::mt19937_64& rng) {
  const auto [p0, p1] = outcome_probabilities(psi, qubit, basis);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int outcome = (u(rng) < p0 / (p0 + p1)) ? 0 : 1;
  return measure_qubit(psi, qubit, basis, outcome);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<int>& keep) {
  const int n = rho.n_qubits();
  if (keep.empty()) throw std::invalid_argument("partial trace must keep at least one qubit");
  for (int q : keep) check_qubit(q, n);

  std::vector<int> kept(keep.begin(), keep.end());  // ascending
  std::vector<int> traced;
  for (int q = 1; q <= n; ++q) {
    if (!keep.count(q)) traced.push_back(q);
  }
  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());

  // Compose a full index from a kept-subindex and a traced-subindex,
  // preserving the original qubit order inside each group.
  auto compose = [&](uint32_t kbits, uint32_t tbits) {
    uint32_t idx = 0;
    for (int i = 0; i < nk; ++i) {
      if (kbits & (1u << (nk - 1 - i))) idx |= 1u << bitpos(kept[i], n);
    }
    for (int i = 0; i < nt; ++i) {
      if (tbits & (1u << (nt - 1 - i))) idx |= 1u << bitpos(traced[i], n);
    }
    return idx;
  };

  const uint32_t kdim = 1u << nk;
  const uint32_t tdim = 1u << nt;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kdim, kdim);
  for (uint32_t r = 0; r < kdim; ++r) {
    for (uint32_t c = 0; c < kdim; ++c) {
      cplx acc = 0;
      for (uint32_t t = 0; t < tdim; ++t) {
        acc += rho.matrix()(compose(r, t), compose(c, t));
      }
      out(r, c) = acc;
    }
  }
  return {nk, std::move(out)};
}

double fidelity(const DensityMatrix& rho, const StateVector& target) {
  if (rho.n_qubits() != target.n_qubits()) {
    throw std::invalid_argument("fidelity arguments have different qubit counts");
  }
  return (target.amps().adjoint() * rho.matrix() * target.amps())(0, 0).real();
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(overlap(a, b));
}

cplx overlap(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("overlap arguments have different qubit counts");
  }
  return a.amps().dot(b.amps());
}

bool state_equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                                    double tol) {
  return std::abs(overlap(a, b)) >= 1.0 - tol;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const int n = a.n_qubits() + b.n_qubits();
  Eigen::VectorXcd out(Eigen::Index(1) << n);
  const uint32_t bd = static_cast<uint32_t>(b.dim());
  for (uint32_t i = 0; i < static_cast<uint32_t>(a.dim()); ++i) {
    for (uint32_t j = 0; j < bd; ++j) out(i * bd + j) = a.amp(i) * b.amp(j);
  }
  return {n, std::move(out)};
}

StateVector swap2(const StateVector& psi) {
  if (psi.n_qubits() != 2) throw std::invalid_argument("swap2 expects a 2-qubit state");
  Eigen::VectorXcd a(4);
  a << psi.amp(0), psi.amp(2), psi.amp(1), psi.amp(3);
  return {2, std::move(a)};
}

}  // namespace he6

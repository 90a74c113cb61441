#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <set>
#include <vector>

namespace he6 {

using cplx = std::complex<double>;

// Dense pure state on n qubits, qubits numbered 1..n with qubit 1 as the
// most significant bit of the computational-basis index.
class StateVector {
public:
  explicit StateVector(int n_qubits);  // |0...0>
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

  static StateVector computational(int n_qubits, uint32_t bits);
  static StateVector all_plus(int n_qubits);

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  cplx amp(uint32_t basis_index) const { return amps_(basis_index); }
  double norm() const { return amps_.norm(); }

private:
  int n_;
  Eigen::VectorXcd amps_;
};

// Dense density matrix on n qubits, same index convention as StateVector.
class DensityMatrix {
public:
  explicit DensityMatrix(const StateVector& psi);
  DensityMatrix(int n_qubits, Eigen::MatrixXcd matrix);

  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }
  double purity() const;
  Eigen::VectorXd eigenvalues() const;

  // Hermiticity / unit trace / positivity contract. Throws std::runtime_error.
  void validate(double tol_herm = 1e-10, double tol_trace = 1e-10,
                double tol_psd = 1e-8) const;

private:
  int n_;
  Eigen::MatrixXcd m_;
};

// Gate description. Single-qubit kinds act on q1; CZ and CX act on (q1, q2)
// with q1 the control. Kind::U2 carries an arbitrary single-qubit unitary.
struct GateSpec {
  enum class Kind { H, X, Y, Z, CZ, CX, Rx, Rz, U2 };

  Kind kind;
  int q1 = 0;
  int q2 = 0;
  double angle = 0.0;
  Eigen::Matrix2cd custom = Eigen::Matrix2cd::Identity();

  static GateSpec h(int q) { return {Kind::H, q}; }
  static GateSpec x(int q) { return {Kind::X, q}; }
  static GateSpec y(int q) { return {Kind::Y, q}; }
  static GateSpec z(int q) { return {Kind::Z, q}; }
  static GateSpec cz(int control, int target) { return {Kind::CZ, control, target}; }
  static GateSpec cx(int control, int target) { return {Kind::CX, control, target}; }
  static GateSpec rx(int q, double alpha) { return {Kind::Rx, q, 0, alpha}; }
  static GateSpec rz(int q, double beta) { return {Kind::Rz, q, 0, beta}; }
  static GateSpec u2(int q, const Eigen::Matrix2cd& u);

  bool is_two_qubit() const { return kind == Kind::CZ || kind == Kind::CX; }
  Eigen::Matrix2cd matrix() const;  // single-qubit kinds only
};

// Fixed single-qubit matrices and rotations R_x(a) = exp(-i a X / 2),
// R_z(b) = exp(-i b Z / 2).
Eigen::Matrix2cd mat_h();
Eigen::Matrix2cd mat_x();
Eigen::Matrix2cd mat_y();
Eigen::Matrix2cd mat_z();
Eigen::Matrix2cd mat_rx(double alpha);
Eigen::Matrix2cd mat_rz(double beta);

StateVector apply_gate(const StateVector& psi, const GateSpec& gate);
StateVector apply_gates(const StateVector& psi, const std::vector<GateSpec>& gates);

// Orthonormal single-qubit measurement basis; b0 is the outcome-0 vector.
struct QubitBasis {
  Eigen::Vector2cd b0;
  Eigen::Vector2cd b1;

  static QubitBasis computational();
  static QubitBasis diagonal();  // {|+>,|->}
  void validate(double tol = 1e-12) const;
};

struct MeasureResult {
  int outcome;         // 0 or 1
  double probability;  // of the reported outcome
  StateVector post;    // renormalized state with the measured qubit removed
};

// Projective measurement of one qubit. The forced variant deterministically
// selects the outcome and reports its probability (throws if it vanishes).
MeasureResult measure_qubit(const StateVector& psi, int qubit, const QubitBasis& basis,
                            int forced_outcome);
MeasureResult measure_qubit(const StateVector& psi, int qubit, const QubitBasis& basis,
                            std::mt19937_64& rng);

// Probabilities of both outcomes without collapsing.
std::pair<double, double> outcome_probabilities(const StateVector& psi, int qubit,
                                                const QubitBasis& basis);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<int>& keep);

// Tr[rho |target><target|]
double fidelity(const DensityMatrix& rho, const StateVector& target);
// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

cplx overlap(const StateVector& a, const StateVector& b);
bool state_equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                                    double tol = 1e-10);

// a (x) b; a's qubits become 1..na, b's become na+1..na+nb.
StateVector tensor(const StateVector& a, const StateVector& b);

// Swap the two qubits of a 2-qubit state.
StateVector swap2(const StateVector& psi);

}  // namespace he6

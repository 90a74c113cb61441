#pragma once

#include <map>
#include <string>
#include <vector>

#include "he6/graph.hpp"
#include "he6/pauli.hpp"
#include "he6/state.hpp"

namespace he6 {

struct BellTerm {
  PauliString op;  // phase +1 or -1 folded into `sign`
  int sign;
};

// A Bell expression |sum_i sign_i <op_i>| together with its bound over
// deterministic local-hidden-variable assignments.
struct BellExpression {
  std::string name;
  std::vector<BellTerm> terms;
  double lhv_bound;
  Frame frame;
};

// g1 (1+g2)(1+g3)(1+g4)(1+g5) g6 expanded into 16 terms; bound 4.
BellExpression bell_b(Frame frame = Frame::Cluster);
// g1 (1+g2)(1+g4), qubits 3 and 6 never touched; bound 2.
BellExpression bell_beta(Frame frame = Frame::Cluster);
// (1+g3)(1+g5) g6, qubits 1 and 4 never touched; bound 2.
BellExpression bell_beta_prime(Frame frame = Frame::Cluster);

// |sum_i sign_i <op_i>| on a state declared to live in `state_frame`;
// throws std::invalid_argument when the frames do not match.
double bell_value(const BellExpression& expr, const StateVector& psi, Frame state_frame);
double bell_value(const BellExpression& expr, const DensityMatrix& rho, Frame state_frame);

struct LhvResult {
  double maximum;
  int n_observables;
  // maximizing deterministic assignment, (qubit, axis) -> +-1
  std::map<std::pair<int, char>, int> assignment;
};

// Exact maximum of |sum_i sign_i prod v(q, P_q)| over independent +-1
// assignments to every single-qubit Pauli observable appearing in the
// expression; exhaustive over all 2^m assignments, m <= 24.
LhvResult lhv_maximum(const BellExpression& expr);

// Mean of the 2^n stabilizing-operator expectations (the group must contain
// the identity as its first element).
double stabilizer_fidelity(const StateVector& psi,
                           const std::vector<StabilizerGroupElement>& group);
double stabilizer_fidelity(const DensityMatrix& rho,
                           const std::vector<StabilizerGroupElement>& group);

// 1 - 2F; negative certifies genuine multipartite entanglement.
double witness(double fidelity);

// b / 4, the violation ratio against the 16-term bound.
double degree_of_nonlocality(double b_value);

struct StabilizerRow {
  std::string subset;
  double expectation;
  double uncertainty;
  bool in_b = false;
  bool in_beta = false;
  bool in_beta_prime = false;
};

struct StabilizerReport {
  std::vector<StabilizerRow> rows;
  double fidelity = 0;
  double witness = 0;
  double bell_b = 0;
  double beta = 0;
  double beta_prime = 0;
  double degree_of_nonlocality = 0;
};

// Recompute the aggregate quantities from a bundled 64-row measurement table.
StabilizerReport ingest_table3(const std::string& csv_path);

// The same aggregates computed from a simulated state against the lab-frame
// stabilizer group.
StabilizerReport report_for(const DensityMatrix& rho);
StabilizerReport report_for(const StateVector& psi);

}  // namespace he6

#pragma once

#include <map>
#include <optional>
#include <string>

#include "he6/graph.hpp"
#include "he6/pauli.hpp"
#include "he6/state.hpp"

namespace he6 {

// The three degrees of freedom of the two-photon register and the fixed
// DOF -> qubit assignment:
//   c  (E/I cone momentum)   -> qubits 1 (photon A) and 4 (photon B)
//   pi (H/V polarization)    -> qubits 2 (A) and 5 (B)
//   k  (r/l linear momentum) -> qubits 3 (A) and 6 (B)
// with E, H, r denoting |0> and I, V, l denoting |1>.
enum class Dof { C, Pi, K };

struct DofMapping {
  static std::pair<int, int> qubits(Dof d);  // (photon A qubit, photon B qubit)
  static char zero_label(Dof d);
  static char one_label(Dof d);
  static std::string name(Dof d);            // "c", "pi", "k"
  static Dof parse(const std::string& name);
};

enum class BellFamily { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

struct BellStateId {
  BellFamily family;
  Dof dof;
};

std::string bell_family_name(BellFamily f);   // "phi+", "phi-", "psi+", "psi-"
BellFamily parse_bell_family(const std::string& name);

// Two-qubit Bell state (AB qubit order).
StateVector bell_state(BellFamily f);

// Projection targets for one DOF pair, e.g. "EE", "rl", "HV", "++".
// Per-photon characters: E,H,r -> |0>; I,V,l -> |1>; +,- -> diagonal states.
struct BranchSelector {
  std::map<Dof, std::string> values;  // exactly the constrained DOFs

  BranchSelector() = default;
  BranchSelector(Dof d1, std::string v1, Dof d2, std::string v2);
  Eigen::Vector2cd photon_state(Dof d, int photon /*0=A,1=B*/) const;
};

// Graph with edges 1-4, 2-5, 3-6 (one edge per DOF pair).
GraphState he6_graph();

// The linear-cluster graph: the three DOF edges plus 1-2 and 5-6, i.e. the
// six-vertex path 4-1-2-5-6-3.
GraphState lc6_graph();

// Per-qubit transform H2, X3 H3, H4, Z5 relating the cluster and laboratory
// frames.
FrameTransform lab_frame_transform();

// Lab-frame generators of the lc6 cluster state.
StabilizerSet lc6_tilde_stabilizers();

// (1/sqrt2)(|EE>+|II>) x (1/sqrt2)(|HH>-|VV>) x (1/sqrt2)(|rl>+|lr>)
StateVector build_he6();

// CX_12 CZ_65 applied to build_he6().
StateVector build_lc6_tilde();

// Cluster-frame state of lc6_graph().
StateVector build_lc6();

// The three four-term factorizations of the lab-frame cluster state: the
// separable basis runs over two DOFs and the remaining DOF carries Bell
// states.
enum class Factorization { BellInPolarization, BellInMomentumK, BellInCone };
StateVector factorization(Factorization which);

// Bell state carried by `output_dof` once the other two DOFs are projected
// onto the selector. Throws std::runtime_error for a vanishing branch and
// std::domain_error if the conditional state is not a Bell state.
BellStateId conditional_bell(const BranchSelector& selector, Dof output_dof);

// Conditional two-qubit pure state on the output DOF pair (A qubit first).
StateVector project_branch(const StateVector& psi, const BranchSelector& selector,
                           Dof output_dof, double* branch_probability = nullptr);

// Projector |sel><sel| extended over all six qubits is pure: this returns the
// product state with `a` and `b` on the output DOF pair and the selector
// values elsewhere.
StateVector branch_product_state(const BranchSelector& selector, Dof output_dof,
                                 const Eigen::Vector2cd& a, const Eigen::Vector2cd& b);

// Verifies CX_ij H_j == H_j CZ_ij as 4x4 matrices, on random two-qubit
// states, and the equivalent full six-qubit construction chain.
bool cx_h_cz_identity_check();

// "EHr,EHl"-style label of a six-qubit computational basis index.
std::string basis_label(uint32_t index);

}  // namespace he6

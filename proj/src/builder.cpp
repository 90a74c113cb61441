#include "he6/builder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace he6 {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

Eigen::Vector2cd ket0() { return {cplx(1, 0), cplx(0, 0)}; }
Eigen::Vector2cd ket1() { return {cplx(0, 0), cplx(1, 0)}; }
Eigen::Vector2cd ket_plus() { return {cplx(kInvSqrt2, 0), cplx(kInvSqrt2, 0)}; }
Eigen::Vector2cd ket_minus() { return {cplx(kInvSqrt2, 0), cplx(-kInvSqrt2, 0)}; }

// 4-vector of a two-qubit product/Bell state in pair order (A,B).
Eigen::Vector4cd bell4(BellFamily f) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (f) {
    case BellFamily::PhiPlus: v(0) = kInvSqrt2; v(3) = kInvSqrt2; break;
    case BellFamily::PhiMinus: v(0) = kInvSqrt2; v(3) = -kInvSqrt2; break;
    case BellFamily::PsiPlus: v(1) = kInvSqrt2; v(2) = kInvSqrt2; break;
    case BellFamily::PsiMinus: v(1) = kInvSqrt2; v(2) = -kInvSqrt2; break;
  }
  return v;
}

// Assemble a six-qubit state from per-DOF pair amplitudes: the c pair lives
// on qubits (1,4), pi on (2,5), k on (3,6).
StateVector from_dof_pairs(const Eigen::Vector4cd& c_pair, const Eigen::Vector4cd& pi_pair,
                           const Eigen::Vector4cd& k_pair) {
  Eigen::VectorXcd amps(64);
  for (uint32_t idx = 0; idx < 64; ++idx) {
    const int q1 = (idx >> 5) & 1, q2 = (idx >> 4) & 1, q3 = (idx >> 3) & 1;
    const int q4 = (idx >> 2) & 1, q5 = (idx >> 1) & 1, q6 = idx & 1;
    amps(idx) = c_pair(q1 * 2 + q4) * pi_pair(q2 * 2 + q5) * k_pair(q3 * 2 + q6);
  }
  return {6, std::move(amps)};
}

Eigen::Vector2cd photon_char_state(Dof d, char c) {
  switch (c) {
    case '+': if (d != Dof::Pi) break; return ket_plus();
    case '-': if (d != Dof::Pi) break; return ket_minus();
    default:
      if (c == DofMapping::zero_label(d)) return ket0();
      if (c == DofMapping::one_label(d)) return ket1();
      break;
  }
  throw std::invalid_argument(std::string("label '") + c + "' is not valid for DOF " +
                              DofMapping::name(d));
}

}  // namespace

std::pair<int, int> DofMapping::qubits(Dof d) {
  switch (d) {
    case Dof::C: return {1, 4};
    case Dof::Pi: return {2, 5};
    case Dof::K: return {3, 6};
  }
  throw std::logic_error("unreachable");
}

char DofMapping::zero_label(Dof d) {
  switch (d) {
    case Dof::C: return 'E';
    case Dof::Pi: return 'H';
    case Dof::K: return 'r';
  }
  throw std::logic_error("unreachable");
}

char DofMapping::one_label(Dof d) {
  switch (d) {
    case Dof::C: return 'I';
    case Dof::Pi: return 'V';
    case Dof::K: return 'l';
  }
  throw std::logic_error("unreachable");
}

std::string DofMapping::name(Dof d) {
  switch (d) {
    case Dof::C: return "c";
    case Dof::Pi: return "pi";
    case Dof::K: return "k";
  }
  throw std::logic_error("unreachable");
}

Dof DofMapping::parse(const std::string& name) {
  if (name == "c") return Dof::C;
  if (name == "pi") return Dof::Pi;
  if (name == "k") return Dof::K;
  throw std::invalid_argument("unknown DOF '" + name + "' (expected c, pi or k)");
}

std::string bell_family_name(BellFamily f) {
  switch (f) {
    case BellFamily::PhiPlus: return "phi+";
    case BellFamily::PhiMinus: return "phi-";
    case BellFamily::PsiPlus: return "psi+";
    case BellFamily::PsiMinus: return "psi-";
  }
  throw std::logic_error("unreachable");
}

BellFamily parse_bell_family(const std::string& name) {
  if (name == "phi+") return BellFamily::PhiPlus;
  if (name == "phi-") return BellFamily::PhiMinus;
  if (name == "psi+") return BellFamily::PsiPlus;
  if (name == "psi-") return BellFamily::PsiMinus;
  throw std::invalid_argument("unknown Bell state '" + name + "'");
}

StateVector bell_state(BellFamily f) { return {2, bell4(f)}; }

BranchSelector::BranchSelector(Dof d1, std::string v1, Dof d2, std::string v2) {
  if (d1 == d2) throw std::invalid_argument("selector constrains the same DOF twice");
  values[d1] = std::move(v1);
  values[d2] = std::move(v2);
}

Eigen::Vector2cd BranchSelector::photon_state(Dof d, int photon) const {
  const auto it = values.find(d);
  if (it == values.end()) throw std::invalid_argument("DOF is not constrained by the selector");
  if (it->second.size() != 2) throw std::invalid_argument("selector value must have two characters");
  return photon_char_state(d, it->second[photon]);
}

GraphState he6_graph() { return GraphState(6, {{1, 4}, {2, 5}, {3, 6}}); }

GraphState lc6_graph() { return GraphState(6, {{1, 4}, {2, 5}, {3, 6}, {1, 2}, {5, 6}}); }

FrameTransform lab_frame_transform() {
  FrameTransform t(6);
  t.set(2, mat_h());
  t.set(3, mat_x() * mat_h());
  t.set(4, mat_h());
  t.set(5, mat_z());
  return t;
}

StabilizerSet lc6_tilde_stabilizers() {
  return apply_frame(stabilizers_of(lc6_graph()), lab_frame_transform());
}

StateVector build_he6() {
  Eigen::Vector4cd c, pi, k;
  c << kInvSqrt2, 0, 0, kInvSqrt2;    // (|EE> + |II>)/sqrt2
  pi << kInvSqrt2, 0, 0, -kInvSqrt2;  // (|HH> - |VV>)/sqrt2
  k << 0, kInvSqrt2, kInvSqrt2, 0;    // (|rl> + |lr>)/sqrt2
  return from_dof_pairs(c, pi, k);
}

StateVector build_lc6_tilde() {
  StateVector psi = build_he6();
  psi = apply_gate(psi, GateSpec::cx(1, 2));
  psi = apply_gate(psi, GateSpec::cz(6, 5));
  return psi;
}

StateVector build_lc6() { return build_cluster(lc6_graph()); }

StateVector factorization(Factorization which) {
  auto product = [](char a, char b) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    auto bit = [](char ch) {
      switch (ch) {
        case 'E': case 'H': case 'r': return 0;
        case 'I': case 'V': case 'l': return 1;
        default: throw std::invalid_argument("bad product label");
      }
    };
    v(bit(a) * 2 + bit(b)) = 1.0;
    return v;
  };
  auto diag = [](char a, char b) {
    const Eigen::Vector2cd pa = (a == '+') ? ket_plus() : ket_minus();
    const Eigen::Vector2cd pb = (b == '+') ? ket_plus() : ket_minus();
    Eigen::Vector4cd v;
    v << pa(0) * pb(0), pa(0) * pb(1), pa(1) * pb(0), pa(1) * pb(1);
    return v;
  };
  // One normalized four-term branch: product of three pair states.
  auto term = [](const Eigen::Vector4cd& c, const Eigen::Vector4cd& pi,
                 const Eigen::Vector4cd& k) {
    Eigen::VectorXcd t(64);
    for (uint32_t idx = 0; idx < 64; ++idx) {
      const int q1 = (idx >> 5) & 1, q2 = (idx >> 4) & 1, q3 = (idx >> 3) & 1;
      const int q4 = (idx >> 2) & 1, q5 = (idx >> 1) & 1, q6 = idx & 1;
      t(idx) = c(q1 * 2 + q4) * pi(q2 * 2 + q5) * k(q3 * 2 + q6);
    }
    return t;
  };

  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(64);
  switch (which) {
    case Factorization::BellInPolarization:
      total += 0.5 * term(product('E', 'E'), bell4(BellFamily::PhiPlus), product('r', 'l'));
      total += 0.5 * term(product('E', 'E'), bell4(BellFamily::PhiMinus), product('l', 'r'));
      total += 0.5 * term(product('I', 'I'), bell4(BellFamily::PsiPlus), product('r', 'l'));
      total -= 0.5 * term(product('I', 'I'), bell4(BellFamily::PsiMinus), product('l', 'r'));
      break;
    case Factorization::BellInMomentumK:
      total += 0.5 * term(product('E', 'E'), product('H', 'H'), bell4(BellFamily::PsiPlus));
      total += 0.5 * term(product('E', 'E'), product('V', 'V'), bell4(BellFamily::PsiMinus));
      total += 0.5 * term(product('I', 'I'), product('V', 'H'), bell4(BellFamily::PsiPlus));
      total += 0.5 * term(product('I', 'I'), product('H', 'V'), bell4(BellFamily::PsiMinus));
      break;
    case Factorization::BellInCone:
      total += 0.5 * term(bell4(BellFamily::PhiPlus), diag('+', '+'), product('r', 'l'));
      total += 0.5 * term(bell4(BellFamily::PhiMinus), diag('-', '-'), product('r', 'l'));
      total += 0.5 * term(bell4(BellFamily::PhiPlus), diag('+', '-'), product('l', 'r'));
      total += 0.5 * term(bell4(BellFamily::PhiMinus), diag('-', '+'), product('l', 'r'));
      break;
    default:
      throw std::invalid_argument("unknown factorization form");
  }
  return {6, std::move(total)};
}

StateVector branch_product_state(const BranchSelector& selector, Dof output_dof,
                                 const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  if (selector.values.size() != 2 || selector.values.count(output_dof)) {
    throw std::invalid_argument("selector must constrain exactly the two non-output DOFs");
  }
  std::array<Eigen::Vector2cd, 6> single;  // per qubit 1..6
  for (Dof d : {Dof::C, Dof::Pi, Dof::K}) {
    const auto [qa, qb] = DofMapping::qubits(d);
    if (d == output_dof) {
      single[qa - 1] = a;
      single[qb - 1] = b;
    } else {
      single[qa - 1] = selector.photon_state(d, 0);
      single[qb - 1] = selector.photon_state(d, 1);
    }
  }
  Eigen::VectorXcd amps(64);
  for (uint32_t idx = 0; idx < 64; ++idx) {
    cplx v = 1.0;
    for (int q = 1; q <= 6; ++q) v *= single[q - 1]((idx >> (6 - q)) & 1);
    amps(idx) = v;
  }
  return {6, std::move(amps)};
}

StateVector project_branch(const StateVector& psi, const BranchSelector& selector,
                           Dof output_dof, double* branch_probability) {
  if (psi.n_qubits() != 6) throw std::invalid_argument("branch projection expects six qubits");
  if (selector.values.size() != 2 || selector.values.count(output_dof)) {
    throw std::invalid_argument("selector must constrain exactly the two non-output DOFs");
  }
  StateVector cur = psi;
  // Project the four selector qubits, highest qubit index first so that the
  // remaining indices stay valid while qubits are removed.
  std::vector<std::pair<int, Eigen::Vector2cd>> projections;
  for (const auto& [d, value] : selector.values) {
    const auto [qa, qb] = DofMapping::qubits(d);
    projections.emplace_back(qa, selector.photon_state(d, 0));
    projections.emplace_back(qb, selector.photon_state(d, 1));
  }
  std::sort(projections.begin(), projections.end(),
            [](const auto& l, const auto& r) { return l.first > r.first; });
  double prob = 1.0;
  for (const auto& [q, vec] : projections) {
    QubitBasis basis;
    basis.b0 = vec;
    // Any orthonormal completion works; only outcome 0 is used.
    basis.b1 << -std::conj(vec(1)), std::conj(vec(0));
    MeasureResult r = measure_qubit(cur, q, basis, 0);
    prob *= r.probability;
    cur = r.post;
  }
  if (branch_probability) *branch_probability = prob;
  return cur;
}

BellStateId conditional_bell(const BranchSelector& selector, Dof output_dof) {
  double prob = 0.0;
  StateVector cond = [&] {
    try {
      return project_branch(build_lc6_tilde(), selector, output_dof, &prob);
    } catch (const std::runtime_error&) {
      throw std::runtime_error("selector picks a branch with vanishing amplitude");
    }
  }();
  for (BellFamily f : {BellFamily::PhiPlus, BellFamily::PhiMinus, BellFamily::PsiPlus,
                       BellFamily::PsiMinus}) {
    if (fidelity(cond, bell_state(f)) > 1.0 - 1e-9) return {f, output_dof};
  }
  throw std::domain_error("conditional state is not a Bell state of the output DOF");
}

bool cx_h_cz_identity_check() {
  // 4x4 operator identity CX_ij H_j == H_j CZ_ij (control first qubit).
  Eigen::Matrix4cd cx = Eigen::Matrix4cd::Identity();
  cx(2, 2) = 0; cx(2, 3) = 1; cx(3, 2) = 1; cx(3, 3) = 0;
  Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
  cz(3, 3) = -1;
  Eigen::Matrix4cd h2 = Eigen::Matrix4cd::Zero();  // I (x) H
  h2.block<2, 2>(0, 0) = mat_h();
  h2.block<2, 2>(2, 2) = mat_h();
  if (((cx * h2) - (h2 * cz)).cwiseAbs().maxCoeff() > 1e-12) return false;

  // The same identity on random two-qubit states.
  std::mt19937_64 rng(20100301);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXcd v(4);
    for (int i = 0; i < 4; ++i) v(i) = cplx(gauss(rng), gauss(rng));
    v.normalize();
    StateVector psi(2, v);
    const StateVector lhs = apply_gate(apply_gate(psi, GateSpec::h(2)), GateSpec::cx(1, 2));
    const StateVector rhs = apply_gate(apply_gate(psi, GateSpec::cz(1, 2)), GateSpec::h(2));
    if (!state_equal_up_to_global_phase(lhs, rhs, 1e-12)) return false;
  }

  // Full six-qubit chain: CX_12 CZ_65 U_frame |he6 graph state> equals
  // U_frame CZ_12 CZ_65 |he6 graph state>.
  const StateVector he6_cluster = build_cluster(he6_graph());
  const FrameTransform frame = lab_frame_transform();
  StateVector lhs = apply_frame(he6_cluster, frame);
  lhs = apply_gate(lhs, GateSpec::cx(1, 2));
  lhs = apply_gate(lhs, GateSpec::cz(6, 5));
  StateVector rhs = apply_gate(he6_cluster, GateSpec::cz(1, 2));
  rhs = apply_gate(rhs, GateSpec::cz(6, 5));
  rhs = apply_frame(rhs, frame);
  if (!state_equal_up_to_global_phase(lhs, rhs, 1e-12)) return false;

  // And the assembled states agree with the direct construction.
  return state_equal_up_to_global_phase(build_lc6_tilde(),
                                        apply_frame(build_lc6(), frame), 1e-12);
}

std::string basis_label(uint32_t index) {
  if (index >= 64) throw std::invalid_argument("basis index out of range");
  auto bit = [&](int q) { return (index >> (6 - q)) & 1; };
  std::string a, b;
  a += bit(1) ? 'I' : 'E';
  a += bit(2) ? 'V' : 'H';
  a += bit(3) ? 'l' : 'r';
  b += bit(4) ? 'I' : 'E';
  b += bit(5) ? 'V' : 'H';
  b += bit(6) ? 'l' : 'r';
  return a + "," + b;
}

}  // namespace he6

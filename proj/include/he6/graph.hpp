#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "he6/pauli.hpp"
#include "he6/state.hpp"

namespace he6 {

// Simple undirected graph on vertices 1..n, no self-loops.
class GraphState {
public:
  explicit GraphState(int n_vertices);
  GraphState(int n_vertices, std::initializer_list<std::pair<int, int>> edges);

  void add_edge(int a, int b);
  bool has_edge(int a, int b) const;
  int n_vertices() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::vector<int> neighbors(int v) const;

  // Graph with vertex v deleted; vertices above v shift down by one.
  GraphState without_vertex(int v) const;

private:
  int n_;
  std::vector<std::pair<int, int>> edges_;  // normalized a < b
};

enum class Frame { Cluster, Laboratory };

std::string frame_name(Frame f);

struct StabilizerSet {
  std::vector<PauliString> generators;
  Frame frame = Frame::Cluster;
};

// Product of single-qubit unitaries, one slot per qubit (identity if unset).
class FrameTransform {
public:
  explicit FrameTransform(int n_qubits);
  static FrameTransform identity(int n_qubits);

  FrameTransform& set(int qubit, const Eigen::Matrix2cd& u);
  const Eigen::Matrix2cd& unitary(int qubit) const;
  int n_qubits() const { return static_cast<int>(us_.size()); }

  FrameTransform adjoint() const;
  std::vector<GateSpec> gates() const;  // skips identity slots

private:
  std::vector<Eigen::Matrix2cd> us_;
};

// (prod_{edges} CZ) |+>^n
StateVector build_cluster(const GraphState& g);

// Generator i = X_i (x) Z_j over neighbors j, in the cluster frame.
StabilizerSet stabilizers_of(const GraphState& g);

// Conjugates every generator by the transform; each per-qubit unitary must
// map Pauli operators to signed Pauli operators (Clifford), otherwise
// std::invalid_argument is thrown. The frame label flips.
StabilizerSet apply_frame(const StabilizerSet& s, const FrameTransform& t);

// The same transform applied to a state.
StateVector apply_frame(const StateVector& psi, const FrameTransform& t);

// Conjugate a single Pauli string by a product of single-qubit Cliffords.
PauliString clifford_conjugate(const PauliString& p, const FrameTransform& t);

struct StabilizerGroupElement {
  uint32_t subset_mask;  // bit i-1 set if generator i enters the product
  std::string label;     // "1", "g1", "g1*g4", ...
  PauliString op;
};

// All 2^n subset products, identity first, ordered by subset size and then
// lexicographically by generator indices (canonical table row order).
// Throws std::runtime_error if the generators are dependent.
std::vector<StabilizerGroupElement> stabilizer_group(const StabilizerSet& s);

std::string subset_label(uint32_t mask);

}  // namespace he6

#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "he6/graph.hpp"
#include "he6/pauli.hpp"
#include "he6/state.hpp"

namespace he6 {

enum class PatternName { I, II, III, IV, IIVariant };

std::string pattern_name(PatternName p);
PatternName parse_pattern(const std::string& name);

// Single-qubit measurement basis of a pattern step. B(angle) resolves to
// {(e^{i a/2}|0> + e^{-i a/2}|1>)/sqrt2, (e^{i a/2}|0> - e^{-i a/2}|1>)/sqrt2}
// with outcome s=0 on the first vector.
struct MeasurementBasis {
  enum class Kind { Computational, ComputationalReversed, Diagonal, BAngle };
  Kind kind = Kind::Computational;
  double angle = 0.0;  // BAngle only

  QubitBasis resolve() const;
  std::string label() const;  // "{|0>,|1>}", "{|1>,|0>}", "{|+>,|->}", "B(0.79)"

  static MeasurementBasis b_angle(double a) { return {Kind::BAngle, a}; }
};

struct PatternStep {
  int qubit;                // measured qubit (paper numbering)
  MeasurementBasis basis;   // declared basis with canonical label
  QubitBasis resolved;      // exact projector pair actually used
  char socket = 0;          // 0 fixed, 'a' alpha socket, 'b' beta socket
};

// Measurement pattern on qubits 3, 4, 6, 1 (in that order), in either frame.
// alpha drives the B(alpha) socket where the pattern has one (I and II on
// qubit 6) and beta likewise (I and III on qubit 1); the fixed patterns
// reject nonzero angles.
struct MeasurementPattern {
  PatternName name;
  Frame frame;
  double alpha = 0.0;
  double beta = 0.0;
  std::array<PatternStep, 4> steps;
};

MeasurementPattern pattern_bases(PatternName name, Frame frame, double alpha = 0.0,
                                 double beta = 0.0);

// Measurement outcomes, one bit per measured qubit.
struct Outcomes {
  int s1 = 0;
  int s3 = 0;
  int s4 = 0;
  int s6 = 0;

  int of(int qubit) const;
  static Outcomes from_index(int idx);  // bit order (s3, s4, s6, s1)
  int index() const;
};

// Outcome-dependent byproduct correction as a two-qubit Pauli on the output
// register in (control 5, target 2) order.
PauliString byproduct(PatternName name, const Outcomes& s);

// |psi_in> of the equivalent circuit, (5, 2) order.
StateVector pattern_input(PatternName name);

// Error-free circuit output Z_5 CNOT_52 (rotations) |psi_in>, (5, 2) order.
StateVector circuit_output(PatternName name, double alpha, double beta);

// Literal branch formula: byproduct applied after the error-free circuit.
StateVector expected_output(PatternName name, double alpha, double beta, const Outcomes& s);

struct ComputationResult {
  Outcomes outcomes;
  double probability;      // joint probability of the branch
  StateVector raw;         // lab-equivalent post-measurement state, (5, 2) order
  StateVector corrected;   // byproduct applied to raw
  StateVector target;      // error-free circuit output
  double fidelity_to_target;
};

// Runs the four measurements of the pattern on the matching cluster state
// (laboratory frame expects the gate-built state, cluster frame the graph
// state; checked via the generator eigenvalue equations). Cluster-frame runs
// apply the change-of-basis gates H(2), Z(5) to the output so both frames
// report the same laboratory-convention states.
ComputationResult run_pattern(const StateVector& psi, const MeasurementPattern& pattern,
                              const Outcomes& forced);
ComputationResult run_pattern(const StateVector& psi, const MeasurementPattern& pattern,
                              std::mt19937_64& rng);

// Convert a (control 5, target 2) state to AB order (photon A = qubit 2 first).
StateVector to_ab_order(const StateVector& ct);

struct IoMatrix {
  PatternName pattern;
  std::vector<std::string> input_labels;   // AB order
  std::vector<std::string> output_labels;  // same product family
  Eigen::Matrix4d fidelities;              // [input][candidate output]
  std::array<int, 4> permutation;          // argmax column per input row
};

// Input-output fidelity table of the pattern's product-state family at
// alpha = beta = 0, grouped over all 16 forced branches. Pattern IV is
// rejected: its output is entangled and verified tomographically.
IoMatrix cnot_io_matrix(PatternName name);

// Computational-basis removal rule on an arbitrary graph: measuring vertex v
// with outcome s leaves prod_{k in N(v)} Z_k^s applied to the cluster of the
// reduced graph.
bool removal_rule_check(const GraphState& g, int vertex, int outcome);

}  // namespace he6

#pragma once

#include <json.hpp>
#include <string>

#include "he6/builder.hpp"
#include "he6/state.hpp"

namespace he6::io {

using json = nlohmann::ordered_json;

json complex_json(cplx z);

// [{"index", "label", "amplitude": [re, im]}] with six-qubit DOF labels.
json state_amplitudes_json(const StateVector& psi, bool dof_labels);

// {"n_qubits", "matrix": [[[re,im],...],...]}
json density_json(const DensityMatrix& rho);

// Row-major "re,im" cell pairs, one matrix row per line.
std::string density_csv(const DensityMatrix& rho);

// Basis labels of a two-qubit DOF pair, e.g. "HH","HV","VH","VV".
std::vector<std::string> pair_labels(Dof dof);

// [{"label", "real", "imag"}] per matrix cell, for external bar plotting.
json barchart_json(const DensityMatrix& rho, Dof dof);

}  // namespace he6::io

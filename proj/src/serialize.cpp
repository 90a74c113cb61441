#include "he6/serialize.hpp"

#include <cstdio>

namespace he6::io {

namespace {

double chop(double x) { return std::abs(x) < 1e-14 ? 0.0 : x; }

std::string format_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", chop(x));
  return buf;
}

}  // namespace

json complex_json(cplx z) { return json::array({chop(z.real()), chop(z.imag())}); }

json state_amplitudes_json(const StateVector& psi, bool dof_labels) {
  json out = json::array();
  for (uint32_t idx = 0; idx < psi.dim(); ++idx) {
    json row;
    row["index"] = idx;
    if (dof_labels && psi.n_qubits() == 6) row["label"] = basis_label(idx);
    row["amplitude"] = complex_json(psi.amp(idx));
    out.push_back(std::move(row));
  }
  return out;
}

json density_json(const DensityMatrix& rho) {
  json matrix = json::array();
  const auto& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    matrix.push_back(std::move(row));
  }
  return json{{"n_qubits", rho.n_qubits()}, {"matrix", std::move(matrix)}};
}

std::string density_csv(const DensityMatrix& rho) {
  std::string out;
  const auto& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ',';
      out += format_num(m(r, c).real());
      out += ',';
      out += format_num(m(r, c).imag());
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string> pair_labels(Dof dof) {
  const char zero = DofMapping::zero_label(dof);
  const char one = DofMapping::one_label(dof);
  const char v[2] = {zero, one};
  std::vector<std::string> out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) out.push_back(std::string{v[a], v[b]});
  }
  return out;
}

json barchart_json(const DensityMatrix& rho, Dof dof) {
  if (rho.n_qubits() != 2) throw std::invalid_argument("bar chart expects a two-qubit state");
  const auto labels = pair_labels(dof);
  json out = json::array();
  const auto& m = rho.matrix();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      out.push_back(json{{"label", labels[r] + "," + labels[c]},
                         {"real", chop(m(r, c).real())},
                         {"imag", chop(m(r, c).imag())}});
    }
  }
  return out;
}

}  // namespace he6::io

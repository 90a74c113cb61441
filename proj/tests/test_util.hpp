#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "he6/pauli.hpp"
#include "he6/state.hpp"

namespace he6::testing {

inline Eigen::VectorXcd random_complex_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cplx(gauss(rng), gauss(rng));
  return v;
}

inline StateVector random_state(int n_qubits, std::mt19937_64& rng) {
  Eigen::VectorXcd v = random_complex_vector(1 << n_qubits, rng);
  v.normalize();
  return {n_qubits, std::move(v)};
}

// Haar-random unitary via QR with phase-corrected R diagonal.
inline Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const cplx d = r(i, i);
    q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : cplx(1, 0);
  }
  return q;
}

inline DensityMatrix random_density(int n_qubits, std::mt19937_64& rng, int rank = 0) {
  const int dim = 1 << n_qubits;
  if (rank <= 0) rank = dim;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  double total = 0;
  for (int i = 0; i < rank; ++i) {
    Eigen::VectorXcd v = random_complex_vector(dim, rng);
    v.normalize();
    const double w = u(rng);
    acc += w * (v * v.adjoint());
    total += w;
  }
  return {n_qubits, acc / total};
}

// Dense-matrix oracle for a Pauli string: explicit Kronecker product.
inline Eigen::MatrixXcd pauli_dense(const PauliString& p) {
  Eigen::MatrixXcd id = Eigen::Matrix2cd::Identity();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Ones(1, 1);
  for (int q = 1; q <= p.n_qubits(); ++q) {
    Eigen::Matrix2cd f;
    switch (p.axis_at(q)) {
      case 'X': f = mat_x(); break;
      case 'Y': f = mat_y(); break;
      case 'Z': f = mat_z(); break;
      default: f = id; break;
    }
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (int i = 0; i < out.rows(); ++i) {
      for (int j = 0; j < out.cols(); ++j) {
        next.block<2, 2>(2 * i, 2 * j) = out(i, j) * f;
      }
    }
    out = std::move(next);
  }
  return p.phase() * out;
}

inline PauliString random_pauli(int n_qubits, std::mt19937_64& rng, bool hermitian = true) {
  std::uniform_int_distribution<uint32_t> bits(0, (1u << n_qubits) - 1);
  std::uniform_int_distribution<int> ph(0, 3);
  const uint32_t x = bits(rng), z = bits(rng);
  int k = ph(rng);
  if (hermitian) {
    const int y = __builtin_popcount(x & z);
    k = (y % 2 == k % 2) ? k : (k + 1) % 4;
  }
  return {n_qubits, x, z, k};
}

}  // namespace he6::testing

#pragma once

#include <complex>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>

namespace he6 {

using cplx = std::complex<double>;

class StateVector;
class DensityMatrix;

// Signed tensor product of single-qubit Pauli operators on qubits 1..n
// (paper numbering; qubit q maps to bit q-1 of the x/z masks).
//
// Internally the operator is kept in symplectic form i^k * X^x * Z^z, one
// x/z bit per qubit. The Hermitian Y factor i*XZ is absorbed into k, so
// phase() reports the factor multiplying the tensor product of Hermitian
// single-qubit Paulis and is always one of {+1, -1, +i, -i}.
class PauliString {
public:
  PauliString(int n_qubits, uint32_t x_bits, uint32_t z_bits, int phase_exponent = 0);

  static PauliString identity(int n_qubits);
  // axis in {'I','X','Y','Z'}; sign in {+1,-1}
  static PauliString single(int n_qubits, int qubit, char axis, int sign = +1);
  // "+XZIZII", "-YIIIII", "+iXZIIII", "ZZ" (sign optional, qubit 1 leftmost)
  static PauliString from_string(std::string_view text);

  int n_qubits() const { return n_; }
  uint32_t x_bits() const { return x_; }
  uint32_t z_bits() const { return z_; }

  // i^k in the symplectic representation
  int phase_exponent() const { return k_; }
  // factor relative to the Hermitian tensor product of I/X/Y/Z
  cplx phase() const;
  bool is_hermitian() const;
  // +1 or -1; throws std::domain_error if the phase is imaginary
  int sign() const;

  char axis_at(int qubit) const;  // 'I','X','Y' or 'Z'
  std::set<int> support() const;
  bool is_identity() const { return x_ == 0 && z_ == 0; }

  PauliString operator*(const PauliString& rhs) const;
  PauliString negated() const;
  bool operator==(const PauliString& rhs) const;
  bool commutes_with(const PauliString& rhs) const;

  std::string to_string() const;

private:
  int n_;
  uint32_t x_;
  uint32_t z_;
  int k_;  // phase exponent mod 4
};

// <psi|P|psi> for Hermitian P on a normalized state. Throws std::domain_error
// for an imaginary phase and std::invalid_argument on dimension or
// normalization violations.
double pauli_expectation(const PauliString& p, const StateVector& psi);

// Tr[rho P] for Hermitian P.
double pauli_expectation(const PauliString& p, const DensityMatrix& rho);

// P|psi>
StateVector pauli_apply(const PauliString& p, const StateVector& psi);

std::set<int> pauli_support(const PauliString& p);

}  // namespace he6

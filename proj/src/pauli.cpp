#include "he6/pauli.hpp"

#include <bit>
#include <stdexcept>

#include "he6/state.hpp"

namespace he6 {

namespace {

constexpr cplx kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_same_size(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("pauli strings act on different qubit counts (" +
                                std::to_string(a.n_qubits()) + " vs " +
                                std::to_string(b.n_qubits()) + ")");
  }
}

// Remap mask bit q-1 (qubit q) to state-index bit n-q.
uint32_t to_state_mask(uint32_t mask, int n) {
  uint32_t out = 0;
  for (int q = 1; q <= n; ++q) {
    if (mask & (1u << (q - 1))) out |= 1u << (n - q);
  }
  return out;
}

}  // namespace

PauliString::PauliString(int n_qubits, uint32_t x_bits, uint32_t z_bits, int phase_exponent)
    : n_(n_qubits), x_(x_bits), z_(z_bits), k_(((phase_exponent % 4) + 4) % 4) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw std::invalid_argument("pauli string needs 1..30 qubits");
  }
  const uint32_t valid = (n_qubits == 30) ? 0x3fffffffu : ((1u << n_qubits) - 1);
  if ((x_ & ~valid) != 0 || (z_ & ~valid) != 0) {
    throw std::invalid_argument("pauli bitmask uses bits beyond the qubit count");
  }
}

PauliString PauliString::identity(int n_qubits) { return {n_qubits, 0, 0, 0}; }

PauliString PauliString::single(int n_qubits, int qubit, char axis, int sign) {
  if (qubit < 1 || qubit > n_qubits) {
    throw std::invalid_argument("qubit index out of range");
  }
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const uint32_t bit = 1u << (qubit - 1);
  const int k0 = (sign == -1) ? 2 : 0;
  switch (axis) {
    case 'I': return {n_qubits, 0, 0, k0};
    case 'X': return {n_qubits, bit, 0, k0};
    case 'Y': return {n_qubits, bit, bit, k0 + 1};  // Y = i X Z
    case 'Z': return {n_qubits, 0, bit, k0};
    default: throw std::invalid_argument("axis must be one of I,X,Y,Z");
  }
}

PauliString PauliString::from_string(std::string_view text) {
  int k0 = 0;
  size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') k0 = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    k0 += 1;
    ++pos;
  }
  const std::string_view body = text.substr(pos);
  if (body.empty()) throw std::invalid_argument("empty pauli string");
  const int n = static_cast<int>(body.size());
  PauliString out(n, 0, 0, k0);
  for (int q = 1; q <= n; ++q) {
    const char axis = body[q - 1];
    if (axis == 'I') continue;
    out = out * single(n, q, axis);
  }
  return out;
}

cplx PauliString::phase() const {
  const int y_count = std::popcount(x_ & z_);
  return kPhases[((k_ - y_count) % 4 + 4) % 4];
}

bool PauliString::is_hermitian() const {
  return ((k_ - std::popcount(x_ & z_)) % 2 + 2) % 2 == 0;
}

int PauliString::sign() const {
  const cplx p = phase();
  if (std::abs(p.imag()) > 0) {
    throw std::domain_error("pauli string has imaginary phase " + to_string());
  }
  return p.real() > 0 ? 1 : -1;
}

char PauliString::axis_at(int qubit) const {
  if (qubit < 1 || qubit > n_) throw std::invalid_argument("qubit index out of range");
  const bool x = x_ & (1u << (qubit - 1));
  const bool z = z_ & (1u << (qubit - 1));
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::set<int> PauliString::support() const {
  std::set<int> s;
  for (int q = 1; q <= n_; ++q) {
    if ((x_ | z_) & (1u << (q - 1))) s.insert(q);
  }
  return s;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  check_same_size(*this, rhs);
  // Z^z1 X^x2 = (-1)^{|z1 & x2|} X^x2 Z^z1
  const int swaps = std::popcount(z_ & rhs.x_);
  return {n_, x_ ^ rhs.x_, z_ ^ rhs.z_, k_ + rhs.k_ + 2 * swaps};
}

PauliString PauliString::negated() const { return {n_, x_, z_, k_ + 2}; }

bool PauliString::operator==(const PauliString& rhs) const {
  return n_ == rhs.n_ && x_ == rhs.x_ && z_ == rhs.z_ && k_ == rhs.k_;
}

bool PauliString::commutes_with(const PauliString& rhs) const {
  check_same_size(*this, rhs);
  const int symp = std::popcount(x_ & rhs.z_) + std::popcount(z_ & rhs.x_);
  return symp % 2 == 0;
}

std::string PauliString::to_string() const {
  std::string out;
  const cplx p = phase();
  if (std::abs(p.imag()) > 0.5) {
    out += (p.imag() > 0) ? "+i" : "-i";
  } else {
    out += (p.real() > 0) ? '+' : '-';
  }
  for (int q = 1; q <= n_; ++q) out += axis_at(q);
  return out;
}

StateVector pauli_apply(const PauliString& p, const StateVector& psi) {
  if (p.n_qubits() != psi.n_qubits()) {
    throw std::invalid_argument("pauli/state qubit counts differ");
  }
  const int n = p.n_qubits();
  const uint32_t xm = to_state_mask(p.x_bits(), n);
  const uint32_t zm = to_state_mask(p.z_bits(), n);
  const cplx ik = kPhases[p.phase_exponent()];
  const uint32_t dim = static_cast<uint32_t>(psi.dim());
  Eigen::VectorXcd out(dim);
  for (uint32_t idx = 0; idx < dim; ++idx) {
    const double sign = (std::popcount(idx & zm) % 2 == 0) ? 1.0 : -1.0;
    out(idx ^ xm) = ik * sign * psi.amp(idx);
  }
  return {n, std::move(out)};
}

double pauli_expectation(const PauliString& p, const StateVector& psi) {
  if (!p.is_hermitian()) {
    throw std::domain_error("expectation of non-Hermitian pauli string " + p.to_string());
  }
  if (std::abs(psi.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("state is not normalized");
  }
  const StateVector pp = pauli_apply(p, psi);
  return psi.amps().dot(pp.amps()).real();
}

double pauli_expectation(const PauliString& p, const DensityMatrix& rho) {
  if (!p.is_hermitian()) {
    throw std::domain_error("expectation of non-Hermitian pauli string " + p.to_string());
  }
  if (p.n_qubits() != rho.n_qubits()) {
    throw std::invalid_argument("pauli/state qubit counts differ");
  }
  const int n = p.n_qubits();
  const uint32_t xm = to_state_mask(p.x_bits(), n);
  const uint32_t zm = to_state_mask(p.z_bits(), n);
  const cplx ik = kPhases[p.phase_exponent()];
  // Tr[rho P] = sum_idx <idx|rho P|idx>; P|idx> = ik * (-1)^{|z&idx|} |idx^x>
  cplx acc = 0;
  const auto& m = rho.matrix();
  const auto dim = m.rows();
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const double sign =
        (std::popcount(static_cast<uint32_t>(idx) & zm) % 2 == 0) ? 1.0 : -1.0;
    acc += ik * sign * m(idx, static_cast<uint32_t>(idx) ^ xm);
  }
  return acc.real();
}

std::set<int> pauli_support(const PauliString& p) { return p.support(); }

}  // namespace he6

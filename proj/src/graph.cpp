#include "he6/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace he6 {

GraphState::GraphState(int n_vertices) : n_(n_vertices) {
  if (n_vertices < 1) throw std::invalid_argument("graph needs at least one vertex");
}

GraphState::GraphState(int n_vertices, std::initializer_list<std::pair<int, int>> edges)
    : GraphState(n_vertices) {
  for (const auto& [a, b] : edges) add_edge(a, b);
}

void GraphState::add_edge(int a, int b) {
  if (a < 1 || a > n_ || b < 1 || b > n_) throw std::invalid_argument("edge vertex out of range");
  if (a == b) throw std::invalid_argument("self-loops are not allowed");
  auto e = std::minmax(a, b);
  std::pair<int, int> edge{e.first, e.second};
  if (std::find(edges_.begin(), edges_.end(), edge) == edges_.end()) edges_.push_back(edge);
}

bool GraphState::has_edge(int a, int b) const {
  auto e = std::minmax(a, b);
  return std::find(edges_.begin(), edges_.end(), std::pair<int, int>{e.first, e.second}) !=
         edges_.end();
}

std::vector<int> GraphState::neighbors(int v) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges_) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

GraphState GraphState::without_vertex(int v) const {
  if (v < 1 || v > n_) throw std::invalid_argument("vertex out of range");
  if (n_ == 1) throw std::invalid_argument("cannot delete the last vertex");
  GraphState out(n_ - 1);
  auto remap = [v](int u) { return u > v ? u - 1 : u; };
  for (const auto& [a, b] : edges_) {
    if (a == v || b == v) continue;
    out.add_edge(remap(a), remap(b));
  }
  return out;
}

std::string frame_name(Frame f) { return f == Frame::Cluster ? "cluster" : "laboratory"; }

FrameTransform::FrameTransform(int n_qubits)
    : us_(n_qubits, Eigen::Matrix2cd::Identity()) {
  if (n_qubits < 1) throw std::invalid_argument("transform needs at least one qubit");
}

FrameTransform FrameTransform::identity(int n_qubits) { return FrameTransform(n_qubits); }

FrameTransform& FrameTransform::set(int qubit, const Eigen::Matrix2cd& u) {
  if (qubit < 1 || qubit > n_qubits()) throw std::invalid_argument("qubit out of range");
  if ((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("frame transform entry is not unitary");
  }
  us_[qubit - 1] = u;
  return *this;
}

const Eigen::Matrix2cd& FrameTransform::unitary(int qubit) const {
  if (qubit < 1 || qubit > n_qubits()) throw std::invalid_argument("qubit out of range");
  return us_[qubit - 1];
}

FrameTransform FrameTransform::adjoint() const {
  FrameTransform out(n_qubits());
  for (int q = 1; q <= n_qubits(); ++q) out.set(q, unitary(q).adjoint());
  return out;
}

std::vector<GateSpec> FrameTransform::gates() const {
  std::vector<GateSpec> out;
  for (int q = 1; q <= n_qubits(); ++q) {
    if ((unitary(q) - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-14) {
      out.push_back(GateSpec::u2(q, unitary(q)));
    }
  }
  return out;
}

StateVector build_cluster(const GraphState& g) {
  if (g.n_vertices() > 12) {
    throw std::invalid_argument("cluster construction limited to 12 vertices");
  }
  StateVector psi = StateVector::all_plus(g.n_vertices());
  for (const auto& [a, b] : g.edges()) psi = apply_gate(psi, GateSpec::cz(a, b));
  return psi;
}

StabilizerSet stabilizers_of(const GraphState& g) {
  StabilizerSet s;
  s.frame = Frame::Cluster;
  for (int v = 1; v <= g.n_vertices(); ++v) {
    PauliString gen = PauliString::single(g.n_vertices(), v, 'X');
    for (int u : g.neighbors(v)) {
      gen = gen * PauliString::single(g.n_vertices(), u, 'Z');
    }
    s.generators.push_back(gen);
  }
  return s;
}

namespace {

// Decode a Hermitian traceless 2x2 matrix as (sign, axis); throws otherwise.
std::pair<int, char> decode_signed_pauli(const Eigen::Matrix2cd& m, double tol = 1e-10) {
  const Eigen::Matrix2cd candidates[3] = {mat_x(), mat_y(), mat_z()};
  const char axes[3] = {'X', 'Y', 'Z'};
  for (int i = 0; i < 3; ++i) {
    if ((m - candidates[i]).cwiseAbs().maxCoeff() < tol) return {+1, axes[i]};
    if ((m + candidates[i]).cwiseAbs().maxCoeff() < tol) return {-1, axes[i]};
  }
  throw std::invalid_argument("frame transform is not Clifford: conjugation leaves the Pauli group");
}

}  // namespace

PauliString clifford_conjugate(const PauliString& p, const FrameTransform& t) {
  if (p.n_qubits() != t.n_qubits()) {
    throw std::invalid_argument("pauli/transform qubit counts differ");
  }
  const int n = p.n_qubits();
  // Seed with the symplectic phase of p; conjugated local factors multiply in.
  PauliString out(n, 0, 0, p.phase_exponent());
  for (int q = 1; q <= n; ++q) {
    const bool x = p.x_bits() & (1u << (q - 1));
    const bool z = p.z_bits() & (1u << (q - 1));
    if (!x && !z) continue;
    const Eigen::Matrix2cd& u = t.unitary(q);
    PauliString local = PauliString::identity(n);
    if (x) {
      auto [sign, axis] = decode_signed_pauli(u * mat_x() * u.adjoint());
      local = local * PauliString::single(n, q, axis, sign);
    }
    if (z) {
      auto [sign, axis] = decode_signed_pauli(u * mat_z() * u.adjoint());
      local = local * PauliString::single(n, q, axis, sign);
    }
    out = out * local;
  }
  return out;
}

StabilizerSet apply_frame(const StabilizerSet& s, const FrameTransform& t) {
  StabilizerSet out;
  out.frame = (s.frame == Frame::Cluster) ? Frame::Laboratory : Frame::Cluster;
  for (const auto& g : s.generators) out.generators.push_back(clifford_conjugate(g, t));
  return out;
}

StateVector apply_frame(const StateVector& psi, const FrameTransform& t) {
  if (psi.n_qubits() != t.n_qubits()) {
    throw std::invalid_argument("state/transform qubit counts differ");
  }
  return apply_gates(psi, t.gates());
}

std::string subset_label(uint32_t mask) {
  if (mask == 0) return "1";
  std::string out;
  for (int i = 0; i < 32; ++i) {
    if (mask & (1u << i)) {
      if (!out.empty()) out += '*';
      out += "g" + std::to_string(i + 1);
    }
  }
  return out;
}

std::vector<StabilizerGroupElement> stabilizer_group(const StabilizerSet& s) {
  const int n = static_cast<int>(s.generators.size());
  if (n < 1 || n > 10) throw std::invalid_argument("stabilizer group limited to 1..10 generators");
  const int nq = s.generators.front().n_qubits();

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!s.generators[i].commutes_with(s.generators[j])) {
        throw std::runtime_error("stabilizer generators do not commute");
      }
    }
  }

  // Independence over GF(2) on the (x|z) rows.
  {
    std::vector<uint64_t> rows;
    for (const auto& g : s.generators) {
      rows.push_back((uint64_t(g.x_bits()) << 32) | g.z_bits());
    }
    int rank = 0;
    for (int bit = 63; bit >= 0 && rank < n; --bit) {
      int pivot = -1;
      for (int r = rank; r < n; ++r) {
        if (rows[r] & (1ull << bit)) { pivot = r; break; }
      }
      if (pivot < 0) continue;
      std::swap(rows[rank], rows[pivot]);
      for (int r = 0; r < n; ++r) {
        if (r != rank && (rows[r] & (1ull << bit))) rows[r] ^= rows[rank];
      }
      ++rank;
    }
    if (rank != n) throw std::runtime_error("stabilizer generators are dependent");
  }

  std::vector<uint32_t> masks(1u << n);
  for (uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    // Lexicographic on index sequences == numeric order of bit-reversed
    // masks; compare lowest set bits first.
    uint32_t x = a, y = b;
    while (x && y) {
      const int ia = std::countr_zero(x), ib = std::countr_zero(y);
      if (ia != ib) return ia < ib;
      x &= x - 1;
      y &= y - 1;
    }
    return x < y;
  });

  std::vector<StabilizerGroupElement> out;
  out.reserve(masks.size());
  for (uint32_t mask : masks) {
    PauliString prod = PauliString::identity(nq);
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) prod = prod * s.generators[i];
    }
    out.push_back({mask, subset_label(mask), prod});
  }
  return out;
}

}  // namespace he6

#include "he6/nonlocality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "he6/builder.hpp"

namespace he6 {

namespace {

std::vector<PauliString> frame_generators(Frame frame) {
  if (frame == Frame::Cluster) return stabilizers_of(lc6_graph()).generators;
  return lc6_tilde_stabilizers().generators;
}

// Expand g_first * prod_{S subset of mids} (1 + g_i) * g_last.
BellExpression expand(std::string name, Frame frame, int first, std::vector<int> mids,
                      int last, double bound) {
  const auto gens = frame_generators(frame);
  BellExpression expr{std::move(name), {}, bound, frame};
  const size_t m = mids.size();
  for (uint32_t subset = 0; subset < (1u << m); ++subset) {
    PauliString prod = PauliString::identity(6);
    if (first > 0) prod = prod * gens[first - 1];
    for (size_t i = 0; i < m; ++i) {
      if (subset & (1u << i)) prod = prod * gens[mids[i] - 1];
    }
    if (last > 0) prod = prod * gens[last - 1];
    const int sign = prod.sign();
    expr.terms.push_back({sign > 0 ? prod : prod.negated(), sign});
  }
  return expr;
}

double signed_sum(const BellExpression& expr, auto&& expectation) {
  double acc = 0;
  for (const auto& term : expr.terms) acc += term.sign * expectation(term.op);
  return std::abs(acc);
}

void check_frame(const BellExpression& expr, Frame state_frame) {
  if (expr.frame != state_frame) {
    throw std::invalid_argument("Bell expression is stated in the " + frame_name(expr.frame) +
                                " frame but the state lives in the " +
                                frame_name(state_frame) + " frame");
  }
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

BellExpression bell_b(Frame frame) { return expand("B", frame, 1, {2, 3, 4, 5}, 6, 4.0); }

BellExpression bell_beta(Frame frame) { return expand("beta", frame, 1, {2, 4}, 0, 2.0); }

BellExpression bell_beta_prime(Frame frame) {
  return expand("beta_prime", frame, 0, {3, 5}, 6, 2.0);
}

double bell_value(const BellExpression& expr, const StateVector& psi, Frame state_frame) {
  check_frame(expr, state_frame);
  return signed_sum(expr, [&](const PauliString& p) { return pauli_expectation(p, psi); });
}

double bell_value(const BellExpression& expr, const DensityMatrix& rho, Frame state_frame) {
  check_frame(expr, state_frame);
  return signed_sum(expr, [&](const PauliString& p) { return pauli_expectation(p, rho); });
}

LhvResult lhv_maximum(const BellExpression& expr) {
  // Collect the distinct single-qubit observables.
  std::map<std::pair<int, char>, int> index;
  for (const auto& term : expr.terms) {
    for (int q : term.op.support()) {
      const std::pair<int, char> key{q, term.op.axis_at(q)};
      if (!index.count(key)) {
        const int next = static_cast<int>(index.size());
        index[key] = next;
      }
    }
  }
  const int m = static_cast<int>(index.size());
  if (m > 24) {
    throw std::invalid_argument("LHV enumeration limited to 24 observables, expression uses " +
                                std::to_string(m));
  }

  // Per term: mask of observable indices; the term value under an assignment
  // is sign * (-1)^popcount(assignment & mask).
  std::vector<uint32_t> term_masks;
  std::vector<int> term_signs;
  for (const auto& term : expr.terms) {
    uint32_t mask = 0;
    for (int q : term.op.support()) mask |= 1u << index.at({q, term.op.axis_at(q)});
    term_masks.push_back(mask);
    term_signs.push_back(term.sign);
  }

  double best = -1;
  uint64_t best_assignment = 0;
  const uint64_t total = 1ull << m;
  for (uint64_t a = 0; a < total; ++a) {
    double sum = 0;
    for (size_t t = 0; t < term_masks.size(); ++t) {
      const int parity = std::popcount(static_cast<uint32_t>(a) & term_masks[t]) & 1;
      sum += parity ? -term_signs[t] : term_signs[t];
    }
    const double v = std::abs(sum);
    if (v > best) {
      best = v;
      best_assignment = a;
    }
  }

  LhvResult out{best, m, {}};
  for (const auto& [key, bit] : index) {
    out.assignment[key] = (best_assignment >> bit) & 1 ? -1 : +1;
  }
  return out;
}

namespace {

double group_mean(const std::vector<StabilizerGroupElement>& group, auto&& expectation) {
  if (group.empty() || (group.size() & (group.size() - 1)) != 0) {
    throw std::invalid_argument("stabilizer group size must be a power of two");
  }
  if (!group.front().op.is_identity()) {
    throw std::invalid_argument("stabilizer group must start with the identity");
  }
  double acc = 0;
  for (const auto& el : group) acc += expectation(el.op);
  return acc / static_cast<double>(group.size());
}

StabilizerReport aggregates_from_rows(std::vector<StabilizerRow> rows) {
  StabilizerReport rep;
  rep.rows = std::move(rows);
  double sum = 0, b = 0, beta = 0, betap = 0;
  for (const auto& r : rep.rows) {
    sum += r.expectation;
    if (r.in_b) b += r.expectation;
    if (r.in_beta) beta += r.expectation;
    if (r.in_beta_prime) betap += r.expectation;
  }
  rep.fidelity = sum / static_cast<double>(rep.rows.size());
  rep.witness = 1.0 - 2.0 * rep.fidelity;
  rep.bell_b = b;
  rep.beta = beta;
  rep.beta_prime = betap;
  rep.degree_of_nonlocality = b / 4.0;
  return rep;
}

}  // namespace

double stabilizer_fidelity(const StateVector& psi,
                           const std::vector<StabilizerGroupElement>& group) {
  return group_mean(group, [&](const PauliString& p) { return pauli_expectation(p, psi); });
}

double stabilizer_fidelity(const DensityMatrix& rho,
                           const std::vector<StabilizerGroupElement>& group) {
  return group_mean(group, [&](const PauliString& p) { return pauli_expectation(p, rho); });
}

double witness(double fidelity) {
  if (fidelity < -1e-12 || fidelity > 1 + 1e-12) {
    throw std::invalid_argument("fidelity outside [0, 1]");
  }
  return 1.0 - 2.0 * fidelity;
}

double degree_of_nonlocality(double b_value) {
  if (b_value < 0) throw std::invalid_argument("Bell value must be non-negative");
  return b_value / 4.0;
}

StabilizerReport ingest_table3(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open stabilizer table " + csv_path);

  std::vector<std::string> valid;
  for (uint32_t mask = 0; mask < 64; ++mask) valid.push_back(subset_label(mask));

  std::vector<StabilizerRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("subset,", 0) == 0) continue;
    const auto parts = split(line, ',');
    if (parts.size() != 6) {
      throw std::runtime_error("malformed stabilizer table row: " + line);
    }
    StabilizerRow row;
    row.subset = parts[0];
    if (std::find(valid.begin(), valid.end(), row.subset) == valid.end()) {
      throw std::runtime_error("unknown subset label '" + row.subset + "'");
    }
    row.expectation = std::stod(parts[1]);
    row.uncertainty = std::stod(parts[2]);
    row.in_b = parts[3] == "1";
    row.in_beta = parts[4] == "1";
    row.in_beta_prime = parts[5] == "1";
    rows.push_back(row);
  }
  if (rows.size() != 64) {
    throw std::runtime_error("stabilizer table must have 64 rows, found " +
                             std::to_string(rows.size()));
  }
  for (const auto& r : rows) {
    if (std::count_if(rows.begin(), rows.end(),
                      [&](const StabilizerRow& o) { return o.subset == r.subset; }) != 1) {
      throw std::runtime_error("duplicate subset label '" + r.subset + "'");
    }
  }
  return aggregates_from_rows(std::move(rows));
}

StabilizerReport report_for(const DensityMatrix& rho) {
  const auto group = stabilizer_group(lc6_tilde_stabilizers());
  const auto b = bell_b(Frame::Laboratory);
  const auto beta = bell_beta(Frame::Laboratory);
  const auto betap = bell_beta_prime(Frame::Laboratory);

  auto in_expr = [](const BellExpression& e, const PauliString& p) {
    for (const auto& t : e.terms) {
      if (t.op == p || t.op == p.negated()) return true;
    }
    return false;
  };

  std::vector<StabilizerRow> rows;
  for (const auto& el : group) {
    StabilizerRow row;
    row.subset = el.label;
    row.expectation = pauli_expectation(el.op, rho);
    row.uncertainty = 0.0;
    row.in_b = in_expr(b, el.op);
    row.in_beta = in_expr(beta, el.op);
    row.in_beta_prime = in_expr(betap, el.op);
    rows.push_back(row);
  }
  return aggregates_from_rows(std::move(rows));
}

StabilizerReport report_for(const StateVector& psi) { return report_for(DensityMatrix(psi)); }

}  // namespace he6

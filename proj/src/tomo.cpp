#include "he6/tomo.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <stdexcept>

#include <json.hpp>

namespace he6 {

namespace {

void check_probability(double p, const char* name) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

std::vector<int> dof_qubits(Dof d) {
  const auto [a, b] = DofMapping::qubits(d);
  return {a, b};
}

// rho -> (1-p) rho + p Z_q rho Z_q, with Z_q diagonal in the index basis.
void dephase_qubit(Eigen::MatrixXcd& m, int qubit, double p) {
  if (p == 0.0) return;
  const uint32_t bit = 1u << (6 - qubit);
  const Eigen::Index dim = m.rows();
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const int sr = (static_cast<uint32_t>(r) & bit) ? -1 : 1;
      const int sc = (static_cast<uint32_t>(c) & bit) ? -1 : 1;
      if (sr * sc < 0) m(r, c) *= 1.0 - 2.0 * p;
    }
  }
}

Eigen::Vector2cd parse_vec2(const nlohmann::json& j) {
  return {cplx(j[0][0].get<double>(), j[0][1].get<double>()),
          cplx(j[1][0].get<double>(), j[1][1].get<double>())};
}

// 4-vector |a> (x) |b>.
Eigen::Vector4cd kron2(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  Eigen::Vector4cd v;
  v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return v;
}

// Two-qubit Pauli basis B_k = (sigma_i (x) sigma_j) / 2, orthonormal under
// the Hilbert-Schmidt inner product.
const std::array<Eigen::Matrix4cd, 16>& pauli_basis4() {
  static const std::array<Eigen::Matrix4cd, 16> basis = [] {
    std::array<Eigen::Matrix2cd, 4> s;
    s[0] = Eigen::Matrix2cd::Identity();
    s[1] = mat_x();
    s[2] = mat_y();
    s[3] = mat_z();
    std::array<Eigen::Matrix4cd, 16> out;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        Eigen::Matrix4cd m;
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) {
            m.block<2, 2>(2 * r, 2 * c) = s[i](r, c) * s[j];
          }
        }
        out[i * 4 + j] = 0.5 * m;
      }
    }
    return out;
  }();
  return basis;
}

// Lower-triangular parameter packing: 4 real diagonal entries followed by
// (re, im) pairs for (1,0), (2,0), (2,1), (3,0), (3,1), (3,2).
Eigen::Matrix4cd unpack_t(const std::array<double, 16>& t) {
  Eigen::Matrix4cd T = Eigen::Matrix4cd::Zero();
  T(0, 0) = t[0];
  T(1, 1) = t[1];
  T(2, 2) = t[2];
  T(3, 3) = t[3];
  const int idx[6][2] = {{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}};
  for (int k = 0; k < 6; ++k) {
    T(idx[k][0], idx[k][1]) = cplx(t[4 + 2 * k], t[5 + 2 * k]);
  }
  return T;
}

std::array<double, 16> pack_t(const Eigen::Matrix4cd& T) {
  std::array<double, 16> t{};
  t[0] = T(0, 0).real();
  t[1] = T(1, 1).real();
  t[2] = T(2, 2).real();
  t[3] = T(3, 3).real();
  const int idx[6][2] = {{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}};
  for (int k = 0; k < 6; ++k) {
    t[4 + 2 * k] = T(idx[k][0], idx[k][1]).real();
    t[5 + 2 * k] = T(idx[k][0], idx[k][1]).imag();
  }
  return t;
}

// Lower-triangular T with T^dag T = rho (a reverse Cholesky factorization,
// obtained by flipping the index order).
Eigen::Matrix4cd reverse_cholesky(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd J = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i) J(i, 3 - i) = 1.0;
  const Eigen::Matrix4cd flipped = J * rho * J;
  Eigen::LLT<Eigen::Matrix4cd> llt(flipped);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("positive-definite factorization failed");
  }
  const Eigen::Matrix4cd L = llt.matrixL();
  const Eigen::Matrix4cd U = J * L * J;  // upper triangular, rho = U U^dag
  return U.adjoint();
}

struct Objective {
  std::vector<Eigen::Vector4cd> projectors;  // |a (x) b> per setting
  std::vector<double> counts;

  // Poissonian negative log-likelihood with the flux profile out
  // analytically: N* = sum(n) / sum(tau).
  double operator()(const std::array<double, 16>& t) const {
    const Eigen::Matrix4cd T = unpack_t(t);
    const double norm = (T.adjoint() * T).trace().real();
    if (norm < 1e-300) return 1e300;
    double tau_sum = 0.0;
    std::array<double, 16> tau{};
    for (size_t v = 0; v < projectors.size(); ++v) {
      tau[v] = (T * projectors[v]).squaredNorm() / norm;
      tau_sum += tau[v];
    }
    double n_sum = 0.0;
    for (double n : counts) n_sum += n;
    const double flux = n_sum / tau_sum;
    double nll = 0.0;
    for (size_t v = 0; v < projectors.size(); ++v) {
      const double mu = std::max(flux * tau[v], 1e-12);
      nll += mu - counts[v] * std::log(mu);
    }
    return nll;
  }
};

}  // namespace

void NoiseModel::validate() const {
  check_probability(p_pi, "p_pi");
  check_probability(p_k, "p_k");
  check_probability(p_c, "p_c");
  check_probability(w, "w");
}

DensityMatrix apply_noise(const StateVector& psi, const NoiseModel& nm) {
  nm.validate();
  if (psi.n_qubits() != 6) throw std::invalid_argument("noise model acts on six qubits");
  Eigen::MatrixXcd m = psi.amps() * psi.amps().adjoint();
  for (int q : dof_qubits(Dof::Pi)) dephase_qubit(m, q, nm.p_pi);
  for (int q : dof_qubits(Dof::K)) dephase_qubit(m, q, nm.p_k);
  for (int q : dof_qubits(Dof::C)) dephase_qubit(m, q, nm.p_c);
  if (nm.w > 0) {
    m = (1.0 - nm.w) * m + nm.w * Eigen::MatrixXcd::Identity(64, 64) / 64.0;
  }
  DensityMatrix rho(6, std::move(m));
  rho.validate();
  return rho;
}

std::vector<AnalysisSetting> load_analysis_settings(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot open analysis settings " + json_path);
  nlohmann::json doc = nlohmann::json::parse(in);

  std::map<std::string, Eigen::Vector2cd> alphabet;
  for (const auto& [label, vec] : doc.at("basis_states").items()) {
    alphabet[label] = parse_vec2(vec);
  }

  std::vector<AnalysisSetting> out;
  for (const auto& row : doc.at("settings")) {
    AnalysisSetting s;
    s.id = row.at("id").get<int>();
    s.label_a = row.at("a").get<std::string>();
    s.label_b = row.at("b").get<std::string>();
    s.a = alphabet.at(s.label_a);
    s.b = alphabet.at(s.label_b);
    out.push_back(s);
  }
  if (out.size() != 16) {
    throw std::runtime_error("expected 16 analysis settings, found " +
                             std::to_string(out.size()));
  }

  // The first four settings must resolve the flux: their projectors sum to
  // the identity on the pair.
  Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
  for (int v = 0; v < 4; ++v) {
    const Eigen::Vector4cd p = kron2(out[v].a, out[v].b);
    sum += p * p.adjoint();
  }
  if ((sum - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::runtime_error("settings 1-4 do not form a complete product basis");
  }

  // Informational completeness: the 16 projectors span the operator space.
  Eigen::MatrixXd a(16, 16);
  const auto& basis = pauli_basis4();
  for (int v = 0; v < 16; ++v) {
    const Eigen::Vector4cd p = kron2(out[v].a, out[v].b);
    for (int k = 0; k < 16; ++k) {
      a(v, k) = (p.adjoint() * basis[k] * p)(0, 0).real();
    }
  }
  if (Eigen::FullPivLU<Eigen::MatrixXd>(a).rank() != 16) {
    throw std::runtime_error("analysis settings are not informationally complete");
  }
  return out;
}

std::vector<AnalysisSetting> relabel_for_dof(std::vector<AnalysisSetting> settings, Dof dof) {
  if (dof == Dof::Pi) return settings;
  auto translate = [dof](std::string label) {
    for (char& c : label) {
      if (c == 'H') c = DofMapping::zero_label(dof);
      if (c == 'V') c = DofMapping::one_label(dof);
    }
    return label;
  };
  for (auto& s : settings) {
    s.label_a = translate(s.label_a);
    s.label_b = translate(s.label_b);
  }
  return settings;
}

std::vector<double> projection_weights(const DensityMatrix& rho, Dof dof,
                                       const BranchSelector& branch,
                                       const std::vector<AnalysisSetting>& settings) {
  std::vector<double> out;
  out.reserve(settings.size());
  for (const auto& s : settings) {
    const StateVector proj = branch_product_state(branch, dof, s.a, s.b);
    const double tr = (proj.amps().adjoint() * rho.matrix() * proj.amps())(0, 0).real();
    out.push_back(std::max(tr, 0.0));
  }
  return out;
}

std::vector<double> setting_means(const DensityMatrix& rho, Dof dof,
                                  const BranchSelector& branch,
                                  const std::vector<AnalysisSetting>& settings,
                                  double rate, double seconds) {
  if (rate <= 0 || seconds <= 0) {
    throw std::invalid_argument("rate and acquisition time must be positive");
  }
  std::vector<double> out = projection_weights(rho, dof, branch, settings);
  // The first four settings form a complete basis on the pair, so their sum
  // is the branch weight; a vanishing branch cannot be analyzed.
  const double p_branch = out[0] + out[1] + out[2] + out[3];
  if (p_branch < 1e-12) {
    throw std::runtime_error("selector picks a branch with vanishing probability");
  }
  for (double& m : out) m *= rate * seconds / p_branch;
  return out;
}

double seconds_for_mean_counts(const DensityMatrix& rho, Dof dof,
                               const BranchSelector& branch,
                               const std::vector<AnalysisSetting>& settings,
                               double counts_per_setting, double rate) {
  if (counts_per_setting <= 0) {
    throw std::invalid_argument("counts per setting must be positive");
  }
  const auto unit = setting_means(rho, dof, branch, settings, rate, 1.0);
  double mean = 0.0;
  for (double m : unit) mean += m;
  mean /= static_cast<double>(unit.size());
  return counts_per_setting / mean;
}

std::vector<CountRecord> simulate_counts(const DensityMatrix& rho, Dof dof,
                                         const BranchSelector& branch,
                                         const std::vector<AnalysisSetting>& settings,
                                         double rate, double seconds, std::mt19937_64& rng) {
  const std::vector<double> means = setting_means(rho, dof, branch, settings, rate, seconds);
  std::vector<CountRecord> out;
  out.reserve(means.size());
  for (size_t v = 0; v < means.size(); ++v) {
    CountRecord rec;
    rec.setting_id = settings[v].id;
    rec.seconds = seconds;
    rec.rate = rate;
    if (means[v] > 0) {
      std::poisson_distribution<long long> poisson(means[v]);
      rec.count = poisson(rng);
    }
    out.push_back(rec);
  }
  return out;
}

Eigen::Matrix4cd linear_inversion(const std::vector<double>& counts,
                                  const std::vector<AnalysisSetting>& settings) {
  if (counts.size() != settings.size() || counts.size() != 16) {
    throw std::invalid_argument("linear inversion expects 16 settings and counts");
  }
  double flux = 0.0;
  for (int v = 0; v < 4; ++v) flux += counts[v];
  if (flux <= 0) throw std::invalid_argument("no counts in the normalization settings");

  const auto& basis = pauli_basis4();
  Eigen::MatrixXd a(16, 16);
  Eigen::VectorXd p(16);
  for (int v = 0; v < 16; ++v) {
    const Eigen::Vector4cd proj = kron2(settings[v].a, settings[v].b);
    for (int k = 0; k < 16; ++k) {
      a(v, k) = (proj.adjoint() * basis[k] * proj)(0, 0).real();
    }
    p(v) = counts[v] / flux;
  }
  const Eigen::VectorXd r = a.fullPivLu().solve(p);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 16; ++k) rho += r(k) * basis[k];
  // Symmetrize away the floating-point skew.
  return 0.5 * (rho + rho.adjoint());
}

MleResult reconstruct(const std::vector<double>& counts,
                      const std::vector<AnalysisSetting>& settings) {
  const Eigen::Matrix4cd rho_lin = linear_inversion(counts, settings);

  // Project onto the state space for the initial factorization.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho_lin);
  Eigen::Vector4d evs = es.eigenvalues().cwiseMax(1e-8);
  evs /= evs.sum();
  const Eigen::Matrix4cd rho0 =
      es.eigenvectors() * evs.asDiagonal() * es.eigenvectors().adjoint();

  Objective obj;
  obj.counts = counts;
  for (const auto& s : settings) obj.projectors.push_back(kron2(s.a, s.b));

  std::array<double, 16> t = pack_t(reverse_cholesky(rho0));
  double value = obj(t);

  const int max_iterations = 10000;
  const double rel_tol = 1e-9;
  int iterations = 0;
  bool converged = false;
  double step = 1.0;

  for (; iterations < max_iterations; ++iterations) {
    // Central-difference gradient.
    std::array<double, 16> grad{};
    double grad_norm2 = 0.0;
    for (int k = 0; k < 16; ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(t[k]));
      std::array<double, 16> tp = t, tm = t;
      tp[k] += h;
      tm[k] -= h;
      grad[k] = (obj(tp) - obj(tm)) / (2 * h);
      grad_norm2 += grad[k] * grad[k];
    }
    if (grad_norm2 == 0.0) {
      converged = true;
      break;
    }

    // Backtracking line search along the steepest descent direction.
    double next_value = value;
    std::array<double, 16> next_t = t;
    bool improved = false;
    double trial = step;
    for (int half = 0; half < 60; ++half) {
      std::array<double, 16> cand = t;
      for (int k = 0; k < 16; ++k) cand[k] -= trial * grad[k];
      const double cand_value = obj(cand);
      if (cand_value < value - 1e-4 * trial * grad_norm2) {
        next_value = cand_value;
        next_t = cand;
        improved = true;
        break;
      }
      trial /= 2;
    }
    if (!improved) {
      converged = true;
      break;
    }
    step = std::min(trial * 4, 1e6);

    const double rel = (value - next_value) / std::max(1.0, std::abs(value));
    t = next_t;
    value = next_value;
    if (rel < rel_tol) {
      converged = true;
      ++iterations;
      break;
    }
  }

  const Eigen::Matrix4cd T = unpack_t(t);
  Eigen::Matrix4cd rho = T.adjoint() * T;
  rho /= rho.trace().real();
  MleResult result{DensityMatrix(2, rho), -value, iterations, converged};
  result.rho.validate(1e-10, 1e-10, 1e-10);
  return result;
}

MleResult reconstruct(const std::vector<CountRecord>& counts,
                      const std::vector<AnalysisSetting>& settings) {
  std::vector<double> values;
  values.reserve(counts.size());
  for (const auto& rec : counts) values.push_back(static_cast<double>(rec.count));
  return reconstruct(values, settings);
}

std::vector<Table1Row> table1_report(const NoiseModel& nm, double counts_per_setting,
                                     int n_seeds, uint64_t base_seed,
                                     const std::string& table1_json_path,
                                     const std::string& settings_json_path, double rate) {
  std::ifstream in(table1_json_path);
  if (!in) throw std::runtime_error("cannot open fidelity table " + table1_json_path);
  nlohmann::json doc = nlohmann::json::parse(in);
  const auto base_settings = load_analysis_settings(settings_json_path);

  const DensityMatrix rho = apply_noise(build_lc6_tilde(), nm);

  std::vector<Table1Row> rows;
  int row_index = 0;
  for (const auto& jrow : doc.at("rows")) {
    Table1Row row;
    const auto& jbranch = jrow.at("branch");
    std::vector<std::pair<Dof, std::string>> constraints;
    for (const auto& [key, value] : jbranch.items()) {
      constraints.emplace_back(DofMapping::parse(key), value.get<std::string>());
    }
    if (constraints.size() != 2) throw std::runtime_error("branch must constrain two DOFs");
    row.branch = BranchSelector(constraints[0].first, constraints[0].second,
                                constraints[1].first, constraints[1].second);
    row.branch_label = constraints[0].second + "_" + DofMapping::name(constraints[0].first) +
                       " " + constraints[1].second + "_" +
                       DofMapping::name(constraints[1].first);
    row.output_dof = DofMapping::parse(jrow.at("output_dof").get<std::string>());
    row.target = parse_bell_family(jrow.at("target").get<std::string>());
    row.reference_fidelity = jrow.at("fidelity").get<double>();
    row.reference_uncertainty = jrow.at("uncertainty").get<double>();
    row.n_seeds = n_seeds;

    const auto settings = relabel_for_dof(base_settings, row.output_dof);
    const StateVector target = bell_state(row.target);
    const double seconds = seconds_for_mean_counts(rho, row.output_dof, row.branch, settings,
                                                   counts_per_setting, rate);

    std::vector<double> fids;
    if (n_seeds == 0) {
      const auto means = setting_means(rho, row.output_dof, row.branch, settings, rate, seconds);
      fids.push_back(fidelity(reconstruct(means, settings).rho, target));
    } else {
      for (int seed_i = 0; seed_i < n_seeds; ++seed_i) {
        std::mt19937_64 rng(base_seed + 1000003ull * row_index + seed_i);
        const auto counts =
            simulate_counts(rho, row.output_dof, row.branch, settings, rate, seconds, rng);
        fids.push_back(fidelity(reconstruct(counts, settings).rho, target));
      }
    }
    row.mean_fidelity = 0.0;
    row.min_fidelity = fids.front();
    row.max_fidelity = fids.front();
    for (double f : fids) {
      row.mean_fidelity += f;
      row.min_fidelity = std::min(row.min_fidelity, f);
      row.max_fidelity = std::max(row.max_fidelity, f);
    }
    row.mean_fidelity /= static_cast<double>(fids.size());
    rows.push_back(row);
    ++row_index;
  }
  return rows;
}

}  // namespace he6

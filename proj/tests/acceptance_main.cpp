// Acceptance suite: one check per shipped criterion, each printed as a
// PASS/FAIL line with its measured numbers. Exits nonzero if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "he6/builder.hpp"
#include "he6/cli.hpp"
#include "he6/graph.hpp"
#include "he6/mbqc.hpp"
#include "he6/nonlocality.hpp"
#include "he6/tomo.hpp"

using namespace he6;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

Eigen::MatrixXcd random_density64(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(64, 64);
  for (int r = 0; r < 3; ++r) {
    Eigen::VectorXcd v(64);
    for (int i = 0; i < 64; ++i) v(i) = cplx(gauss(rng), gauss(rng));
    v.normalize();
    acc += (1.0 + r) * (v * v.adjoint());
  }
  return acc / acc.trace().real();
}

// ---------------------------------------------------------------------------

void criterion1_state_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  const StateVector tilde = build_lc6_tilde();
  double worst = 1.0;
  worst = std::min(worst,
                   std::abs(overlap(tilde, apply_frame(build_lc6(), lab_frame_transform()))));
  for (auto form : {Factorization::BellInPolarization, Factorization::BellInMomentumK,
                    Factorization::BellInCone}) {
    worst = std::min(worst, std::abs(overlap(tilde, factorization(form))));
  }
  const double elapsed = seconds_since(t0);
  report(1, worst >= 1.0 - 1e-10 && elapsed < 1.0, "construction identity suite",
         "worst overlap " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

void criterion2_stabilizers() {
  const auto t0 = std::chrono::steady_clock::now();
  const StateVector tilde = build_lc6_tilde();
  const StateVector cluster = build_lc6();
  const auto lab = stabilizer_group(lc6_tilde_stabilizers());
  const auto clu = stabilizer_group(stabilizers_of(lc6_graph()));
  double worst_dev = 0.0, worst_cov = 0.0;
  for (size_t j = 0; j < lab.size(); ++j) {
    const double e_lab = pauli_expectation(lab[j].op, tilde);
    const double e_clu = pauli_expectation(clu[j].op, cluster);
    worst_dev = std::max(worst_dev, std::abs(e_lab - 1.0));
    worst_cov = std::max(worst_cov, std::abs(e_lab - e_clu));
  }
  const double elapsed = seconds_since(t0);
  report(2, lab.size() == 64 && worst_dev <= 1e-12 && worst_cov <= 1e-12 && elapsed < 1.0,
         "64 stabilizing operators and frame covariance",
         "worst |<S>-1| " + fmt(worst_dev) + ", worst frame delta " + fmt(worst_cov) + ", " +
             fmt(elapsed) + " s");
}

void criterion3_fidelity_witness() {
  const auto group = stabilizer_group(lc6_tilde_stabilizers());
  const StateVector target = build_lc6_tilde();
  std::mt19937_64 rng(314159);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho(6, random_density64(rng));
    worst = std::max(worst,
                     std::abs(stabilizer_fidelity(rho, group) - fidelity(rho, target)));
  }
  const bool crossing = witness(0.5) == 0.0;
  double worst_closed = 0.0;
  for (double p : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    Eigen::MatrixXcd m = p * DensityMatrix(target).matrix() +
                         (1 - p) * Eigen::MatrixXcd::Identity(64, 64) / 64.0;
    const double f = stabilizer_fidelity(DensityMatrix(6, std::move(m)), group);
    worst_closed = std::max(worst_closed, std::abs(f - (p + (1 - p) / 64.0)));
  }
  report(3, worst <= 1e-10 && crossing && worst_closed <= 1e-12,
         "stabilizer fidelity identities and witness crossing",
         "worst route delta " + fmt(worst) + ", worst closed-form delta " + fmt(worst_closed));
}

void criterion4_bell() {
  const auto t0 = std::chrono::steady_clock::now();
  const StateVector tilde = build_lc6_tilde();
  const double b = bell_value(bell_b(Frame::Laboratory), tilde, Frame::Laboratory);
  const double beta = bell_value(bell_beta(Frame::Laboratory), tilde, Frame::Laboratory);
  const double betap = bell_value(bell_beta_prime(Frame::Laboratory), tilde, Frame::Laboratory);
  const double mb = lhv_maximum(bell_b()).maximum;
  const double mbeta = lhv_maximum(bell_beta()).maximum;
  const double mbetap = lhv_maximum(bell_beta_prime()).maximum;
  const double elapsed = seconds_since(t0);
  const bool ok = std::abs(b - 16) <= 1e-10 && std::abs(beta - 4) <= 1e-10 &&
                  std::abs(betap - 4) <= 1e-10 && mb == 4.0 && mbeta == 2.0 &&
                  mbetap == 2.0 && elapsed < 10.0;
  report(4, ok, "ideal Bell values and exhaustive LHV maxima",
         "B=" + fmt(b) + " beta=" + fmt(beta) + " beta'=" + fmt(betap) + ", LHV " + fmt(mb) +
             "/" + fmt(mbeta) + "/" + fmt(mbetap) + ", " + fmt(elapsed) + " s");
}

void criterion5_paper_regression(const std::string& data_dir) {
  const auto rep = ingest_table3(data_dir + "/table3_stabilizers.csv");
  struct Check {
    const char* name;
    double got;
    double want;
  };
  const Check checks[] = {
      {"F", rep.fidelity, 0.6350},
      {"witness", rep.witness, -0.270},
      {"B", rep.bell_b, 7.018},
      {"beta", rep.beta, 2.325},
      {"beta_prime", rep.beta_prime, 2.881},
      {"D", rep.degree_of_nonlocality, 1.7545},
  };
  for (const auto& c : checks) {
    const double delta = std::abs(c.got - c.want);
    report(5, delta <= 5e-4,
           std::string("ingested table reproduces ") + c.name,
           "recomputed " + fmt(c.got) + " vs published " + fmt(c.want) + ", |delta| " +
               fmt(delta));
  }
}

void criterion6_mbqc() {
  const auto t0 = std::chrono::steady_clock::now();
  const StateVector tilde = build_lc6_tilde();
  const double grid[] = {0.0, std::numbers::pi / 4, std::numbers::pi / 2,
                         3 * std::numbers::pi / 2};
  double worst_fid = 1.0, worst_prob = 0.0;

  auto sweep = [&](PatternName name, bool socket_a, bool socket_b) {
    for (double a : (socket_a ? std::vector<double>(grid, grid + 4) : std::vector<double>{0})) {
      for (double b :
           (socket_b ? std::vector<double>(grid, grid + 4) : std::vector<double>{0})) {
        const auto pattern = pattern_bases(name, Frame::Laboratory, a, b);
        for (int idx = 0; idx < 16; ++idx) {
          const Outcomes s = Outcomes::from_index(idx);
          const auto res = run_pattern(tilde, pattern, s);
          worst_fid = std::min(worst_fid, fidelity(res.raw, expected_output(name, a, b, s)));
          worst_fid = std::min(worst_fid, res.fidelity_to_target);
          worst_prob = std::max(worst_prob, std::abs(res.probability - 1.0 / 16));
        }
      }
    }
  };
  sweep(PatternName::I, true, true);
  sweep(PatternName::II, true, false);
  sweep(PatternName::III, false, true);
  sweep(PatternName::IV, false, false);

  // Variant target and the error-free Bell-state output.
  const auto variant = pattern_bases(PatternName::IIVariant, Frame::Laboratory);
  Eigen::Vector4cd eq22;
  eq22 << cplx(-1, 0), 0, 0, cplx(0, 1);
  eq22 /= std::numbers::sqrt2;
  const double f_variant =
      fidelity(run_pattern(tilde, variant, Outcomes{}).raw, StateVector(2, eq22));
  const double f_phi_minus =
      fidelity(run_pattern(tilde, pattern_bases(PatternName::IV, Frame::Laboratory),
                           Outcomes{})
                   .raw,
               bell_state(BellFamily::PhiMinus));
  const double elapsed = seconds_since(t0);
  const bool ok = worst_fid >= 1.0 - 1e-10 && worst_prob <= 1e-10 &&
                  f_variant >= 1.0 - 1e-10 && f_phi_minus >= 1.0 - 1e-10 && elapsed < 10.0;
  report(6, ok, "pattern-circuit equivalence over branches and angles",
         "worst fidelity " + fmt(worst_fid) + ", worst prob dev " + fmt(worst_prob) +
             ", variant " + fmt(f_variant) + ", error-free IV " + fmt(f_phi_minus) + ", " +
             fmt(elapsed) + " s");
}

void criterion7_io_matrices(const std::string& data_dir) {
  std::ifstream in(data_dir + "/table4_io_reference.json");
  nlohmann::json table4 = nlohmann::json::parse(in);
  bool ok = true;
  std::string detail;
  for (PatternName name : {PatternName::I, PatternName::II, PatternName::III}) {
    const IoMatrix m = cnot_io_matrix(name);
    const auto& ref = table4.at("patterns").at(pattern_name(name));
    for (int r = 0; r < 4; ++r) {
      const std::string want_in = ref[r].at("input").get<std::string>();
      const std::string want_out = ref[r].at("expected_output").get<std::string>();
      const std::string got_out = m.output_labels[m.permutation[r]];
      const double diag = m.fidelities(r, m.permutation[r]);
      if (m.input_labels[r] != want_in || got_out != want_out ||
          std::abs(diag - 1.0) > 1e-10) {
        ok = false;
        detail += pattern_name(name) + ":" + want_in + "->" + got_out + " ";
      }
    }
  }
  report(7, ok, "one-way CNOT input-output permutations",
         ok ? "patterns I-III match the published permutation with unit diagonals"
            : "mismatches: " + detail);
}

void criterion8_tomography(const std::string& data_dir) {
  const auto t0 = std::chrono::steady_clock::now();

  // Statistical floors over the nine rows.
  const auto rows = table1_report(NoiseModel{}, 1e4, 50, 20100301,
                                  data_dir + "/table1_bell_fidelities.json",
                                  data_dir + "/tomo_settings_16.json");
  double worst_mean = 1.0, worst_min = 1.0;
  for (const auto& r : rows) {
    worst_mean = std::min(worst_mean, r.mean_fidelity);
    worst_min = std::min(worst_min, r.min_fidelity);
  }

  // Linear-inversion oracle on random states.
  const auto settings = load_analysis_settings(data_dir + "/tomo_settings_16.json");
  std::mt19937_64 rng(161803);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst_inv = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(4, 4);
    for (int r = 0; r < 4; ++r) {
      Eigen::VectorXcd v(4);
      for (int i = 0; i < 4; ++i) v(i) = cplx(gauss(rng), gauss(rng));
      v.normalize();
      acc += (0.5 + r) * (v * v.adjoint());
    }
    acc /= acc.trace().real();
    std::vector<double> means;
    for (const auto& s : settings) {
      Eigen::Vector4cd p;
      p << s.a(0) * s.b(0), s.a(0) * s.b(1), s.a(1) * s.b(0), s.a(1) * s.b(1);
      means.push_back(1e4 * (p.adjoint() * acc * p)(0, 0).real());
    }
    worst_inv =
        std::max(worst_inv, (linear_inversion(means, settings) - acc).cwiseAbs().maxCoeff());
  }

  // Positivity under shot noise (reconstruct() also validates internally).
  double worst_eig = 0.0;
  const DensityMatrix noisy = apply_noise(build_lc6_tilde(), NoiseModel::calibrated());
  for (int trial = 0; trial < 10; ++trial) {
    std::mt19937_64 nrng(991 + trial);
    const auto counts = simulate_counts(noisy, Dof::Pi, BranchSelector(Dof::C, "EE", Dof::K, "rl"),
                                        settings, 500.0, 1.0, nrng);
    const auto rec = reconstruct(counts, settings);
    worst_eig = std::min(worst_eig, rec.rho.eigenvalues().minCoeff());
  }

  const double elapsed = seconds_since(t0);
  const bool ok = worst_mean >= 0.99 && worst_min >= 0.97 && worst_inv <= 1e-8 &&
                  worst_eig >= -1e-10 && elapsed < 120.0;
  report(8, ok, "tomography recovery floors, inversion oracle, positivity",
         "worst mean " + fmt(worst_mean) + ", worst min " + fmt(worst_min) +
             ", inversion err " + fmt(worst_inv) + ", min eig " + fmt(worst_eig) + ", " +
             fmt(elapsed) + " s");
}

void criterion9_determinism(const std::string& cli, const std::string& data_dir) {
  if (cli.empty()) {
    report(9, false, "CLI determinism", "no CLI path provided");
    return;
  }
  const std::string dir = "/tmp/he6sim_acceptance";
  if (std::system(("mkdir -p " + dir).c_str()) != 0) {
    report(9, false, "CLI determinism", "cannot create scratch directory");
    return;
  }

  const std::vector<std::string> invocations = {
      "build --seed 7",
      "stabilizers --seed 7 --noise-w 0.25",
      "stabilizers --seed 7 --ingest-paper-table " + data_dir + "/table3_stabilizers.csv",
      "cnot --seed 7 --pattern I --alpha pi/4 --beta 3pi/2",
      "cnot --seed 7 --pattern II --mode io-matrix",
      "tomography --seed 7 --branch-c EE --branch-k rl --dof pi --counts-per-setting 500",
      "tomography --seed 7 --seeds 2 --counts-per-setting 300",
      "lhv --seed 7",
  };
  bool ok = true;
  std::string detail = "byte-identical reruns for " + std::to_string(invocations.size()) +
                       " invocations";
  for (size_t i = 0; i < invocations.size(); ++i) {
    const std::string a = dir + "/run_a_" + std::to_string(i) + ".json";
    const std::string b = dir + "/run_b_" + std::to_string(i) + ".json";
    const std::string base = cli + " " + invocations[i] + " --data-dir " + data_dir + " --out ";
    const int rc1 = std::system((base + a).c_str());
    const int rc2 = std::system((base + b).c_str());
    if (rc1 != rc2) {
      ok = false;
      detail = "exit codes differ for: " + invocations[i];
      break;
    }
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    if (sa.str().empty() || sa.str() != sb.str()) {
      ok = false;
      detail = "outputs differ for: " + invocations[i];
      break;
    }
  }
  report(9, ok, "CLI determinism under fixed seeds", detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string data_dir = "paper-data";
  std::string cli;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--data-dir") data_dir = argv[i + 1];
    if (flag == "--cli") cli = argv[i + 1];
  }

  criterion1_state_identities();
  criterion2_stabilizers();
  criterion3_fidelity_witness();
  criterion4_bell();
  criterion5_paper_regression(data_dir);
  criterion6_mbqc();
  criterion7_io_matrices(data_dir);
  criterion8_tomography(data_dir);
  criterion9_determinism(cli, data_dir);

  if (g_failures > 0) {
    std::printf("%d acceptance check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance checks passed\n");
  return 0;
}

#include "he6/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "he6/angles.hpp"
#include "he6/mbqc.hpp"
#include "he6/nonlocality.hpp"
#include "he6/serialize.hpp"

namespace he6 {

namespace {

constexpr int kSchemaVersion = 1;

using io::json;

std::string format_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", std::abs(x) < 1e-14 ? 0.0 : x);
  return buf;
}

json config_echo(const RunConfig& c) {
  return json{{"command", c.command},
              {"seed", c.seed},
              {"format", c.format},
              {"noise", {{"p_pi", c.noise.p_pi}, {"p_k", c.noise.p_k}, {"p_c", c.noise.p_c}, {"w", c.noise.w}}},
              {"pattern", c.pattern},
              {"alpha", c.alpha},
              {"beta", c.beta},
              {"mode", c.mode},
              {"counts_per_setting", c.counts_per_setting},
              {"seeds", c.n_seeds},
              {"dof", c.dof},
              {"branch", {{"c", c.branch_c}, {"pi", c.branch_pi}, {"k", c.branch_k}}},
              {"ingest_path", c.ingest_path},
              {"data_dir", c.data_dir}};
}

json envelope(const RunConfig& c) {
  return json{{"schema_version", kSchemaVersion}, {"config", config_echo(c)}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file " + path);
  return json::parse(in);
}

void require_format(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") {
    throw std::invalid_argument("format must be json or csv");
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------- build ----

struct IdentityCheck {
  std::string name;
  bool passed;
  double value;  // diagnostic (overlap or residual)
};

std::vector<IdentityCheck> build_identity_checks() {
  std::vector<IdentityCheck> checks;
  const StateVector tilde = build_lc6_tilde();

  const StateVector via_frame = apply_frame(build_lc6(), lab_frame_transform());
  checks.push_back({"gate_chain_equals_frame_route",
                    state_equal_up_to_global_phase(tilde, via_frame, 1e-10),
                    std::abs(overlap(tilde, via_frame))});

  checks.push_back({"cx_h_cz_property", cx_h_cz_identity_check(), 1.0});

  const std::pair<Factorization, std::string> forms[] = {
      {Factorization::BellInPolarization, "factorization_bell_in_pi"},
      {Factorization::BellInMomentumK, "factorization_bell_in_k"},
      {Factorization::BellInCone, "factorization_bell_in_c"},
  };
  for (const auto& [form, name] : forms) {
    const StateVector f = factorization(form);
    checks.push_back({name, state_equal_up_to_global_phase(f, tilde, 1e-10),
                      std::abs(overlap(f, tilde))});
  }

  double worst = 1.0;
  for (const auto& el : stabilizer_group(lc6_tilde_stabilizers())) {
    worst = std::min(worst, pauli_expectation(el.op, tilde));
  }
  checks.push_back({"stabilizer_eigenstate", std::abs(worst - 1.0) < 1e-12, worst});

  const double ov = std::abs(overlap(build_he6(), tilde));
  checks.push_back({"he6_overlap_one_quarter", std::abs(ov - 0.25) < 1e-12, ov});
  return checks;
}

}  // namespace

CmdResult cmd_build(const RunConfig& config) {
  require_format(config);
  const auto checks = build_identity_checks();
  bool all_ok = true;
  for (const auto& c : checks) all_ok &= c.passed;

  if (config.format == "csv") {
    std::string out;
    for (const auto& c : checks) {
      out += "# identity " + c.name + " " + (c.passed ? "pass" : "FAIL") + " value=" +
             format_num(c.value) + "\n";
    }
    out += "state,index,label,re,im\n";
    const StateVector he6 = build_he6();
    const StateVector tilde = build_lc6_tilde();
    for (uint32_t i = 0; i < 64; ++i) {
      out += "he6," + std::to_string(i) + "," + basis_label(i) + "," +
             format_num(he6.amp(i).real()) + "," + format_num(he6.amp(i).imag()) + "\n";
    }
    for (uint32_t i = 0; i < 64; ++i) {
      out += "lc6_tilde," + std::to_string(i) + "," + basis_label(i) + "," +
             format_num(tilde.amp(i).real()) + "," + format_num(tilde.amp(i).imag()) + "\n";
    }
    return {all_ok ? 0 : 1, out};
  }

  json doc = envelope(config);
  json identities = json::array();
  for (const auto& c : checks) {
    identities.push_back(json{{"name", c.name}, {"passed", c.passed}, {"value", c.value}});
  }
  doc["identities"] = std::move(identities);
  doc["all_identities_pass"] = all_ok;
  doc["he6_amplitudes"] = io::state_amplitudes_json(build_he6(), true);
  doc["lc6_tilde_amplitudes"] = io::state_amplitudes_json(build_lc6_tilde(), true);
  return {all_ok ? 0 : 1, dump(doc)};
}

// --------------------------------------------------------- stabilizers ----

CmdResult cmd_stabilizers(const RunConfig& config) {
  require_format(config);

  std::map<std::string, std::string> pauli_of;
  for (const auto& el : stabilizer_group(lc6_tilde_stabilizers())) {
    pauli_of[el.label] = el.op.to_string();
  }

  StabilizerReport report;
  json reference = json::object();
  json deltas = json::object();
  if (!config.ingest_path.empty()) {
    report = ingest_table3(config.ingest_path);
    const json agg = load_json_file(config.data_dir + "/table3_aggregates.json");
    auto add = [&](const char* key, double got) {
      const double want = agg.at(key).at("value").get<double>();
      reference[key] = want;
      deltas[key] = got - want;
    };
    add("fidelity", report.fidelity);
    add("witness", report.witness);
    add("bell_b", report.bell_b);
    add("beta", report.beta);
    add("beta_prime", report.beta_prime);
    add("degree_of_nonlocality", report.degree_of_nonlocality);
  } else {
    report = report_for(apply_noise(build_lc6_tilde(), config.noise));
  }

  if (config.format == "csv") {
    std::string out = "subset,pauli,expectation,uncertainty,in_b,in_beta,in_beta_prime\n";
    for (const auto& r : report.rows) {
      out += r.subset + "," + pauli_of.at(r.subset) + "," + format_num(r.expectation) + "," +
             format_num(r.uncertainty) + "," + std::to_string(r.in_b) + "," +
             std::to_string(r.in_beta) + "," + std::to_string(r.in_beta_prime) + "\n";
    }
    out += "# F=" + format_num(report.fidelity) + " witness=" + format_num(report.witness) +
           " B=" + format_num(report.bell_b) + " beta=" + format_num(report.beta) +
           " beta_prime=" + format_num(report.beta_prime) +
           " D=" + format_num(report.degree_of_nonlocality) + "\n";
    return {0, out};
  }

  json doc = envelope(config);
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back(json{{"subset", r.subset},
                        {"pauli", pauli_of.at(r.subset)},
                        {"expectation", r.expectation},
                        {"uncertainty", r.uncertainty},
                        {"in_b", r.in_b},
                        {"in_beta", r.in_beta},
                        {"in_beta_prime", r.in_beta_prime}});
  }
  doc["rows"] = std::move(rows);
  doc["aggregates"] = json{{"fidelity", report.fidelity},
                           {"witness", report.witness},
                           {"bell_b", report.bell_b},
                           {"beta", report.beta},
                           {"beta_prime", report.beta_prime},
                           {"degree_of_nonlocality", report.degree_of_nonlocality}};
  if (!reference.empty()) {
    doc["reference"] = std::move(reference);
    doc["delta_to_reference"] = std::move(deltas);
  }
  return {0, dump(doc)};
}

// ---------------------------------------------------------------- cnot ----

CmdResult cmd_cnot(const RunConfig& config) {
  require_format(config);
  const double alpha = parse_angle(config.alpha);
  const double beta = parse_angle(config.beta);
  PatternName name = parse_pattern(config.pattern);
  if (config.mode == "variant") name = PatternName::IIVariant;

  if (config.mode != "branches" && config.mode != "io-matrix" && config.mode != "variant") {
    throw std::invalid_argument("cnot mode must be branches, io-matrix or variant");
  }

  json doc = envelope(config);
  doc["pattern"] = pattern_name(name);
  doc["frame"] = "laboratory";

  if (config.mode == "io-matrix") {
    const IoMatrix m = cnot_io_matrix(name);  // rejects IV with a usage hint
    const json table4 = load_json_file(config.data_dir + "/table4_io_reference.json");
    json matrix = json::array();
    for (int r = 0; r < 4; ++r) {
      json row = json::array();
      for (int c = 0; c < 4; ++c) row.push_back(m.fidelities(r, c));
      matrix.push_back(std::move(row));
    }
    json perm = json::array();
    for (int r = 0; r < 4; ++r) perm.push_back(m.output_labels[m.permutation[r]]);

    if (config.format == "csv") {
      std::string out = "input";
      for (const auto& l : m.output_labels) out += "," + l;
      out += "\n";
      for (int r = 0; r < 4; ++r) {
        out += m.input_labels[r];
        for (int c = 0; c < 4; ++c) out += "," + format_num(m.fidelities(r, c));
        out += "\n";
      }
      return {0, out};
    }
    doc["io_matrix"] = json{{"input_labels", m.input_labels},
                            {"output_labels", m.output_labels},
                            {"fidelities", std::move(matrix)},
                            {"input_to_output", std::move(perm)}};
    doc["reference"] = table4.at("patterns").at(pattern_name(name));
    return {0, dump(doc)};
  }

  const MeasurementPattern pattern = pattern_bases(name, Frame::Laboratory, alpha, beta);
  const StateVector tilde = build_lc6_tilde();

  json branches = json::array();
  bool all_ok = true;
  for (int idx = 0; idx < 16; ++idx) {
    const Outcomes s = Outcomes::from_index(idx);
    const ComputationResult res = run_pattern(tilde, pattern, s);
    all_ok &= res.fidelity_to_target > 1.0 - 1e-9;
    branches.push_back(json{{"s", {{"s1", s.s1}, {"s3", s.s3}, {"s4", s.s4}, {"s6", s.s6}}},
                            {"probability", res.probability},
                            {"fidelity_vs_target", res.fidelity_to_target}});
  }
  const StateVector target_ab = to_ab_order(circuit_output(name, pattern.alpha, pattern.beta));
  doc["alpha_radians"] = pattern.alpha;
  doc["beta_radians"] = pattern.beta;
  doc["branches"] = std::move(branches);
  doc["target_state_ab"] = io::state_amplitudes_json(target_ab, false);

  if (config.mode == "variant") {
    const json table4 = load_json_file(config.data_dir + "/table4_io_reference.json");
    doc["reference_fidelity"] = table4.at("pattern_ii_variant").at("fidelity");
    doc["reference_uncertainty"] = table4.at("pattern_ii_variant").at("uncertainty");
  }

  if (config.format == "csv") {
    std::string out = "s1,s3,s4,s6,probability,fidelity_vs_target\n";
    for (int idx = 0; idx < 16; ++idx) {
      const Outcomes s = Outcomes::from_index(idx);
      const ComputationResult res = run_pattern(tilde, pattern, s);
      out += std::to_string(s.s1) + "," + std::to_string(s.s3) + "," + std::to_string(s.s4) +
             "," + std::to_string(s.s6) + "," + format_num(res.probability) + "," +
             format_num(res.fidelity_to_target) + "\n";
    }
    return {all_ok ? 0 : 1, out};
  }
  return {all_ok ? 0 : 1, dump(doc)};
}

// ---------------------------------------------------------- tomography ----

namespace {

BranchSelector branch_from_config(const RunConfig& c, Dof output_dof) {
  std::vector<std::pair<Dof, std::string>> given;
  if (!c.branch_c.empty()) given.emplace_back(Dof::C, c.branch_c);
  if (!c.branch_pi.empty()) given.emplace_back(Dof::Pi, c.branch_pi);
  if (!c.branch_k.empty()) given.emplace_back(Dof::K, c.branch_k);
  if (given.size() != 2) {
    throw std::invalid_argument("single-branch tomography needs exactly two branch flags");
  }
  for (const auto& [d, v] : given) {
    if (d == output_dof) {
      throw std::invalid_argument("branch selector must not constrain the analyzed DOF");
    }
  }
  return {given[0].first, given[0].second, given[1].first, given[1].second};
}

}  // namespace

CmdResult cmd_tomography(const RunConfig& config) {
  require_format(config);
  const bool single_branch =
      !(config.branch_c.empty() && config.branch_pi.empty() && config.branch_k.empty());

  if (!single_branch) {
    const auto rows = table1_report(config.noise, config.counts_per_setting, config.n_seeds,
                                    config.seed, config.data_dir + "/table1_bell_fidelities.json",
                                    config.data_dir + "/tomo_settings_16.json");
    if (config.format == "csv") {
      std::string out = "branch,dof,target,mean_fidelity,min_fidelity,max_fidelity,seeds,"
                        "reference_fidelity,reference_uncertainty\n";
      for (const auto& r : rows) {
        out += r.branch_label + "," + DofMapping::name(r.output_dof) + "," +
               bell_family_name(r.target) + "," + format_num(r.mean_fidelity) + "," +
               format_num(r.min_fidelity) + "," + format_num(r.max_fidelity) + "," +
               std::to_string(r.n_seeds) + "," + format_num(r.reference_fidelity) + "," +
               format_num(r.reference_uncertainty) + "\n";
      }
      return {0, out};
    }
    json doc = envelope(config);
    json jrows = json::array();
    for (const auto& r : rows) {
      jrows.push_back(json{{"branch", r.branch_label},
                           {"dof", DofMapping::name(r.output_dof)},
                           {"target", bell_family_name(r.target)},
                           {"mean_fidelity", r.mean_fidelity},
                           {"min_fidelity", r.min_fidelity},
                           {"max_fidelity", r.max_fidelity},
                           {"seeds", r.n_seeds},
                           {"reference_fidelity", r.reference_fidelity},
                           {"reference_uncertainty", r.reference_uncertainty}});
    }
    doc["rows"] = std::move(jrows);
    return {0, dump(doc)};
  }

  const Dof dof = DofMapping::parse(config.dof);
  const BranchSelector branch = branch_from_config(config, dof);
  const BellStateId target_id = conditional_bell(branch, dof);
  const StateVector target = bell_state(target_id.family);

  const auto settings =
      relabel_for_dof(load_analysis_settings(config.data_dir + "/tomo_settings_16.json"), dof);
  const DensityMatrix rho = apply_noise(build_lc6_tilde(), config.noise);
  const double seconds =
      seconds_for_mean_counts(rho, dof, branch, settings, config.counts_per_setting, 500.0);

  std::mt19937_64 rng(config.seed);
  const auto counts = simulate_counts(rho, dof, branch, settings, 500.0, seconds, rng);
  const MleResult rec = reconstruct(counts, settings);
  const double fid = fidelity(rec.rho, target);

  if (config.format == "csv") {
    std::string out = "setting,label_a,label_b,count\n";
    for (size_t v = 0; v < counts.size(); ++v) {
      out += std::to_string(counts[v].setting_id) + "," + settings[v].label_a + "," +
             settings[v].label_b + "," + std::to_string(counts[v].count) + "\n";
    }
    out += "# reconstructed density matrix, row-major re,im pairs\n";
    out += io::density_csv(rec.rho);
    out += "# target=" + bell_family_name(target_id.family) + " fidelity=" + format_num(fid) +
           "\n";
    return {0, out};
  }

  json doc = envelope(config);
  json jcounts = json::array();
  for (size_t v = 0; v < counts.size(); ++v) {
    jcounts.push_back(json{{"setting", counts[v].setting_id},
                           {"a", settings[v].label_a},
                           {"b", settings[v].label_b},
                           {"count", counts[v].count},
                           {"seconds", counts[v].seconds},
                           {"rate", counts[v].rate}});
  }
  doc["counts"] = std::move(jcounts);
  doc["reconstruction"] = json{{"matrix", io::density_json(rec.rho)},
                               {"barchart", io::barchart_json(rec.rho, dof)},
                               {"log_likelihood", rec.log_likelihood},
                               {"iterations", rec.iterations},
                               {"converged", rec.converged}};
  doc["target"] = bell_family_name(target_id.family);
  doc["fidelity_to_target"] = fid;
  return {0, dump(doc)};
}

// ----------------------------------------------------------------- lhv ----

CmdResult cmd_lhv(const RunConfig& config) {
  require_format(config);
  json doc = envelope(config);
  json exprs = json::array();
  std::string csv = "name,maximum,bound,n_observables\n";
  for (const BellExpression& e : {bell_b(), bell_beta(), bell_beta_prime()}) {
    const LhvResult r = lhv_maximum(e);
    json assignment = json::object();
    for (const auto& [key, v] : r.assignment) {
      assignment[std::string(1, key.second) + std::to_string(key.first)] = v;
    }
    exprs.push_back(json{{"name", e.name},
                         {"terms", e.terms.size()},
                         {"lhv_maximum", r.maximum},
                         {"stated_bound", e.lhv_bound},
                         {"n_observables", r.n_observables},
                         {"maximizing_assignment", std::move(assignment)}});
    csv += e.name + "," + format_num(r.maximum) + "," + format_num(e.lhv_bound) + "," +
           std::to_string(r.n_observables) + "\n";
  }
  doc["expressions"] = std::move(exprs);
  if (config.format == "csv") return {0, csv};
  return {0, dump(doc)};
}

CmdResult run_command(const RunConfig& config) {
  try {
    if (config.command == "build") return cmd_build(config);
    if (config.command == "stabilizers") return cmd_stabilizers(config);
    if (config.command == "cnot") return cmd_cnot(config);
    if (config.command == "tomography") return cmd_tomography(config);
    if (config.command == "lhv") return cmd_lhv(config);
    throw std::invalid_argument("unknown command '" + config.command + "'");
  } catch (const std::invalid_argument& e) {
    json doc{{"schema_version", kSchemaVersion}, {"error", e.what()}, {"exit_code", 2}};
    return {2, dump(doc)};
  } catch (const std::exception& e) {
    json doc{{"schema_version", kSchemaVersion}, {"error", e.what()}, {"exit_code", 1}};
    return {1, dump(doc)};
  }
}

}  // namespace he6

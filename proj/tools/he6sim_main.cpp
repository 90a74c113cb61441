#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "he6/cli.hpp"

namespace {

void add_common(CLI::App* cmd, he6::RunConfig& config) {
  cmd->add_option("--seed", config.seed, "RNG seed; identical seeds give identical output");
  cmd->add_option("--format", config.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", config.out_path, "Write output to this file instead of stdout");
  cmd->add_option("--data-dir", config.data_dir, "Directory holding the bundled data files");
}

void add_noise(CLI::App* cmd, he6::RunConfig& config) {
  cmd->add_option("--noise-p-pi", config.noise.p_pi, "Polarization dephasing strength");
  cmd->add_option("--noise-p-k", config.noise.p_k, "r/l momentum dephasing strength");
  cmd->add_option("--noise-p-c", config.noise.p_c, "E/I momentum dephasing strength");
  cmd->add_option("--noise-w", config.noise.w, "White-noise fraction");
  cmd->add_flag_callback(
      "--noise-calibrated", [&config] { config.noise = he6::NoiseModel::calibrated(); },
      "Use the committed illustrative noise preset");
}

int emit(const he6::CmdResult& result, const he6::RunConfig& config) {
  if (config.out_path.empty()) {
    std::fputs(result.body.c_str(), stdout);
  } else {
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "cannot write %s\n", config.out_path.c_str());
      return 1;
    }
    out << result.body;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and analysis tool for the two-photon six-qubit hyperentangled "
               "cluster state: construction identities, stabilizer and Bell analysis, "
               "one-way CNOT patterns, and maximum-likelihood tomography"};
  app.require_subcommand(1);

  he6::RunConfig config;

  CLI::App* build = app.add_subcommand(
      "build", "Construct the hyperentangled and cluster states and verify the identities");
  add_common(build, config);

  CLI::App* stab = app.add_subcommand(
      "stabilizers", "Emit the 64-row stabilizer table with fidelity/witness/Bell aggregates");
  add_common(stab, config);
  add_noise(stab, config);
  stab->add_option("--ingest-paper-table", config.ingest_path,
                   "Recompute the aggregates from a bundled measurement table");

  CLI::App* cnot = app.add_subcommand("cnot", "Run a one-way CNOT measurement pattern");
  add_common(cnot, config);
  cnot->add_option("--pattern", config.pattern, "Pattern name: I, II, III or IV");
  cnot->add_option("--alpha", config.alpha, "Alpha socket angle (radians or pi literal)");
  cnot->add_option("--beta", config.beta, "Beta socket angle (radians or pi literal)");
  cnot->add_option("--mode", config.mode, "branches, io-matrix or variant")
      ->check(CLI::IsMember({"branches", "io-matrix", "variant"}));

  CLI::App* tomo = app.add_subcommand(
      "tomography", "Simulate coincidence counts and reconstruct two-qubit substates");
  add_common(tomo, config);
  add_noise(tomo, config);
  tomo->add_option("--counts-per-setting", config.counts_per_setting,
                   "Average expected counts per analysis setting");
  tomo->add_option("--seeds", config.n_seeds, "Seeds per row (0 = exact-means surrogate)");
  tomo->add_option("--dof", config.dof, "Analyzed DOF: pi, k or c")
      ->check(CLI::IsMember({"pi", "k", "c"}));
  tomo->add_option("--branch-c", config.branch_c, "E/I branch value, e.g. EE");
  tomo->add_option("--branch-pi", config.branch_pi, "Polarization branch value, e.g. HH or ++");
  tomo->add_option("--branch-k", config.branch_k, "r/l branch value, e.g. rl");

  CLI::App* lhv = app.add_subcommand(
      "lhv", "Exhaustive deterministic local-hidden-variable maxima of the Bell expressions");
  add_common(lhv, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  return emit(he6::run_command(config), config);
}

#pragma once

#include <cstdint>
#include <string>

#include "he6/tomo.hpp"

namespace he6 {

// Configuration of one CLI invocation. Identical configs (seed included)
// produce byte-identical output.
struct RunConfig {
  std::string command;          // build | stabilizers | cnot | tomography | lhv
  uint64_t seed = 12345;
  std::string format = "json";  // json | csv
  std::string out_path;         // empty writes to stdout

  NoiseModel noise;

  std::string pattern = "I";
  std::string alpha = "0";      // parse_angle syntax, e.g. "3pi/2"
  std::string beta = "0";
  std::string mode = "branches";  // cnot: branches | io-matrix | variant

  double counts_per_setting = 10000.0;
  int n_seeds = 1;
  std::string dof = "pi";
  std::string branch_c;         // e.g. "EE"; two of the three select a branch
  std::string branch_pi;
  std::string branch_k;

  std::string ingest_path;      // stabilizers: recompute from a bundled table

  std::string data_dir = "paper-data";
};

struct CmdResult {
  int exit_code = 0;  // 0 ok, 1 verification failure, 2 usage error
  std::string body;
};

CmdResult cmd_build(const RunConfig& config);
CmdResult cmd_stabilizers(const RunConfig& config);
CmdResult cmd_cnot(const RunConfig& config);
CmdResult cmd_tomography(const RunConfig& config);
CmdResult cmd_lhv(const RunConfig& config);

// Dispatch on config.command; usage problems surface as std::invalid_argument.
CmdResult run_command(const RunConfig& config);

}  // namespace he6

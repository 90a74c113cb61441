#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "he6/angles.hpp"
#include "he6/builder.hpp"
#include "he6/mbqc.hpp"
#include "he6/nonlocality.hpp"
#include "he6/tomo.hpp"

namespace py = pybind11;
using namespace he6;

namespace {

std::vector<cplx> amps_of(const StateVector& psi) {
  return {psi.amps().data(), psi.amps().data() + psi.dim()};
}

std::vector<std::vector<cplx>> matrix_of(const DensityMatrix& rho) {
  std::vector<std::vector<cplx>> out;
  for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) {
    std::vector<cplx> row;
    for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c) row.push_back(rho.matrix()(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

BranchSelector selector_from_dict(const py::dict& branch) {
  std::vector<std::pair<Dof, std::string>> given;
  for (const auto& item : branch) {
    given.emplace_back(DofMapping::parse(py::cast<std::string>(item.first)),
                       py::cast<std::string>(item.second));
  }
  if (given.size() != 2) throw std::invalid_argument("branch must constrain exactly two DOFs");
  return {given[0].first, given[0].second, given[1].first, given[1].second};
}

NoiseModel noise_from_args(double p_pi, double p_k, double p_c, double w) {
  NoiseModel nm{p_pi, p_k, p_c, w};
  nm.validate();
  return nm;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-photon six-qubit hyperentangled cluster state: construction, stabilizer "
            "and Bell analysis, one-way CNOT patterns, and maximum-likelihood tomography";

  m.def("build_he6", [] { return amps_of(build_he6()); },
        "Amplitudes of the three-Bell-pair hyperentangled state");
  m.def("build_lc6_tilde", [] { return amps_of(build_lc6_tilde()); },
        "Amplitudes of the lab-frame six-qubit linear cluster state");
  m.def("basis_labels", [] {
    std::vector<std::string> labels;
    for (uint32_t i = 0; i < 64; ++i) labels.push_back(basis_label(i));
    return labels;
  });
  m.def("parse_angle", &parse_angle, py::arg("text"));

  m.def(
      "stabilizer_report",
      [](double p_pi, double p_k, double p_c, double w) {
        const auto rep =
            report_for(apply_noise(build_lc6_tilde(), noise_from_args(p_pi, p_k, p_c, w)));
        py::list rows;
        for (const auto& r : rep.rows) {
          rows.append(py::dict(py::arg("subset") = r.subset,
                               py::arg("expectation") = r.expectation));
        }
        return py::dict(py::arg("rows") = rows, py::arg("fidelity") = rep.fidelity,
                        py::arg("witness") = rep.witness, py::arg("bell_b") = rep.bell_b,
                        py::arg("beta") = rep.beta, py::arg("beta_prime") = rep.beta_prime,
                        py::arg("degree_of_nonlocality") = rep.degree_of_nonlocality);
      },
      py::arg("p_pi") = 0.0, py::arg("p_k") = 0.0, py::arg("p_c") = 0.0, py::arg("w") = 0.0,
      "Stabilizer expectations and aggregate quantities of the (optionally noisy) state");

  m.def("lhv_maxima", [] {
    py::dict out;
    for (const BellExpression& e : {bell_b(), bell_beta(), bell_beta_prime()}) {
      out[e.name.c_str()] = lhv_maximum(e).maximum;
    }
    return out;
  });

  m.def(
      "run_pattern",
      [](const std::string& pattern, double alpha, double beta,
         const std::vector<int>& outcomes) {
        if (outcomes.size() != 4) {
          throw std::invalid_argument("outcomes must be (s1, s3, s4, s6)");
        }
        Outcomes s;
        s.s1 = outcomes[0];
        s.s3 = outcomes[1];
        s.s4 = outcomes[2];
        s.s6 = outcomes[3];
        const auto p = pattern_bases(parse_pattern(pattern), Frame::Laboratory, alpha, beta);
        const auto res = run_pattern(build_lc6_tilde(), p, s);
        return py::dict(py::arg("probability") = res.probability,
                        py::arg("fidelity_to_target") = res.fidelity_to_target,
                        py::arg("raw_ab") = amps_of(to_ab_order(res.raw)),
                        py::arg("corrected_ab") = amps_of(to_ab_order(res.corrected)),
                        py::arg("target_ab") = amps_of(to_ab_order(res.target)));
      },
      py::arg("pattern"), py::arg("alpha") = 0.0, py::arg("beta") = 0.0,
      py::arg("outcomes") = std::vector<int>{0, 0, 0, 0},
      "Run one forced branch of a laboratory-frame measurement pattern");

  m.def(
      "cnot_io_matrix",
      [](const std::string& pattern) {
        const IoMatrix m2 = cnot_io_matrix(parse_pattern(pattern));
        std::vector<std::vector<double>> fid;
        for (int r = 0; r < 4; ++r) {
          fid.push_back({m2.fidelities(r, 0), m2.fidelities(r, 1), m2.fidelities(r, 2),
                         m2.fidelities(r, 3)});
        }
        std::vector<std::string> outputs;
        for (int r = 0; r < 4; ++r) outputs.push_back(m2.output_labels[m2.permutation[r]]);
        return py::dict(py::arg("inputs") = m2.input_labels, py::arg("fidelities") = fid,
                        py::arg("input_to_output") = outputs);
      },
      py::arg("pattern"));

  m.def(
      "conditional_bell",
      [](const py::dict& branch, const std::string& output_dof) {
        return bell_family_name(
            conditional_bell(selector_from_dict(branch), DofMapping::parse(output_dof)).family);
      },
      py::arg("branch"), py::arg("output_dof"),
      "Bell state carried by the output DOF after projecting the selector branch");

  m.def(
      "tomography_run",
      [](const std::string& dof_name, const py::dict& branch, double counts_per_setting,
         uint64_t seed, const std::string& settings_path, double p_pi, double p_k, double p_c,
         double w) {
        const Dof dof = DofMapping::parse(dof_name);
        const BranchSelector sel = selector_from_dict(branch);
        const auto settings = relabel_for_dof(load_analysis_settings(settings_path), dof);
        const DensityMatrix rho =
            apply_noise(build_lc6_tilde(), noise_from_args(p_pi, p_k, p_c, w));
        const double seconds =
            seconds_for_mean_counts(rho, dof, sel, settings, counts_per_setting, 500.0);
        std::mt19937_64 rng(seed);
        const auto counts = simulate_counts(rho, dof, sel, settings, 500.0, seconds, rng);
        const auto rec = reconstruct(counts, settings);
        const auto target = conditional_bell(sel, dof);
        std::vector<long long> raw;
        for (const auto& c : counts) raw.push_back(c.count);
        return py::dict(py::arg("counts") = raw, py::arg("matrix") = matrix_of(rec.rho),
                        py::arg("iterations") = rec.iterations,
                        py::arg("converged") = rec.converged,
                        py::arg("target") = bell_family_name(target.family),
                        py::arg("fidelity") = fidelity(rec.rho, bell_state(target.family)));
      },
      py::arg("dof"), py::arg("branch"), py::arg("counts_per_setting") = 10000.0,
      py::arg("seed") = 12345, py::arg("settings_path") = "paper-data/tomo_settings_16.json",
      py::arg("p_pi") = 0.0, py::arg("p_k") = 0.0, py::arg("p_c") = 0.0, py::arg("w") = 0.0,
      "Simulate counts for one branch and reconstruct the two-qubit state");
}

#include "he6/graph.hpp"

#include "doctest.h"
#include "he6/builder.hpp"
#include "test_util.hpp"

using namespace he6;

namespace {

GraphState path6() { return GraphState(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}}); }

}  // namespace

TEST_CASE("graph invariants") {
  GraphState g(3);
  g.add_edge(1, 2);
  g.add_edge(2, 1);  // duplicate collapses
  CHECK(g.edges().size() == 1);
  CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 2), std::invalid_argument);
  CHECK(g.neighbors(2) == std::vector<int>{1});
}

TEST_CASE("generators on a path graph") {
  const auto s = stabilizers_of(path6());
  CHECK(s.generators[0].to_string() == "+XZIIII");
  CHECK(s.generators[2].to_string() == "+IZXZII");
  CHECK(s.frame == Frame::Cluster);
}

TEST_CASE("generators of the three-edge pairing graph") {
  const auto s = stabilizers_of(he6_graph());
  CHECK(s.generators[1].to_string() == "+IXIIZI");  // X2 Z5
  CHECK(s.generators[0].to_string() == "+XIIZII");  // X1 Z4
}

TEST_CASE("two-vertex cluster matches the explicit amplitudes") {
  const StateVector psi = build_cluster(GraphState(2, {{1, 2}}));
  CHECK(psi.amp(0).real() == doctest::Approx(0.5));
  CHECK(psi.amp(3).real() == doctest::Approx(-0.5));
}

TEST_CASE("cluster construction rejects oversized graphs") {
  CHECK_THROWS_AS(build_cluster(GraphState(13)), std::invalid_argument);
}

TEST_CASE("cluster states satisfy the eigenvalue equations") {
  for (const GraphState& g : {path6(), he6_graph(), lc6_graph()}) {
    const StateVector psi = build_cluster(g);
    for (const auto& gen : stabilizers_of(g).generators) {
      CHECK(std::abs(pauli_expectation(gen, psi) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("generator pairs commute in both frames") {
  for (const auto& set : {stabilizers_of(lc6_graph()), lc6_tilde_stabilizers()}) {
    for (size_t i = 0; i < set.generators.size(); ++i) {
      for (size_t j = i + 1; j < set.generators.size(); ++j) {
        CHECK(set.generators[i].commutes_with(set.generators[j]));
      }
    }
  }
}

TEST_CASE("frame transform reproduces the quoted substitution rules") {
  const auto tilde = lc6_tilde_stabilizers();
  // X2<->Z2, X3->-Z3, Z3->X3, X4<->Z4, X5->-X5 applied to the lc6 generators.
  CHECK(tilde.generators[0].to_string() == "+XXIXII");
  CHECK(tilde.generators[1].to_string() == "+ZZIIZI");
  CHECK(tilde.generators[2].to_string() == "-IIZIIZ");
  CHECK(tilde.generators[3].to_string() == "+ZIIZII");
  CHECK(tilde.generators[4].to_string() == "-IXIIXZ");
  CHECK(tilde.generators[5].to_string() == "+IIXIZX");
  CHECK(tilde.frame == Frame::Laboratory);
}

TEST_CASE("single-qubit conjugation examples") {
  FrameTransform t(1);
  t.set(1, mat_x() * mat_h());
  const auto conj = clifford_conjugate(PauliString::single(1, 1, 'X'), t);
  CHECK(conj.to_string() == "-Z");
  const auto conj_z = clifford_conjugate(PauliString::single(1, 1, 'Z'), t);
  CHECK(conj_z.to_string() == "+X");
}

TEST_CASE("identity transform leaves the set unchanged") {
  const auto s = stabilizers_of(lc6_graph());
  const auto out = apply_frame(s, FrameTransform::identity(6));
  for (size_t i = 0; i < s.generators.size(); ++i) {
    CHECK(out.generators[i] == s.generators[i]);
  }
  CHECK(out.frame == Frame::Laboratory);
}

TEST_CASE("applying a transform and its adjoint is the identity") {
  const auto s = stabilizers_of(lc6_graph());
  const auto t = lab_frame_transform();
  const auto back = apply_frame(apply_frame(s, t), t.adjoint());
  for (size_t i = 0; i < s.generators.size(); ++i) {
    CHECK(back.generators[i] == s.generators[i]);
  }
  CHECK(back.frame == Frame::Cluster);
}

TEST_CASE("non-Clifford transforms are rejected") {
  FrameTransform t(6);
  Eigen::Matrix2cd tgate = Eigen::Matrix2cd::Zero();
  tgate(0, 0) = 1;
  tgate(1, 1) = std::exp(cplx(0, std::numbers::pi / 4));
  t.set(3, tgate);
  CHECK_THROWS_AS(apply_frame(stabilizers_of(lc6_graph()), t), std::invalid_argument);
}

TEST_CASE("frame transform on the state reproduces the tilde cluster") {
  const StateVector via_graph = apply_frame(build_lc6(), lab_frame_transform());
  CHECK(state_equal_up_to_global_phase(via_graph, build_lc6_tilde(), 1e-12));
}

TEST_CASE("stabilizer group enumeration") {
  const auto group = stabilizer_group(stabilizers_of(lc6_graph()));
  REQUIRE(group.size() == 64);
  CHECK(group[0].label == "1");
  CHECK(group[0].op.is_identity());
  CHECK(group[1].label == "g1");
  CHECK(group[7].label == "g1*g2");
  CHECK(group[8].label == "g1*g3");
  CHECK(group[63].label == "g1*g2*g3*g4*g5*g6");

  // Distinct operators, phases all +-1.
  for (const auto& el : group) {
    CHECK(el.op.is_hermitian());
  }
  // Identity expectation is exactly one on any state.
  std::mt19937_64 rng(1);
  CHECK(pauli_expectation(group[0].op, he6::testing::random_state(6, rng)) ==
        doctest::Approx(1.0));
}

TEST_CASE("stabilizer group is closed under products") {
  const auto group = stabilizer_group(stabilizers_of(lc6_graph()));
  auto find = [&](const PauliString& p) {
    for (const auto& el : group) {
      if (el.op == p) return true;
    }
    return false;
  };
  for (size_t i = 0; i < group.size(); i += 7) {
    for (size_t j = 0; j < group.size(); j += 5) {
      CHECK(find(group[i].op * group[j].op));
    }
  }
}

TEST_CASE("dependent generators are detected") {
  StabilizerSet bad;
  bad.frame = Frame::Cluster;
  bad.generators.push_back(PauliString::from_string("+XZ"));
  bad.generators.push_back(PauliString::from_string("+XZ"));
  CHECK_THROWS_AS(stabilizer_group(bad), std::runtime_error);
}

TEST_CASE("vertex deletion relabels the remaining graph") {
  const GraphState g = path6().without_vertex(3);
  CHECK(g.n_vertices() == 5);
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(3, 4));  // previously 4-5
  CHECK(g.has_edge(4, 5));  // previously 5-6
  CHECK(!g.has_edge(2, 3));
}

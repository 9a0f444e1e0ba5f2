#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fockmrf/errors.hpp"
#include "fockmrf/mrf_spec.hpp"
#include "fockmrf/state_space.hpp"
#include "fockmrf/update_operator.hpp"

using namespace fockmrf;

namespace {

std::vector<std::vector<Rational>> random_table(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> num(1, 9);
  std::vector<std::vector<Rational>> table(rows, std::vector<Rational>(cols));
  for (auto& row : table)
    for (auto& w : row) w = Rational(num(rng), 10);
  return table;
}

MrfSpec random_two_clique_spec(std::mt19937_64& rng, int max_nodes = 3, int max_bins = 3) {
  std::uniform_int_distribution<int> nodes_dist(1, max_nodes), bins_dist(1, max_bins),
      coin(0, 1);
  int nodes = nodes_dist(rng);
  std::vector<int> bins(nodes);
  for (auto& b : bins) b = bins_dist(rng);
  MrfSpec spec(nodes, bins);
  for (int s = 1; s <= nodes; ++s)
    for (int t = 1; t <= nodes; ++t)
      if (s != t && coin(rng)) spec.add_two_clique({s, t, random_table(rng, bins[s - 1], bins[t - 1])});
  for (int s = 1; s <= nodes; ++s)
    if (coin(rng)) {
      std::vector<Rational> src(bins[s - 1]);
      std::uniform_int_distribution<int> num(1, 9);
      for (auto& w : src) w = Rational(num(rng), 10);
      spec.set_source(s, src);
    }
  return spec;
}

}  // namespace

TEST_CASE("single-node H expands to the p-weighted hop sum") {
  UpdateOperator H = build_single_node_H({Rational(1, 2), Rational(1, 2)});
  OperatorExpr expected;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      expected += (OperatorExpr::create({1, i}) * OperatorExpr::annihilate({1, j}))
                      .scaled(Rational(1, 2));
  CHECK(H.expr == normal_order(expected));
  CHECK(H.nodes == std::vector<int>{1});
  CHECK_THROWS_AS(build_single_node_H({Rational(0), Rational(0)}), ModelError);
}

TEST_CASE("one sample is re-created memorylessly") {
  Rational p1(2, 7), p2(5, 7);
  UpdateOperator H = build_single_node_H({p1, p2});
  MixedState out = apply_expr(H.expr, MixedState::pure({{1, 0}}));
  MixedState expected = MixedState::pure({{1, 0}}, p1) + MixedState::pure({{0, 1}}, p2);
  CHECK(out == expected);
}

TEST_CASE("two samples in one bin produce the single-hop ensemble") {
  UpdateOperator H = build_single_node_H({Rational(1, 2), Rational(1, 2)});
  MixedState out = apply_expr(H.expr, MixedState::pure({{2, 0}}));
  MixedState expected = MixedState::pure({{2, 0}}, 1) + MixedState::pure({{1, 1}}, 1);
  CHECK(out == expected);
}

TEST_CASE("a source-only network reduces to the single-node operator") {
  MrfSpec spec(1, {3});
  spec.set_source(1, {Rational(1, 6), Rational(1, 3), Rational(1, 2)});
  UpdateOperator from_spec = build_mrf_H(spec);
  UpdateOperator direct = build_single_node_H({Rational(1, 6), Rational(1, 3), Rational(1, 2)});
  CHECK(from_spec.expr == direct.expr);
}

TEST_CASE("hop targets are weighted by the neighbour clique factor") {
  MrfSpec spec(2, {2, 2});
  auto table = std::vector<std::vector<Rational>>{{Rational(1, 2), Rational(1, 3)},
                                                  {Rational(1, 4), Rational(1, 5)}};
  spec.add_two_clique({1, 2, table});
  UpdateOperator H = build_mrf_H(spec);

  for (int i2 = 1; i2 <= 2; ++i2) {
    Occupancy start{{1, 0}, {0, 0}};
    start[1][i2 - 1] = 1;
    MixedState out = apply_expr(*H.piece_for(1), MixedState::pure(start));
    MixedState expected;
    for (int i = 1; i <= 2; ++i) {
      Occupancy target{{0, 0}, start[1]};
      target[0][i - 1] = 1;
      expected += MixedState::pure(target, table[i - 1][i2 - 1]);
    }
    CHECK(out == expected);
  }
}

TEST_CASE("the full ensemble of one-step outcomes on pure states") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 8; ++trial) {
    MrfSpec spec = random_two_clique_spec(rng);
    UpdateOperator H = build_mrf_H(spec);
    std::vector<int> totals(spec.num_nodes(), 1);
    StateSpace space(spec.bins(), totals);

    for (std::size_t idx = 0; idx < space.size(); ++idx) {
      const Occupancy& occ = space.state(idx);
      MixedState expected;
      for (int s = 1; s <= spec.num_nodes(); ++s) {
        std::vector<Rational> w;
        try {
          w = creation_weights(spec, s, occ);
        } catch (const ModelError&) {
          continue;  // all-zero row: that pure state contributes nothing at s
        }
        for (int i = 1; i <= spec.bins_at(s); ++i) {
          Occupancy target = occ;
          target[s - 1].assign(spec.bins_at(s), 0);
          target[s - 1][i - 1] = 1;
          expected += MixedState::pure(target, w[i - 1]);
        }
      }
      CHECK(apply_expr(H.expr, MixedState::pure(occ)) == expected);
    }
  }
}

TEST_CASE("number conservation holds for generated operators") {
  UpdateOperator single = build_single_node_H({Rational(3, 10), Rational(7, 10)});
  CHECK(verify_number_conservation(single, 1).conserved);

  std::mt19937_64 rng(4711);
  for (int trial = 0; trial < 6; ++trial) {
    MrfSpec spec = random_two_clique_spec(rng);
    UpdateOperator H = build_mrf_H(spec);
    for (int u = 1; u <= spec.num_nodes(); ++u) {
      ConservationReport report = verify_number_conservation(H, u);
      CHECK(report.conserved);
      CHECK(report.witness.is_zero());
    }
  }
}

TEST_CASE("a stray creation operator breaks conservation with a witness") {
  UpdateOperator H = build_single_node_H({Rational(1, 2), Rational(1, 2)});
  H.expr += OperatorExpr::create({1, 1});
  ConservationReport report = verify_number_conservation(H, 1);
  CHECK(!report.conserved);
  CHECK(!report.witness.is_zero());
  // the residual is [a_1^+, N] = -a_1^+
  CHECK(report.witness == OperatorExpr::create({1, 1}).scaled(-1));
}

TEST_CASE("per-node totals are preserved by H") {
  std::mt19937_64 rng(853);
  MrfSpec spec = random_two_clique_spec(rng, 2, 2);
  UpdateOperator H = build_mrf_H(spec);
  std::vector<int> totals(spec.num_nodes(), 2);
  StateSpace space(spec.bins(), totals);
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    MixedState out = apply_expr(H.expr, MixedState::pure(space.state(idx)));
    for (const auto& [occ, w] : out.terms())
      for (int s = 0; s < spec.num_nodes(); ++s) CHECK(node_total(occ[s]) == 2);
  }
}

TEST_CASE("clamped nodes contribute no hopping piece but stay observable") {
  MrfSpec spec(2, {2, 2});
  auto table = std::vector<std::vector<Rational>>{{Rational(1, 2), Rational(1, 3)},
                                                  {Rational(1, 4), Rational(1, 5)}};
  spec.add_two_clique({1, 2, table});
  spec.clamp(2, {0, 1});
  UpdateOperator H = build_mrf_H(spec);
  CHECK(H.nodes == std::vector<int>{1});
  CHECK(H.piece_for(2) == nullptr);

  // the clamped node's number operators still weight node 1's creation
  MixedState out = apply_expr(H.expr, MixedState::pure({{1, 0}, {0, 1}}));
  MixedState expected = MixedState::pure({{1, 0}, {0, 1}}, table[0][1]) +
                        MixedState::pure({{0, 1}, {0, 1}}, table[1][1]);
  CHECK(out == expected);
}

TEST_CASE("uniform clique weights yield uniform conditionals") {
  MrfSpec spec(2, {3, 2});
  spec.add_two_clique({1, 2, std::vector<std::vector<Rational>>(3, {Rational(1), Rational(1)})});
  spec.add_two_clique(
      {2, 1, std::vector<std::vector<Rational>>(2, {Rational(1), Rational(1), Rational(1)})});
  UpdateOperator H = build_mrf_H(spec);
  MixedState out = apply_expr(*H.piece_for(1), MixedState::pure({{0, 1, 0}, {1, 0}}));
  std::vector<Rational> weights;
  for (const auto& [occ, w] : out.terms()) weights.push_back(w);
  REQUIRE(weights.size() == 3);
  CHECK(weights[0] == weights[1]);
  CHECK(weights[1] == weights[2]);
}

TEST_CASE("operator expansion capacity guard") {
  // 6 bins, 6 neighbours of 6 bins each: 6^2 * 6^6 monomials for one node
  MrfSpec spec(7, std::vector<int>(7, 6));
  std::mt19937_64 rng(5);
  for (int t = 2; t <= 7; ++t) spec.add_two_clique({1, t, random_table(rng, 6, 6)});
  CHECK_THROWS_AS(build_mrf_H(spec), CapacityError);
}

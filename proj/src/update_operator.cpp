#include "fockmrf/update_operator.hpp"

#include <algorithm>

#include "fockmrf/capacity.hpp"
#include "fockmrf/errors.hpp"

namespace fockmrf {

const OperatorExpr* UpdateOperator::piece_for(int node) const {
  auto it = std::find(nodes.begin(), nodes.end(), node);
  if (it == nodes.end()) return nullptr;
  return &pieces[it - nodes.begin()];
}

OperatorExpr UpdateOperator::piece_sum() const {
  OperatorExpr sum;
  for (const auto& p : pieces) sum += p;
  return sum;
}

UpdateOperator build_single_node_H(const std::vector<Rational>& p) {
  const int m = static_cast<int>(p.size());
  bool any = false;
  for (const auto& pi : p) {
    if (pi < 0) throw ModelError("creation weights must be nonnegative");
    if (pi != 0) any = true;
  }
  if (m == 0 || !any) throw ModelError("creation weights are all zero");

  std::vector<OperatorMonomial> terms;
  terms.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 1; i <= m; ++i) {
    if (p[i - 1] == 0) continue;
    for (int j = 1; j <= m; ++j)
      terms.push_back({p[i - 1],
                       {{FactorKind::Create, {1, i}, 1}, {FactorKind::Annihilate, {1, j}, 1}}});
  }

  UpdateOperator H;
  H.layout = {m};
  H.nodes = {1};
  H.pieces = {OperatorExpr(std::move(terms))};
  H.expr = normal_order(H.pieces[0]);
  return H;
}

UpdateOperator build_mrf_H(const MrfSpec& spec) {
  UpdateOperator H;
  H.layout = spec.bins();

  for (int s : spec.unclamped_nodes()) {
    const int m = spec.bins_at(s);

    // Expected monomial count for this piece: m^2 * prod_t m_t per clique sum.
    std::size_t per_hop = 1;
    for (const auto& c : spec.two_cliques())
      if (c.s == s) per_hop *= static_cast<std::size_t>(spec.bins_at(c.t));
    for (const auto& c : spec.three_cliques())
      if (c.s == s)
        per_hop *= static_cast<std::size_t>(spec.bins_at(c.t1)) *
                   static_cast<std::size_t>(spec.bins_at(c.t2));
    check_capacity(per_hop * static_cast<std::size_t>(m) * static_cast<std::size_t>(m),
                   "update operator expansion");

    OperatorExpr piece;
    for (int i = 1; i <= m; ++i) {
      Rational src = 1;
      if (const auto* weights = spec.source(s)) src = (*weights)[i - 1];
      if (src == 0) continue;

      // Operator-valued clique factor for creation bin i, evaluated on the
      // pre-hop state (number operators to the right of the hop).
      OperatorExpr clique = OperatorExpr::identity(src);
      for (const auto& c : spec.two_cliques()) {
        if (c.s != s) continue;
        OperatorExpr sum;
        for (int k = 1; k <= spec.bins_at(c.t); ++k)
          if (c.weights[i - 1][k - 1] != 0)
            sum += number_operator({c.t, k}).scaled(c.weights[i - 1][k - 1]);
        clique = clique * sum;
      }
      for (const auto& c : spec.three_cliques()) {
        if (c.s != s) continue;
        OperatorExpr sum;
        for (int k1 = 1; k1 <= spec.bins_at(c.t1); ++k1)
          for (int k2 = 1; k2 <= spec.bins_at(c.t2); ++k2)
            if (c.weights[i - 1][k1 - 1][k2 - 1] != 0)
              sum += (number_operator({c.t1, k1}) * number_operator({c.t2, k2}))
                         .scaled(c.weights[i - 1][k1 - 1][k2 - 1]);
        clique = clique * sum;
      }

      for (int j = 1; j <= m; ++j) {
        OperatorExpr hop = OperatorExpr::monomial(
            {1, {{FactorKind::Create, {s, i}, 1}, {FactorKind::Annihilate, {s, j}, 1}}});
        piece += hop * clique;
      }
    }

    H.nodes.push_back(s);
    H.pieces.push_back(std::move(piece));
  }

  if (H.nodes.empty()) throw ModelError("every node is clamped; nothing to update");
  H.expr = normal_order(H.piece_sum());
  return H;
}

ConservationReport verify_number_conservation(const UpdateOperator& H, int node) {
  if (node < 1 || node > static_cast<int>(H.layout.size()))
    throw IndexError("node " + std::to_string(node) + " out of range");
  OperatorExpr n_u = node_number_operator(node, H.layout[node - 1]);
  ConservationReport report;
  report.witness = commutator(H.expr, n_u);
  report.conserved = report.witness.is_zero();
  return report;
}

}  // namespace fockmrf

#pragma once

#include <optional>
#include <vector>

#include "fockmrf/mrf_spec.hpp"
#include "fockmrf/operator_expr.hpp"

namespace fockmrf {

// The MCMC update operator H = sum_s H_s where each per-node piece hops one
// sample at node s with operator-valued clique weights:
//   H_s = sum_{i,j} src_i^s a_i^{s+} a_j^s prod_{t in C(s)} sum_k p_{i,k}^{s,t} N_k^t
// `expr` holds the normal-ordered sum; `pieces` keeps the factored per-node
// form (hop factors left of the number operators), which is what the kernel
// builder and the diagram expansion consume.
struct UpdateOperator {
  OperatorExpr expr;
  std::vector<int> layout;          // bins per node
  std::vector<int> nodes;           // nodes with a hopping piece, ascending
  std::vector<OperatorExpr> pieces; // parallel to `nodes`

  const OperatorExpr* piece_for(int node) const;
  OperatorExpr piece_sum() const;
};

// H for one node driven by a fixed external source; p must not be all zero.
UpdateOperator build_single_node_H(const std::vector<Rational>& p);

// H for a full network; clamped nodes contribute no hopping piece but their
// number operators still appear inside neighbouring clique factors.
UpdateOperator build_mrf_H(const MrfSpec& spec);

struct ConservationReport {
  bool conserved = false;
  OperatorExpr witness;  // normal-ordered residual of [H, N^u]; empty iff conserved
};

// Exact symbolic check that [H, N^u] normal-orders to the empty expression.
ConservationReport verify_number_conservation(const UpdateOperator& H, int node);

}  // namespace fockmrf

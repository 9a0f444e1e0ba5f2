#include "fockmrf/equilibrium.hpp"

#include "fockmrf/combinatorics.hpp"
#include "fockmrf/errors.hpp"
#include "fockmrf/state_space.hpp"
#include "fockmrf/update_operator.hpp"

namespace fockmrf {

MixedState multinomial_state(const std::vector<Rational>& p, int total) {
  const int m = static_cast<int>(p.size());
  if (m < 1) throw ModelError("multinomial state needs at least one bin");
  if (total < 0) throw ModelError("multinomial state needs a nonnegative total");
  StateSpace space({m}, {total});
  MixedState psi;
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    const Occupancy& occ = space.state(idx);
    Rational weight(multinomial_coefficient(occ[0]));
    for (int k = 0; k < m; ++k)
      for (int rep = 0; rep < occ[0][k]; ++rep) weight *= p[k];
    psi.add_term(occ, weight);
  }
  return psi;
}

EquilibriumReport check_equilibrium_multinomial(const std::vector<Rational>& p, int total,
                                                const Rational& perturbation) {
  if (total < 1) throw ModelError("equilibrium check needs at least one sample");
  Rational sum = 0;
  for (const auto& pi : p) {
    if (pi < 0) throw ModelError("creation weights must be nonnegative");
    sum += pi;
  }
  if (sum == 0) throw ModelError("creation weights are all zero");
  std::vector<Rational> normalized = p;
  for (auto& pi : normalized) pi /= sum;

  MixedState psi = multinomial_state(normalized, total);
  if (perturbation != 0) {
    // Nudge one mixture weight off the multinomial surface.
    psi.add_term(psi.terms().begin()->first, perturbation);
  }

  UpdateOperator H = build_single_node_H(normalized);
  MixedState image = apply_expr(H.expr, psi);

  EquilibriumReport report;
  report.lambda = total;
  // Measured eigenvalue: ratio on the first basis state carried by Psi.
  const auto& [first_occ, first_w] = *psi.terms().begin();
  Rational image_w = image.weight_of(first_occ);
  if (first_w != 0) report.lambda = image_w / first_w;

  for (const auto& [occ, w] : psi.terms()) {
    Rational diff = image.weight_of(occ) - report.lambda * w;
    if (diff < 0) diff = -diff;
    if (diff != 0 && !report.offending) report.offending = occ;
    report.residual += diff;
  }
  for (const auto& [occ, w] : image.terms()) {
    if (psi.weight_of(occ) != 0) continue;
    Rational diff = w < 0 ? Rational(-w) : w;
    if (diff != 0 && !report.offending) report.offending = occ;
    report.residual += diff;
  }
  report.lambda_is_total = report.lambda == total && report.residual == 0;
  return report;
}

}  // namespace fockmrf

#pragma once

#include <optional>
#include <vector>

#include "fockmrf/mixed_state.hpp"
#include "fockmrf/rational.hpp"

namespace fockmrf {

// Single-node mixture over all histograms with `total` samples, weighted by
// the multinomial law n!/(n_1!...n_m!) p_1^{n_1}...p_m^{n_m}.
MixedState multinomial_state(const std::vector<Rational>& p, int total);

struct EquilibriumReport {
  Rational lambda = 0;    // measured eigenvalue of H on the trial state
  Rational residual = 0;  // exact L1 norm of H Psi - lambda Psi
  bool lambda_is_total = false;
  std::optional<Occupancy> offending;  // a state violating the eigen relation
};

// Applies the single-node update operator for weights p exactly to the
// multinomial trial state and checks H Psi = lambda Psi with lambda equal to
// the total sample count. p is normalised on entry. An optional perturbation
// is added to one mixture weight first (negative control).
EquilibriumReport check_equilibrium_multinomial(const std::vector<Rational>& p, int total,
                                                const Rational& perturbation = 0);

}  // namespace fockmrf

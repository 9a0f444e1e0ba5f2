#pragma once

#include <span>
#include <string>
#include <vector>

#include "fockmrf/mixed_state.hpp"
#include "fockmrf/occupancy.hpp"
#include "fockmrf/rational.hpp"

namespace fockmrf {

enum class FactorKind { Create, Annihilate };

// One operator symbol a^dagger (Create) or a (Annihilate) at a (node, bin)
// site, raised to an integer power >= 1.
struct OperatorFactor {
  FactorKind kind = FactorKind::Create;
  SiteIndex site;
  int power = 1;

  friend bool operator==(const OperatorFactor&, const OperatorFactor&) = default;
  friend auto operator<=>(const OperatorFactor&, const OperatorFactor&) = default;
};

// Product of factors with a scalar coefficient. Factors multiply left to
// right; the rightmost factor acts first on a state.
struct OperatorMonomial {
  Rational coeff = 1;
  std::vector<OperatorFactor> factors;

  friend bool operator==(const OperatorMonomial&, const OperatorMonomial&) = default;
};

// Finite sum of monomials. Terms are kept sorted by factor sequence and
// merged when the sequences coincide, so equal expressions compare equal
// term by term. The empty sum is the zero operator.
class OperatorExpr {
 public:
  OperatorExpr() = default;
  explicit OperatorExpr(std::vector<OperatorMonomial> terms);

  static OperatorExpr identity(Rational coeff = 1);
  static OperatorExpr monomial(OperatorMonomial m);
  static OperatorExpr create(SiteIndex site, int power = 1);
  static OperatorExpr annihilate(SiteIndex site, int power = 1);

  const std::vector<OperatorMonomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  OperatorExpr& operator+=(const OperatorExpr& other);
  friend OperatorExpr operator+(OperatorExpr lhs, const OperatorExpr& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend OperatorExpr operator*(const OperatorExpr& lhs, const OperatorExpr& rhs);
  OperatorExpr scaled(const Rational& factor) const;

  friend bool operator==(const OperatorExpr&, const OperatorExpr&) = default;

 private:
  std::vector<OperatorMonomial> terms_;
};

// Rewrites to canonical form using a_i a_j^dagger = a_j^dagger a_i + delta_ij:
// all creations left of all annihilations, factors sorted by (node, bin)
// within each kind, equal-site runs merged into powers. The result acts
// identically on every state.
OperatorExpr normal_order(const OperatorExpr& expr);

// normal_order(a b - b a); empty exactly when a and b commute.
OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);

// Linear action on a mixture; identical resulting occupancies are merged.
MixedState apply_expr(const OperatorExpr& expr, const MixedState& state);

// N_i^s = a_i^{s dagger} a_i^s.
OperatorExpr number_operator(SiteIndex site);
// N^s = sum_i N_i^s over the node's bins.
OperatorExpr node_number_operator(int node, int bins);
// Global N over all nodes of the layout.
OperatorExpr total_number_operator(std::span<const int> layout);

}  // namespace fockmrf

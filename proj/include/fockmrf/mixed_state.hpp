#pragma once

#include <map>
#include <vector>

#include "fockmrf/occupancy.hpp"
#include "fockmrf/rational.hpp"

namespace fockmrf {

// A finite probability-weighted mixture of occupancy basis states. Weights
// are kept exactly; zero-weight entries are removed on insertion. The empty
// mixture is the annihilated result 0, which is distinct from the vacuum
// state {all-zero occupancy -> 1}.
//
// Basis states carry no 1/sqrt(n_1!...n_m!) normalisation; the permutation
// factor shows up only in inner_product.
class MixedState {
 public:
  MixedState() = default;

  static MixedState vacuum(const std::vector<int>& layout);
  static MixedState pure(Occupancy occ, Rational weight = 1);

  const std::map<Occupancy, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Merges into an existing entry; erases entries whose weight reaches 0.
  void add_term(const Occupancy& occ, const Rational& weight);

  // Raw coefficient of the basis state (0 if absent).
  Rational weight_of(const Occupancy& occ) const;

  // Bins per node of the underlying layout; empty state has no layout.
  std::vector<int> layout() const;

  MixedState& operator+=(const MixedState& other);
  friend MixedState operator+(MixedState lhs, const MixedState& rhs) {
    lhs += rhs;
    return lhs;
  }
  MixedState scaled(const Rational& factor) const;

  Rational total_weight() const;

  friend bool operator==(const MixedState&, const MixedState&) = default;

 private:
  std::map<Occupancy, Rational> terms_;
};

// One more sample in the given bin of every term; weights unchanged.
MixedState apply_create(const MixedState& state, SiteIndex site);

// Each term with count n at the site maps to the decremented occupancy with
// weight multiplied by n; terms with an empty bin are dropped.
MixedState apply_annihilate(const MixedState& state, SiteIndex site);

// <bra| applied to the state: weight of the matching occupancy times the
// permutation factor prod_k n_k! over all nodes and bins.
Rational inner_product(const Occupancy& bra, const MixedState& state);

}  // namespace fockmrf

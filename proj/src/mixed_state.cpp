#include "fockmrf/mixed_state.hpp"

#include "fockmrf/combinatorics.hpp"

namespace fockmrf {

MixedState MixedState::vacuum(const std::vector<int>& layout) {
  Occupancy occ;
  occ.reserve(layout.size());
  for (int m : layout) occ.emplace_back(m, 0);
  return pure(std::move(occ));
}

MixedState MixedState::pure(Occupancy occ, Rational weight) {
  MixedState s;
  s.add_term(occ, weight);
  return s;
}

void MixedState::add_term(const Occupancy& occ, const Rational& weight) {
  if (weight == 0) return;
  auto [it, inserted] = terms_.try_emplace(occ, weight);
  if (!inserted) {
    it->second += weight;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational MixedState::weight_of(const Occupancy& occ) const {
  auto it = terms_.find(occ);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<int> MixedState::layout() const {
  if (terms_.empty()) return {};
  return layout_of(terms_.begin()->first);
}

MixedState& MixedState::operator+=(const MixedState& other) {
  for (const auto& [occ, w] : other.terms_) add_term(occ, w);
  return *this;
}

MixedState MixedState::scaled(const Rational& factor) const {
  MixedState out;
  if (factor == 0) return out;
  for (const auto& [occ, w] : terms_) out.terms_.emplace(occ, w * factor);
  return out;
}

Rational MixedState::total_weight() const {
  Rational total = 0;
  for (const auto& [occ, w] : terms_) total += w;
  return total;
}

MixedState apply_create(const MixedState& state, SiteIndex site) {
  MixedState out;
  for (const auto& [occ, w] : state.terms()) {
    check_site(layout_of(occ), site);
    Occupancy next = occ;
    ++next[site.node - 1][site.bin - 1];
    out.add_term(next, w);
  }
  return out;
}

MixedState apply_annihilate(const MixedState& state, SiteIndex site) {
  MixedState out;
  for (const auto& [occ, w] : state.terms()) {
    check_site(layout_of(occ), site);
    int n = occ[site.node - 1][site.bin - 1];
    if (n == 0) continue;  // a_i on an empty bin erases the term
    Occupancy next = occ;
    --next[site.node - 1][site.bin - 1];
    out.add_term(next, w * n);
  }
  return out;
}

Rational inner_product(const Occupancy& bra, const MixedState& state) {
  Rational w = state.weight_of(bra);
  if (w == 0) return w;
  Rational factor = 1;
  for (const auto& node : bra)
    for (int n : node) factor *= Rational(factorial(n));
  return w * factor;
}

std::string to_string(const Occupancy& occ) {
  std::string out;
  for (std::size_t s = 0; s < occ.size(); ++s) {
    if (s > 0) out += " ";
    out += "(";
    for (std::size_t i = 0; i < occ[s].size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(occ[s][i]);
    }
    out += ")";
  }
  return out;
}

}  // namespace fockmrf

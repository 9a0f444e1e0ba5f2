#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "fockmrf/mrf_spec.hpp"
#include "fockmrf/occupancy.hpp"

namespace fockmrf {

// Complete enumeration of the canonical ensemble: all joint occupancies with
// a fixed per-node total. States are ordered descending-lexicographically on
// the concatenated occupancy vectors, so (2,0) precedes (1,1) precedes (0,2).
class StateSpace {
 public:
  StateSpace(std::vector<int> layout, std::vector<int> totals);

  // Clamped nodes contribute exactly their clamped occupancy; their entry in
  // `totals` must match the clamp's sample count.
  static StateSpace for_spec(const MrfSpec& spec, const std::vector<int>& totals);

  std::size_t size() const { return states_.size(); }
  const Occupancy& state(std::size_t index) const { return states_[index]; }
  std::size_t index_of(const Occupancy& occ) const;
  bool contains(const Occupancy& occ) const { return index_.count(occ) > 0; }

  const std::vector<int>& layout() const { return layout_; }
  const std::vector<int>& totals() const { return totals_; }

 private:
  std::vector<int> layout_;
  std::vector<int> totals_;
  std::vector<Occupancy> states_;
  std::map<Occupancy, std::size_t> index_;
};

}  // namespace fockmrf

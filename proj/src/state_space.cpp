#include "fockmrf/state_space.hpp"

#include "fockmrf/capacity.hpp"
#include "fockmrf/combinatorics.hpp"
#include "fockmrf/errors.hpp"

namespace fockmrf {

namespace {

// All m-bin histograms with the given total, descending lexicographic.
void node_histograms(int bins, int total, std::vector<BinCounts>& out) {
  BinCounts current(bins, 0);
  // Recursive descent with the first bin taking values total..0.
  auto rec = [&](auto&& self, int bin, int remaining) -> void {
    if (bin == bins - 1) {
      current[bin] = remaining;
      out.push_back(current);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      current[bin] = c;
      self(self, bin + 1, remaining - c);
    }
  };
  rec(rec, 0, total);
}

}  // namespace

StateSpace::StateSpace(std::vector<int> layout, std::vector<int> totals)
    : layout_(std::move(layout)), totals_(std::move(totals)) {
  if (layout_.size() != totals_.size())
    throw ValidationError("state space: layout and totals must have equal length");
  if (layout_.empty()) throw ValidationError("state space: no nodes");

  BigInt size = 1;
  for (std::size_t s = 0; s < layout_.size(); ++s) {
    if (layout_[s] < 1) throw ValidationError("state space: bins must be >= 1");
    if (totals_[s] < 0) throw ValidationError("state space: totals must be >= 0");
    size *= binomial(totals_[s] + layout_[s] - 1, layout_[s] - 1);
  }
  if (size > capacity_limit())
    throw CapacityError("state space has " + size.str() + " states, above the limit of " +
                        std::to_string(capacity_limit()) + " (set FOCKMRF_MAX_STATES to raise)");

  std::vector<std::vector<BinCounts>> per_node(layout_.size());
  for (std::size_t s = 0; s < layout_.size(); ++s)
    node_histograms(layout_[s], totals_[s], per_node[s]);

  states_.reserve(size.convert_to<std::size_t>());
  Occupancy current(layout_.size());
  auto rec = [&](auto&& self, std::size_t node) -> void {
    if (node == per_node.size()) {
      states_.push_back(current);
      return;
    }
    for (const auto& counts : per_node[node]) {
      current[node] = counts;
      self(self, node + 1);
    }
  };
  rec(rec, 0);

  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
}

StateSpace StateSpace::for_spec(const MrfSpec& spec, const std::vector<int>& totals) {
  if (static_cast<int>(totals.size()) != spec.num_nodes())
    throw ValidationError("totals: expected " + std::to_string(spec.num_nodes()) + " entries");
  std::vector<int> layout = spec.bins();
  std::vector<int> effective = totals;
  for (int s = 1; s <= spec.num_nodes(); ++s) {
    if (const auto* clamp = spec.clamped_occupancy(s)) {
      int clamp_total = node_total(*clamp);
      if (totals[s - 1] != clamp_total)
        throw ValidationError("totals[" + std::to_string(s - 1) + "]: node " + std::to_string(s) +
                              " is clamped with " + std::to_string(clamp_total) + " samples");
      effective[s - 1] = clamp_total;
    }
  }

  StateSpace space(layout, effective);
  // Restrict clamped nodes to their single fixed histogram.
  bool any_clamped = false;
  for (int s = 1; s <= spec.num_nodes(); ++s)
    if (spec.is_clamped(s)) any_clamped = true;
  if (!any_clamped) return space;

  std::vector<Occupancy> filtered;
  for (const auto& occ : space.states_) {
    bool keep = true;
    for (int s = 1; s <= spec.num_nodes() && keep; ++s)
      if (const auto* clamp = spec.clamped_occupancy(s)) keep = occ[s - 1] == *clamp;
    if (keep) filtered.push_back(occ);
  }
  StateSpace out = space;
  out.states_ = std::move(filtered);
  out.index_.clear();
  for (std::size_t i = 0; i < out.states_.size(); ++i) out.index_.emplace(out.states_[i], i);
  return out;
}

std::size_t StateSpace::index_of(const Occupancy& occ) const {
  auto it = index_.find(occ);
  if (it == index_.end())
    throw IndexError("occupancy " + to_string(occ) + " is not in the state space");
  return it->second;
}

}  // namespace fockmrf

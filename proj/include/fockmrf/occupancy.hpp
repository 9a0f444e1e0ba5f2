#pragma once

#include <string>
#include <vector>

#include "fockmrf/errors.hpp"

namespace fockmrf {

// Histogram of one node: sample count per bin.
using BinCounts = std::vector<int>;

// Joint state of the network: one histogram per node.
using Occupancy = std::vector<BinCounts>;

// 1-based (node, bin) address, mirroring the subscript/superscript pair on
// the operators.
struct SiteIndex {
  int node = 1;
  int bin = 1;

  friend bool operator==(const SiteIndex&, const SiteIndex&) = default;
  friend auto operator<=>(const SiteIndex&, const SiteIndex&) = default;
};

inline int node_total(const BinCounts& counts) {
  int n = 0;
  for (int c : counts) n += c;
  return n;
}

inline int total_count(const Occupancy& occ) {
  int n = 0;
  for (const auto& node : occ) n += node_total(node);
  return n;
}

inline std::vector<int> layout_of(const Occupancy& occ) {
  std::vector<int> bins;
  bins.reserve(occ.size());
  for (const auto& node : occ) bins.push_back(static_cast<int>(node.size()));
  return bins;
}

inline void check_site(const std::vector<int>& layout, SiteIndex site) {
  if (site.node < 1 || site.node > static_cast<int>(layout.size()))
    throw IndexError("node " + std::to_string(site.node) + " out of range [1, " +
                     std::to_string(layout.size()) + "]");
  if (site.bin < 1 || site.bin > layout[site.node - 1])
    throw IndexError("bin " + std::to_string(site.bin) + " out of range [1, " +
                     std::to_string(layout[site.node - 1]) + "] at node " +
                     std::to_string(site.node));
}

std::string to_string(const Occupancy& occ);

}  // namespace fockmrf

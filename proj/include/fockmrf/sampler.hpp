#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fockmrf/kernel.hpp"
#include "fockmrf/mrf_spec.hpp"
#include "fockmrf/occupancy.hpp"

namespace fockmrf {

// Deterministic random stream. The engine is std::mt19937_64 (fully pinned
// by the standard) and every sampling routine below draws from the raw
// 64-bit output with fixed arithmetic, so traces are bit-stable across
// platforms and releases. Distinct chains use mix64(seed ^ chain index).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t mix64(std::uint64_t x);
  static RandomStream for_chain(std::uint64_t seed, std::uint64_t chain_index);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n); unbiased by rejection.
  std::uint64_t next_below(std::uint64_t n);

  // Index drawn proportionally to the weights; exact zero-total is the
  // caller's error to detect beforehand.
  std::size_t pick_weighted(const std::vector<double>& weights);

 private:
  std::mt19937_64 engine_;
};

struct ChainConfig {
  std::uint64_t seed = 0;
  Scan scheme = Scan::RandomScan;
  std::uint64_t steps = 0;    // total updates, burn-in included
  std::uint64_t burn_in = 0;  // discarded leading updates
  std::uint64_t thin = 1;     // record every thin-th retained update
  std::optional<Occupancy> initial;  // explicit start; otherwise random
  std::vector<int> totals;           // per-node totals for a random start

  // burn_in = 10 * (total samples) sweeps, thin = 1.
  static ChainConfig with_defaults(const MrfSpec& spec, std::vector<int> totals,
                                   std::uint64_t seed, std::uint64_t retained);
};

struct ChainTrace {
  ChainConfig config;
  std::vector<int> layout;
  std::uint64_t updates_applied = 0;
  std::vector<std::uint64_t> recorded_steps;  // absolute step index per record
  std::vector<Occupancy> records;
  // Accumulated bin counts over retained records, per (node, bin).
  std::vector<std::vector<std::uint64_t>> bin_visit_sums;
};

// One annihilate-then-create update at the given node: a uniformly chosen
// sample is removed (bin j with probability n_j / n) and re-created in bin i
// with probability proportional to the creation weights on the neighbour
// occupancies. Throws ModelError when the node is empty or no bin admits
// creation.
void step_at(Occupancy& state, const MrfSpec& spec, int node, RandomStream& rng);

// Random-scan step: node chosen uniformly among unclamped nodes.
void step(Occupancy& state, const MrfSpec& spec, RandomStream& rng);

ChainTrace run(const MrfSpec& spec, const ChainConfig& config);

// Independent chains with per-chain derived streams.
std::vector<ChainTrace> run_chains(const MrfSpec& spec, const ChainConfig& config, int chains,
                                   Exec exec = Exec::Parallel);

// Normalised visit frequencies of the retained records over a state space.
Distribution empirical_distribution(const ChainTrace& trace, const StateSpace& space);

struct StatisticEstimate {
  std::vector<double> mean;
  std::vector<double> naive_se;  // i.i.d. standard error
  std::vector<double> batch_se;  // batch-means standard error (20 batches)
};

// Successive records are strongly correlated, so the batch-means error is
// the one to quote.
StatisticEstimate estimate_statistic(
    const ChainTrace& trace,
    const std::function<std::vector<double>(const Occupancy&)>& statistic,
    int batches = 20);

// Per-(node,bin) occupancy counts as a flat vector, the default statistic.
std::vector<double> flatten_occupancy(const Occupancy& occ);

// CSV with header "step,node1_bin1,..."; one row per retained record.
void write_trace_csv(const ChainTrace& trace, const std::string& path);
std::string trace_csv_text(const ChainTrace& trace);

// JSON sidecar with the config and seed, written next to the CSV.
void write_trace_sidecar(const ChainTrace& trace, const std::string& csv_path);

}  // namespace fockmrf

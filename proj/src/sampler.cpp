#include "fockmrf/sampler.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "fockmrf/errors.hpp"
#include "fockmrf/rational.hpp"

namespace fockmrf {

std::uint64_t RandomStream::mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream RandomStream::for_chain(std::uint64_t seed, std::uint64_t chain_index) {
  return RandomStream(mix64(seed ^ mix64(chain_index)));
}

std::uint64_t RandomStream::next_below(std::uint64_t n) {
  if (n == 0) throw ModelError("next_below(0)");
  std::uint64_t threshold = (-n) % n;
  for (;;) {
    std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

std::size_t RandomStream::pick_weighted(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double u = next_unit() * total;
  double cum = 0.0;
  std::size_t last_positive = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cum += weights[i];
    last_positive = i;
    if (u < cum) return i;
  }
  if (last_positive == weights.size()) throw ModelError("pick_weighted: no positive weight");
  return last_positive;  // rounding pushed u past the final cumulative sum
}

ChainConfig ChainConfig::with_defaults(const MrfSpec& spec, std::vector<int> totals,
                                       std::uint64_t seed, std::uint64_t retained) {
  ChainConfig config;
  config.seed = seed;
  config.totals = std::move(totals);
  std::uint64_t samples = 0;
  for (int t : config.totals) samples += static_cast<std::uint64_t>(t);
  std::uint64_t sweep = spec.unclamped_nodes().size();
  config.burn_in = 10 * samples * sweep;
  config.thin = 1;
  config.steps = config.burn_in + retained;
  return config;
}

void step_at(Occupancy& state, const MrfSpec& spec, int node, RandomStream& rng) {
  BinCounts& counts = state[node - 1];
  const int n = node_total(counts);
  if (n == 0) throw ModelError("node " + std::to_string(node) + " has no samples to move");

  // Annihilate: uniform over samples, i.e. bin j with probability n_j / n.
  std::uint64_t pick = rng.next_below(static_cast<std::uint64_t>(n));
  int bin_j = 0;
  for (std::uint64_t cum = 0; bin_j < static_cast<int>(counts.size()); ++bin_j) {
    cum += static_cast<std::uint64_t>(counts[bin_j]);
    if (pick < cum) break;
  }
  --counts[bin_j];

  // Create: weights read the neighbour occupancies only, so the decrement
  // at this node does not disturb them.
  std::vector<Rational> weights = creation_weights(spec, node, state);
  std::vector<double> w(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) w[i] = to_double(weights[i]);
  std::size_t bin_i = rng.pick_weighted(w);
  ++counts[bin_i];
}

void step(Occupancy& state, const MrfSpec& spec, RandomStream& rng) {
  std::vector<int> nodes = spec.unclamped_nodes();
  if (nodes.empty()) throw ModelError("every node is clamped");
  int node = nodes[rng.next_below(nodes.size())];
  step_at(state, spec, node, rng);
}

namespace {

Occupancy initial_state(const MrfSpec& spec, const ChainConfig& config, RandomStream& rng) {
  if (config.initial) {
    Occupancy occ = *config.initial;
    if (static_cast<int>(occ.size()) != spec.num_nodes())
      throw ValidationError("initial state has the wrong node count");
    for (int s = 1; s <= spec.num_nodes(); ++s) {
      if (static_cast<int>(occ[s - 1].size()) != spec.bins_at(s))
        throw ValidationError("initial state has the wrong bin count at node " +
                              std::to_string(s));
      if (const auto* clamp = spec.clamped_occupancy(s))
        if (occ[s - 1] != *clamp)
          throw ValidationError("initial state disagrees with the clamp at node " +
                                std::to_string(s));
    }
    return occ;
  }

  if (static_cast<int>(config.totals.size()) != spec.num_nodes())
    throw ValidationError("random start requires per-node totals");
  Occupancy occ;
  for (int s = 1; s <= spec.num_nodes(); ++s) {
    if (const auto* clamp = spec.clamped_occupancy(s)) {
      occ.push_back(*clamp);
      continue;
    }
    BinCounts counts(spec.bins_at(s), 0);
    for (int k = 0; k < config.totals[s - 1]; ++k)
      ++counts[rng.next_below(static_cast<std::uint64_t>(counts.size()))];
    occ.push_back(std::move(counts));
  }
  return occ;
}

}  // namespace

ChainTrace run(const MrfSpec& spec, const ChainConfig& config) {
  if (config.thin < 1) throw ValidationError("thin must be >= 1");
  if (config.steps <= config.burn_in) throw ValidationError("steps must exceed burn_in");

  RandomStream rng(config.seed);
  Occupancy state = initial_state(spec, config, rng);

  ChainTrace trace;
  trace.config = config;
  trace.layout = spec.bins();
  trace.bin_visit_sums.resize(spec.num_nodes());
  for (int s = 1; s <= spec.num_nodes(); ++s)
    trace.bin_visit_sums[s - 1].assign(spec.bins_at(s), 0);

  const std::vector<int> nodes = spec.unclamped_nodes();
  if (nodes.empty()) throw ModelError("every node is clamped");
  std::size_t sweep_pos = 0;

  std::uint64_t expected = (config.steps - config.burn_in) / config.thin;
  trace.records.reserve(expected);
  trace.recorded_steps.reserve(expected);

  for (std::uint64_t t = 1; t <= config.steps; ++t) {
    int node;
    if (config.scheme == Scan::RandomScan) {
      node = nodes[rng.next_below(nodes.size())];
    } else {
      node = nodes[sweep_pos];
      sweep_pos = (sweep_pos + 1) % nodes.size();
    }
    step_at(state, spec, node, rng);
    ++trace.updates_applied;

    if (t > config.burn_in && (t - config.burn_in) % config.thin == 0) {
      trace.recorded_steps.push_back(t);
      trace.records.push_back(state);
      for (int s = 0; s < spec.num_nodes(); ++s)
        for (std::size_t b = 0; b < state[s].size(); ++b)
          trace.bin_visit_sums[s][b] += static_cast<std::uint64_t>(state[s][b]);
    }
  }
  return trace;
}

std::vector<ChainTrace> run_chains(const MrfSpec& spec, const ChainConfig& config, int chains,
                                   Exec exec) {
  if (chains < 1) throw ValidationError("chain count must be >= 1");
  std::vector<ChainTrace> traces(chains);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (int c = 0; c < chains; ++c) {
    try {
      ChainConfig chain_config = config;
      chain_config.seed = RandomStream::mix64(config.seed ^ RandomStream::mix64(c));
      traces[c] = run(spec, chain_config);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return traces;
}

Distribution empirical_distribution(const ChainTrace& trace, const StateSpace& space) {
  if (trace.records.empty()) throw ValidationError("trace has no retained records");
  std::vector<double> probs(space.size(), 0.0);
  for (const auto& occ : trace.records) probs[space.index_of(occ)] += 1.0;
  for (auto& p : probs) p /= static_cast<double>(trace.records.size());
  return Distribution{std::move(probs)};
}

StatisticEstimate estimate_statistic(
    const ChainTrace& trace,
    const std::function<std::vector<double>(const Occupancy&)>& statistic, int batches) {
  const std::size_t n = trace.records.size();
  if (n == 0) throw ValidationError("trace has no retained records");
  if (batches < 2) throw ValidationError("batch means need at least 2 batches");

  std::vector<std::vector<double>> values;
  values.reserve(n);
  for (const auto& occ : trace.records) values.push_back(statistic(occ));
  const std::size_t dim = values.front().size();

  StatisticEstimate est;
  est.mean.assign(dim, 0.0);
  for (const auto& v : values)
    for (std::size_t k = 0; k < dim; ++k) est.mean[k] += v[k];
  for (auto& m : est.mean) m /= static_cast<double>(n);

  est.naive_se.assign(dim, 0.0);
  for (const auto& v : values)
    for (std::size_t k = 0; k < dim; ++k) {
      double d = v[k] - est.mean[k];
      est.naive_se[k] += d * d;
    }
  for (auto& s : est.naive_se)
    s = n > 1 ? std::sqrt(s / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;

  const std::size_t usable = n - n % static_cast<std::size_t>(batches);
  const std::size_t batch_len = usable / static_cast<std::size_t>(batches);
  est.batch_se.assign(dim, 0.0);
  if (batch_len >= 1) {
    std::vector<std::vector<double>> batch_means(batches, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < usable; ++i) {
      std::size_t b = i / batch_len;
      for (std::size_t k = 0; k < dim; ++k) batch_means[b][k] += values[i][k];
    }
    std::vector<double> grand(dim, 0.0);
    for (auto& bm : batch_means)
      for (std::size_t k = 0; k < dim; ++k) {
        bm[k] /= static_cast<double>(batch_len);
        grand[k] += bm[k];
      }
    for (auto& g : grand) g /= static_cast<double>(batches);
    for (const auto& bm : batch_means)
      for (std::size_t k = 0; k < dim; ++k) {
        double d = bm[k] - grand[k];
        est.batch_se[k] += d * d;
      }
    for (auto& s : est.batch_se)
      s = std::sqrt(s / static_cast<double>(batches - 1) / static_cast<double>(batches));
  }
  return est;
}

std::vector<double> flatten_occupancy(const Occupancy& occ) {
  std::vector<double> flat;
  for (const auto& node : occ)
    for (int c : node) flat.push_back(static_cast<double>(c));
  return flat;
}

std::string trace_csv_text(const ChainTrace& trace) {
  std::string out = "step";
  for (std::size_t s = 0; s < trace.layout.size(); ++s)
    for (int b = 1; b <= trace.layout[s]; ++b)
      out += ",node" + std::to_string(s + 1) + "_bin" + std::to_string(b);
  out += "\n";
  for (std::size_t r = 0; r < trace.records.size(); ++r) {
    out += std::to_string(trace.recorded_steps[r]);
    for (const auto& node : trace.records[r])
      for (int c : node) out += "," + std::to_string(c);
    out += "\n";
  }
  return out;
}

void write_trace_csv(const ChainTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << trace_csv_text(trace);
  if (!out) throw IoError("failed writing '" + path + "'");
}

void write_trace_sidecar(const ChainTrace& trace, const std::string& csv_path) {
  nlohmann::json doc;
  doc["seed"] = trace.config.seed;
  doc["scheme"] = trace.config.scheme == Scan::RandomScan ? "random-scan" : "sequential-scan";
  doc["steps"] = trace.config.steps;
  doc["burn_in"] = trace.config.burn_in;
  doc["thin"] = trace.config.thin;
  if (trace.config.initial) {
    nlohmann::json init = nlohmann::json::array();
    for (const auto& node : *trace.config.initial) init.push_back(node);
    doc["initial"] = init;
  }
  if (!trace.config.totals.empty()) doc["totals"] = trace.config.totals;
  doc["retained_records"] = trace.records.size();

  std::string path = csv_path + ".json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << doc.dump(2) << "\n";
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace fockmrf

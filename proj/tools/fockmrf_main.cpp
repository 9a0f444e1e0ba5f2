// Command-line surface over the library: model validation, exact analyses,
// sampling runs and operator utilities. Exit codes: 0 success, 1 check
// failed, 2 validation, 3 I/O, 4 capacity/ergodicity.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fockmrf/diagram.hpp"
#include "fockmrf/equilibrium.hpp"
#include "fockmrf/expr_text.hpp"
#include "fockmrf/kernel.hpp"
#include "fockmrf/mrf_spec.hpp"
#include "fockmrf/sampler.hpp"
#include "fockmrf/state_space.hpp"
#include "fockmrf/update_operator.hpp"

namespace {

using namespace fockmrf;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitCapacity = 4;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

Scan parse_scan(const std::string& name) {
  if (name == "random" || name == "random-scan") return Scan::RandomScan;
  if (name == "sequential" || name == "sequential-scan") return Scan::SequentialScan;
  throw ValidationError("unknown scan scheme '" + name + "'");
}

json occupancy_to_json(const Occupancy& occ) {
  json arr = json::array();
  for (const auto& node : occ) arr.push_back(node);
  return arr;
}

int cmd_validate(const std::string& path) {
  MrfSpec::from_file(path);
  std::cout << "valid\n";
  return kExitOk;
}

int cmd_normal_order(const std::string& text) {
  OperatorExpr expr = parse_expr(text);
  std::cout << render_expr(normal_order(expr)) << "\n";
  return kExitOk;
}

int cmd_exact_stationary(const std::string& path, const std::vector<int>& totals, Scan scheme) {
  MrfSpec spec = MrfSpec::from_file(path);
  StateSpace space = StateSpace::for_spec(spec, totals);
  UpdateOperator H = build_mrf_H(spec);
  ExactKernel kernel = build_kernel(H, space, scheme);
  Distribution pi = stationary_distribution(to_float(kernel));

  json out = json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    json entry;
    entry["occupancy"] = occupancy_to_json(space.state(i));
    entry["prob"] = pi.probs[i];
    out.push_back(entry);
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_equilibrium_check(int total, const std::vector<Rational>& p, bool perturb) {
  EquilibriumReport report =
      check_equilibrium_multinomial(p, total, perturb ? Rational(1, 7) : Rational(0));
  json out;
  out["lambda"] = to_string(report.lambda);
  out["residual"] = to_string(report.residual);
  if (report.offending) out["offending"] = occupancy_to_json(*report.offending);
  std::cout << out.dump(2) << "\n";
  return report.lambda_is_total ? kExitOk : kExitCheckFailed;
}

int cmd_verify_conservation(const std::string& path) {
  MrfSpec spec = MrfSpec::from_file(path);
  UpdateOperator H = build_mrf_H(spec);
  bool ok = true;
  for (int u = 1; u <= spec.num_nodes(); ++u) {
    ConservationReport report = verify_number_conservation(H, u);
    if (report.conserved) {
      std::cout << "node " << u << ": conserved\n";
    } else {
      ok = false;
      std::cout << "node " << u << ": VIOLATED, residual = " << render_expr(report.witness)
                << "\n";
    }
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_mcmc_run(const std::string& path, std::uint64_t seed, std::uint64_t steps,
                 std::uint64_t burn_in, std::uint64_t thin, const std::string& totals_text,
                 const std::string& init_text, Scan scheme, int chains,
                 const std::string& out_path) {
  MrfSpec spec = MrfSpec::from_file(path);
  ChainConfig config;
  config.seed = seed;
  config.scheme = scheme;
  config.steps = steps;
  config.burn_in = burn_in;
  config.thin = thin;
  if (!init_text.empty()) {
    json init = json::parse(init_text, nullptr, false);
    if (init.is_discarded() || !init.is_array())
      throw ValidationError("--init must be a JSON array of per-node bin counts");
    Occupancy occ;
    for (const auto& node : init) occ.push_back(node.get<BinCounts>());
    config.initial = occ;
  } else if (!totals_text.empty()) {
    config.totals = parse_int_list(totals_text);
  } else {
    config.totals.assign(spec.num_nodes(), 1);
  }

  if (chains == 1) {
    ChainTrace trace = run(spec, config);
    write_trace_csv(trace, out_path);
    write_trace_sidecar(trace, out_path);
    std::cout << "wrote " << trace.records.size() << " records to " << out_path << "\n";
  } else {
    std::vector<ChainTrace> traces = run_chains(spec, config, chains);
    for (int c = 0; c < chains; ++c) {
      std::string chain_path = out_path;
      auto dot = chain_path.rfind(".csv");
      std::string suffix = ".chain" + std::to_string(c);
      if (dot != std::string::npos)
        chain_path.insert(dot, suffix);
      else
        chain_path += suffix;
      write_trace_csv(traces[c], chain_path);
      write_trace_sidecar(traces[c], chain_path);
      std::cout << "wrote " << traces[c].records.size() << " records to " << chain_path << "\n";
    }
  }
  return kExitOk;
}

int cmd_compare(const std::string& path, const std::string& totals_text, std::uint64_t retained,
                std::uint64_t seed, double tol, std::uint64_t burn_in_opt, std::uint64_t thin,
                Scan scheme) {
  MrfSpec spec = MrfSpec::from_file(path);
  std::vector<int> totals =
      totals_text.empty() ? std::vector<int>(spec.num_nodes(), 1) : parse_int_list(totals_text);

  StateSpace space = StateSpace::for_spec(spec, totals);
  UpdateOperator H = build_mrf_H(spec);
  ExactKernel kernel = build_kernel(H, space, scheme);
  Distribution pi = stationary_distribution(to_float(kernel));
  std::cout << "kernel: " << space.size()
            << " states, irreducible and aperiodic on its support\n";

  ChainConfig config = ChainConfig::with_defaults(spec, totals, seed, retained * thin);
  config.scheme = scheme;
  config.thin = thin;
  if (burn_in_opt > 0) config.burn_in = burn_in_opt;
  config.steps = config.burn_in + retained * thin;
  ChainTrace trace = run(spec, config);
  Distribution emp = empirical_distribution(trace, space);

  double tv = total_variation(pi.probs, emp.probs);
  std::cout << "retained records: " << trace.records.size() << "\n";
  std::cout << "state                exact        empirical\n";
  for (std::size_t i = 0; i < space.size(); ++i)
    std::printf("%-20s %.9f  %.9f\n", to_string(space.state(i)).c_str(), pi.probs[i],
                emp.probs[i]);

  StatisticEstimate est = estimate_statistic(trace, flatten_occupancy);
  std::cout << "per-bin mean occupancy (batch-means error, 20 batches):\n";
  std::size_t k = 0;
  for (std::size_t s = 0; s < trace.layout.size(); ++s)
    for (int b = 1; b <= trace.layout[s]; ++b, ++k)
      std::printf("  node%zu_bin%d: %.6f +/- %.6f (naive %.6f)\n", s + 1, b, est.mean[k],
                  est.batch_se[k], est.naive_se[k]);

  std::printf("total variation: %.6f (tolerance %.6f)\n", tv, tol);
  return tv < tol ? kExitOk : kExitCheckFailed;
}

int cmd_diagram_expand(int pieces, int power, bool verify) {
  std::vector<InteractionWord> words = expand_power(pieces, power);
  std::cout << render_words(words);
  if (!verify) return kExitOk;

  // Toy cross-check: two nodes with two bins each, coupled both ways.
  MrfSpec spec(2, {2, 2});
  spec.add_two_clique({1, 2, {{Rational(1, 2), Rational(1, 3)}, {Rational(1, 4), Rational(1, 5)}}});
  spec.add_two_clique({2, 1, {{Rational(1, 2), Rational(1, 4)}, {Rational(1, 3), Rational(1, 5)}}});
  UpdateOperator H = build_mrf_H(spec);
  if (pieces != static_cast<int>(H.nodes.size()))
    throw ValidationError("--verify uses the bundled 2-node model; use --pieces 2");

  MixedState state = MixedState::pure({{1, 1}, {0, 2}});
  MixedState via_words;
  for (const auto& word : words) via_words += evaluate_word(word, H, state);

  OperatorExpr step = OperatorExpr::identity() + H.piece_sum();
  MixedState direct = state;
  for (int i = 0; i < power; ++i) direct = apply_expr(step, direct);

  bool ok = via_words == direct;
  std::cout << (ok ? "verify: word sum equals direct operator power\n"
                   : "verify: MISMATCH against direct operator power\n");
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator-algebra MCMC for Markov random fields"};
  app.require_subcommand(1);

  std::string spec_path, expr_text, totals_text, init_text, out_path = "trace.csv";
  std::string p_text, scheme_name = "random";
  std::uint64_t seed = 0, steps = 0, burn_in = 0, thin = 1;
  int total_n = 1, pieces = 2, power = 2, chains = 1;
  double tol = 0.02;
  bool perturb = false, verify = false;

  auto* validate = app.add_subcommand("validate", "Check a model document");
  validate->add_option("spec", spec_path, "model JSON path")->required();

  auto* norm = app.add_subcommand("normal-order", "Canonicalise an operator expression");
  norm->add_option("--expr", expr_text, "expression, e.g. \"A[1,1] A'[1,1]\"")->required();

  auto* stat = app.add_subcommand("exact-stationary", "Stationary distribution of the kernel");
  stat->add_option("--spec", spec_path)->required();
  stat->add_option("--totals", totals_text, "per-node sample totals, e.g. 2,2")->required();
  stat->add_option("--scheme", scheme_name, "random | sequential");

  int bins_m = 0;
  auto* equi = app.add_subcommand("equilibrium-check", "Multinomial eigenstate check");
  equi->add_option("--m", bins_m, "bin count (must match --p when given)");
  equi->add_option("--n", total_n, "total samples")->required();
  equi->add_option("--p", p_text, "creation weights, e.g. 1/2,1/3,1/6")->required();
  equi->add_flag("--perturb", perturb, "perturb the trial state (negative control)");

  auto* cons = app.add_subcommand("verify-conservation", "Check [H, N^u] = 0 for every node");
  cons->add_option("--spec", spec_path)->required();

  auto* mcmc = app.add_subcommand("mcmc-run", "Run the stochastic sampler");
  mcmc->add_option("--spec", spec_path)->required();
  mcmc->add_option("--seed", seed);
  mcmc->add_option("--steps", steps, "total updates including burn-in")->required();
  mcmc->add_option("--burn-in", burn_in);
  mcmc->add_option("--thin", thin);
  mcmc->add_option("--totals", totals_text, "per-node totals for a random start");
  mcmc->add_option("--init", init_text, "explicit initial occupancy as JSON");
  mcmc->add_option("--scheme", scheme_name, "random | sequential");
  mcmc->add_option("--chains", chains, "independent chains with derived seeds");
  mcmc->add_option("--out", out_path, "trace CSV path");

  auto* comp = app.add_subcommand("compare", "Empirical vs exact stationary distribution");
  comp->add_option("--spec", spec_path)->required();
  comp->add_option("--totals", totals_text);
  comp->add_option("--steps", steps, "retained records")->required();
  comp->add_option("--seed", seed);
  comp->add_option("--burn-in", burn_in, "override the default burn-in");
  comp->add_option("--thin", thin);
  comp->add_option("--tol", tol, "total-variation threshold");
  comp->add_option("--scheme", scheme_name, "random | sequential");

  auto* diag = app.add_subcommand("diagram-expand", "Expand (I + sum H_s)^k into words");
  diag->add_option("--pieces", pieces, "number of update pieces")->required();
  diag->add_option("--power", power, "power k")->required();
  diag->add_flag("--verify", verify, "cross-check on a bundled toy model");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(spec_path);
    if (norm->parsed()) return cmd_normal_order(expr_text);
    if (stat->parsed())
      return cmd_exact_stationary(spec_path, parse_int_list(totals_text),
                                  parse_scan(scheme_name));
    if (equi->parsed()) {
      std::vector<Rational> p = parse_rational_list(p_text);
      if (bins_m != 0 && bins_m != static_cast<int>(p.size()))
        throw ValidationError("--m disagrees with the number of --p weights");
      return cmd_equilibrium_check(total_n, p, perturb);
    }
    if (cons->parsed()) return cmd_verify_conservation(spec_path);
    if (mcmc->parsed())
      return cmd_mcmc_run(spec_path, seed, steps, burn_in, thin, totals_text, init_text,
                          parse_scan(scheme_name), chains, out_path);
    if (comp->parsed())
      return cmd_compare(spec_path, totals_text, steps, seed, tol, burn_in, thin,
                         parse_scan(scheme_name));
    if (diag->parsed()) return cmd_diagram_expand(pieces, power, verify);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ErgodicityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

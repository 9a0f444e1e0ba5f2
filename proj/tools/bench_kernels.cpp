// Timing comparison of the serial and OpenMP paths for the row-parallel
// workloads: symbolic kernel construction, the power-iteration matvec and
// independent sampling chains. The serial results are the reference; each
// section checks the parallel output against them before timing.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fockmrf/kernel.hpp"
#include "fockmrf/mrf_spec.hpp"
#include "fockmrf/sampler.hpp"
#include "fockmrf/state_space.hpp"
#include "fockmrf/update_operator.hpp"

using namespace fockmrf;
namespace chrono = std::chrono;

namespace {

double seconds_since(chrono::steady_clock::time_point t0) {
  return chrono::duration_cast<chrono::duration<double>>(chrono::steady_clock::now() - t0)
      .count();
}

MrfSpec pair_model(int bins) {
  MrfSpec spec(2, {bins, bins});
  std::vector<std::vector<Rational>> forward(bins, std::vector<Rational>(bins));
  for (int i = 0; i < bins; ++i)
    for (int k = 0; k < bins; ++k) forward[i][k] = Rational(1 + (i * 7 + k * 3) % 5, 5);
  std::vector<std::vector<Rational>> backward(bins, std::vector<Rational>(bins));
  for (int i = 0; i < bins; ++i)
    for (int k = 0; k < bins; ++k) backward[i][k] = forward[k][i];
  spec.add_two_clique({1, 2, forward});
  spec.add_two_clique({2, 1, backward});
  return spec;
}

// Synthetic row-stochastic matrix for the matvec section; the exact kernels
// stay dense, so sizes here are what power iteration actually sees.
DenseMatrix<double> stochastic_matrix(std::size_t n) {
  DenseMatrix<double> m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    double total = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      double v = 1.0 + static_cast<double>((r * 31 + c * 17) % 97);
      m.at(r, c) = v;
      total += v;
    }
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) /= total;
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  int bins = argc > 1 ? std::atoi(argv[1]) : 4;
  int total = argc > 2 ? std::atoi(argv[2]) : 4;
  std::size_t matvec_size = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 4000;
  int matvec_reps = argc > 4 ? std::atoi(argv[4]) : 50;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  MrfSpec spec = pair_model(bins);
  UpdateOperator H = build_mrf_H(spec);
  StateSpace space(spec.bins(), {total, total});
  std::printf("model: 2 nodes, %d bins, totals (%d, %d) -> %zu states\n", bins, total, total,
              space.size());

  // Symbolic kernel rows, serial vs parallel.
  auto t0 = chrono::steady_clock::now();
  ExactKernel serial = build_kernel(H, space, Scan::RandomScan, Exec::Serial);
  double t_serial = seconds_since(t0);
  t0 = chrono::steady_clock::now();
  ExactKernel parallel = build_kernel(H, space, Scan::RandomScan, Exec::Parallel);
  double t_parallel = seconds_since(t0);
  if (serial.matrix.data != parallel.matrix.data) {
    std::printf("FAIL: parallel kernel differs from the serial reference\n");
    return 1;
  }
  std::printf("kernel build:  serial %.3fs, parallel %.3fs, speedup %.2fx\n", t_serial,
              t_parallel, t_serial / t_parallel);

  // Matvec, serial vs parallel (identical summation order per entry).
  DenseMatrix<double> m = stochastic_matrix(matvec_size);
  std::vector<double> x(matvec_size, 1.0 / static_cast<double>(matvec_size));
  t0 = chrono::steady_clock::now();
  std::vector<double> ys;
  for (int i = 0; i < matvec_reps; ++i) ys = left_multiply(x, m, Exec::Serial);
  double t_mv_serial = seconds_since(t0);
  t0 = chrono::steady_clock::now();
  std::vector<double> yp;
  for (int i = 0; i < matvec_reps; ++i) yp = left_multiply(x, m, Exec::Parallel);
  double t_mv_parallel = seconds_since(t0);
  if (ys != yp) {
    std::printf("FAIL: parallel matvec differs from the serial reference\n");
    return 1;
  }
  std::printf("matvec %zux%zu x%d: serial %.3fs, parallel %.3fs, speedup %.2fx\n", matvec_size,
              matvec_size, matvec_reps, t_mv_serial, t_mv_parallel,
              t_mv_serial / t_mv_parallel);

  // Independent chains.
  ChainConfig config = ChainConfig::with_defaults(spec, {total, total}, 1234, 200'000);
  int chains = 8;
  t0 = chrono::steady_clock::now();
  auto traces_serial = run_chains(spec, config, chains, Exec::Serial);
  double t_ch_serial = seconds_since(t0);
  t0 = chrono::steady_clock::now();
  auto traces_parallel = run_chains(spec, config, chains, Exec::Parallel);
  double t_ch_parallel = seconds_since(t0);
  for (int c = 0; c < chains; ++c)
    if (traces_serial[c].records != traces_parallel[c].records) {
      std::printf("FAIL: parallel chains differ from the serial reference\n");
      return 1;
    }
  std::printf("%d chains x 200k records: serial %.3fs, parallel %.3fs, speedup %.2fx\n", chains,
              t_ch_serial, t_ch_parallel, t_ch_serial / t_ch_parallel);
  return 0;
}

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fockmrf/rational.hpp"
#include "fockmrf/state_space.hpp"
#include "fockmrf/update_operator.hpp"

namespace fockmrf {

enum class Exec { Serial, Parallel };
enum class Scan { RandomScan, SequentialScan };

template <typename T>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}
  T& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

// Row-stochastic transition matrix over StateSpace indices. Rational entries
// are exactly stochastic; the float variant is stochastic to rounding.
template <typename T>
struct TransitionKernel {
  Scan scheme = Scan::RandomScan;
  DenseMatrix<T> matrix;
};

using ExactKernel = TransitionKernel<Rational>;
using FloatKernel = TransitionKernel<double>;

FloatKernel to_float(const ExactKernel& kernel);

// Per-site kernel for one node: each row applies the node's piece of H to
// the pure source state via the symbolic engine and normalises the resulting
// target weights. Throws ModelError on an all-zero row.
DenseMatrix<Rational> site_kernel(const UpdateOperator& H, const StateSpace& space, int node,
                                  Exec exec = Exec::Parallel);

// Random scan averages the per-site kernels uniformly over unclamped nodes;
// sequential scan multiplies them in ascending node order.
ExactKernel build_kernel(const UpdateOperator& H, const StateSpace& space, Scan scheme,
                         Exec exec = Exec::Parallel);

struct Distribution {
  std::vector<double> probs;
};

struct StationaryOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 1'000'000;
};

// Left fixed point pi with |pi K - pi|_1 below tolerance, by power iteration
// with a Cesaro-averaged fallback iterate. The kernel must be irreducible
// and aperiodic on its support; reducibility is reported with the states
// unreachable from state 0.
Distribution stationary_distribution(const FloatKernel& kernel,
                                     StationaryOptions options = {});

// Row-vector times matrix; the parallel path computes identical values in
// the same per-entry order as the serial one.
std::vector<double> left_multiply(const std::vector<double>& x, const DenseMatrix<double>& m,
                                  Exec exec = Exec::Serial);

// Exact weighted average of a vector statistic under a distribution.
std::vector<double> expected_statistic(
    const Distribution& dist, const StateSpace& space,
    const std::function<std::vector<double>(const Occupancy&)>& statistic);

double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace fockmrf

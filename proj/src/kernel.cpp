#include "fockmrf/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fockmrf/errors.hpp"
#include "fockmrf/mixed_state.hpp"

namespace fockmrf {

FloatKernel to_float(const ExactKernel& kernel) {
  FloatKernel out;
  out.scheme = kernel.scheme;
  out.matrix.rows = kernel.matrix.rows;
  out.matrix.cols = kernel.matrix.cols;
  out.matrix.data.resize(kernel.matrix.data.size());
  for (std::size_t i = 0; i < kernel.matrix.data.size(); ++i)
    out.matrix.data[i] = to_double(kernel.matrix.data[i]);
  return out;
}

namespace {

void fill_site_row(const OperatorExpr& piece, const StateSpace& space, int node, std::size_t row,
                   DenseMatrix<Rational>& matrix) {
  MixedState image = apply_expr(piece, MixedState::pure(space.state(row)));
  Rational total = image.total_weight();
  if (image.is_zero() || total == 0)
    throw ModelError("all-zero kernel row for state " + to_string(space.state(row)) +
                     " at node " + std::to_string(node));
  for (const auto& [occ, w] : image.terms()) matrix.at(row, space.index_of(occ)) = w / total;
}

template <typename Fn>
void for_each_row(std::size_t rows, Exec exec, Fn&& fn) {
  if (exec == Exec::Serial) {
    for (std::size_t r = 0; r < rows; ++r) fn(r);
    return;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long long r = 0; r < static_cast<long long>(rows); ++r) {
    try {
      fn(static_cast<std::size_t>(r));
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

DenseMatrix<Rational> multiply(const DenseMatrix<Rational>& a, const DenseMatrix<Rational>& b,
                               Exec exec) {
  DenseMatrix<Rational> out(a.rows, b.cols);
  for_each_row(a.rows, exec, [&](std::size_t r) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Rational& w = a.at(r, k);
      if (w == 0) continue;
      for (std::size_t c = 0; c < b.cols; ++c) {
        const Rational& v = b.at(k, c);
        if (v != 0) out.at(r, c) += w * v;
      }
    }
  });
  return out;
}

}  // namespace

DenseMatrix<Rational> site_kernel(const UpdateOperator& H, const StateSpace& space, int node,
                                  Exec exec) {
  const OperatorExpr* piece = H.piece_for(node);
  if (piece == nullptr)
    throw IndexError("update operator has no piece for node " + std::to_string(node));
  DenseMatrix<Rational> matrix(space.size(), space.size());
  for_each_row(space.size(), exec,
               [&](std::size_t r) { fill_site_row(*piece, space, node, r, matrix); });
  return matrix;
}

ExactKernel build_kernel(const UpdateOperator& H, const StateSpace& space, Scan scheme,
                         Exec exec) {
  if (H.nodes.empty()) throw ModelError("update operator has no hopping pieces");
  ExactKernel kernel;
  kernel.scheme = scheme;

  if (scheme == Scan::RandomScan) {
    DenseMatrix<Rational> sum(space.size(), space.size());
    for (int node : H.nodes) {
      DenseMatrix<Rational> k = site_kernel(H, space, node, exec);
      for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += k.data[i];
    }
    Rational scale(1, static_cast<int>(H.nodes.size()));
    for (auto& v : sum.data) v *= scale;
    kernel.matrix = std::move(sum);
  } else {
    DenseMatrix<Rational> product;
    bool first = true;
    for (int node : H.nodes) {
      DenseMatrix<Rational> k = site_kernel(H, space, node, exec);
      if (first) {
        product = std::move(k);
        first = false;
      } else {
        product = multiply(product, k, exec);
      }
    }
    kernel.matrix = std::move(product);
  }
  return kernel;
}

std::vector<double> left_multiply(const std::vector<double>& x, const DenseMatrix<double>& m,
                                  Exec exec) {
  std::vector<double> y(m.cols, 0.0);
  auto column = [&](std::size_t c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < m.rows; ++r) acc += x[r] * m.at(r, c);
    y[c] = acc;
  };
  if (exec == Exec::Serial) {
    for (std::size_t c = 0; c < m.cols; ++c) column(c);
  } else {
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < static_cast<long long>(m.cols); ++c)
      column(static_cast<std::size_t>(c));
  }
  return y;
}

namespace {

std::vector<std::size_t> unreachable_from(const DenseMatrix<double>& m, bool reverse) {
  const std::size_t n = m.rows;
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop();
    for (std::size_t v = 0; v < n; ++v) {
      double w = reverse ? m.at(v, u) : m.at(u, v);
      if (w > 0.0 && !seen[v]) {
        seen[v] = true;
        queue.push(v);
      }
    }
  }
  std::vector<std::size_t> missing;
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) missing.push_back(v);
  return missing;
}

// Period of an irreducible chain: gcd over all edges of depth(u) + 1 - depth(v).
std::size_t chain_period(const DenseMatrix<double>& m) {
  const std::size_t n = m.rows;
  std::vector<long long> depth(n, -1);
  std::queue<std::size_t> queue;
  queue.push(0);
  depth[0] = 0;
  long long g = 0;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop();
    for (std::size_t v = 0; v < n; ++v) {
      if (m.at(u, v) <= 0.0) continue;
      if (depth[v] < 0) {
        depth[v] = depth[u] + 1;
        queue.push(v);
      } else {
        g = std::gcd(g, std::abs(depth[u] + 1 - depth[v]));
      }
    }
  }
  return g == 0 ? 1 : static_cast<std::size_t>(g);
}

double l1_residual(const std::vector<double>& x, const DenseMatrix<double>& m) {
  std::vector<double> y = left_multiply(x, m);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r += std::abs(y[i] - x[i]);
  return r;
}

}  // namespace

Distribution stationary_distribution(const FloatKernel& kernel, StationaryOptions options) {
  const DenseMatrix<double>& m = kernel.matrix;
  if (m.rows != m.cols || m.rows == 0) throw ValidationError("kernel must be square");

  auto report_unreachable = [&](const std::vector<std::size_t>& missing, const char* direction) {
    std::string msg = "kernel is reducible: states not ";
    msg += direction;
    msg += " state 0:";
    for (std::size_t i = 0; i < missing.size() && i < 8; ++i)
      msg += " " + std::to_string(missing[i]);
    if (missing.size() > 8) msg += " ... (" + std::to_string(missing.size()) + " total)";
    throw ErgodicityError(msg);
  };
  if (m.rows == 1) return Distribution{{1.0}};

  std::vector<std::size_t> fwd = unreachable_from(m, false);
  if (!fwd.empty()) report_unreachable(fwd, "reachable from");
  std::vector<std::size_t> bwd = unreachable_from(m, true);
  if (!bwd.empty()) report_unreachable(bwd, "able to reach");

  std::size_t period = chain_period(m);
  if (period > 1)
    throw ErgodicityError("kernel is periodic with period " + std::to_string(period));

  std::vector<double> x(m.rows, 1.0 / static_cast<double>(m.rows));
  std::vector<double> cesaro = x;
  for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
    x = left_multiply(x, m);
    double t = static_cast<double>(iter);
    for (std::size_t i = 0; i < x.size(); ++i)
      cesaro[i] = (cesaro[i] * t + x[i]) / (t + 1.0);

    if (l1_residual(x, m) < options.tolerance) return Distribution{x};
    if (l1_residual(cesaro, m) < options.tolerance) return Distribution{cesaro};
  }
  throw ConvergenceError("power iteration did not reach tolerance " +
                         std::to_string(options.tolerance) + " within " +
                         std::to_string(options.max_iterations) + " iterations");
}

std::vector<double> expected_statistic(
    const Distribution& dist, const StateSpace& space,
    const std::function<std::vector<double>(const Occupancy&)>& statistic) {
  if (dist.probs.size() != space.size())
    throw ValidationError("distribution length does not match the state space");
  std::vector<double> mean;
  for (std::size_t i = 0; i < space.size(); ++i) {
    std::vector<double> s = statistic(space.state(i));
    if (mean.empty()) mean.assign(s.size(), 0.0);
    if (s.size() != mean.size()) throw ValidationError("statistic dimension changed mid-sweep");
    for (std::size_t k = 0; k < s.size(); ++k) mean[k] += dist.probs[i] * s[k];
  }
  return mean;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ValidationError("total variation: length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d / 2.0;
}

}  // namespace fockmrf

#pragma once

#include <vector>

#include "fockmrf/rational.hpp"

namespace fockmrf {

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt b = 1;
  for (int i = 1; i <= k; ++i) {
    b *= n - k + i;
    b /= i;
  }
  return b;
}

// n! / (c_1! c_2! ... c_m!) for counts summing to n.
inline BigInt multinomial_coefficient(const std::vector<int>& counts) {
  int n = 0;
  for (int c : counts) n += c;
  BigInt m = factorial(n);
  for (int c : counts) m /= factorial(c);
  return m;
}

}  // namespace fockmrf

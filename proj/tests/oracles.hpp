#pragma once

// Test-side reference implementations, deliberately naive and independent of
// the library code paths they check.

#include <gmpxx.h>

#include <cmath>
#include <vector>

namespace oracle {

// Terms G_{2-k} .. G_hi by summing the k previous terms from scratch each time.
inline std::vector<mpz_class> naive_terms(int k, long r, long a, long b, long hi) {
  std::vector<mpz_class> g;
  for (int i = 0; i < k - 2; ++i) g.emplace_back(0);
  g.emplace_back(a);
  g.emplace_back(b);
  const long first = 2 - k;
  for (long n = 2; n <= hi; ++n) {
    const std::size_t at = static_cast<std::size_t>(n - first);
    mpz_class v = r * g[at - 1];
    for (int j = 2; j <= k; ++j) v += g[at - static_cast<std::size_t>(j)];
    g.push_back(v);
  }
  return g;
}

inline mpz_class naive_pell(int k, long n) {
  const auto t = naive_terms(k, 2, 0, 1, n < 1 ? 1 : n);
  return t[static_cast<std::size_t>(n - (2 - k))];
}

inline mpz_class naive_fib(long n) {
  mpz_class a = 0, b = 1;
  for (long i = 0; i < n; ++i) {
    mpz_class c = a + b;
    a = b;
    b = c;
  }
  return a;
}

// Pascal-triangle binomial with the zero convention.
inline mpz_class pascal(long a, long b) {
  if (a < 0 || b < 0 || a < b) return 0;
  std::vector<mpz_class> row{1};
  for (long i = 1; i <= a; ++i) {
    std::vector<mpz_class> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(b)];
}

// Distance from x to the nearest integer in long double.
inline long double frac_dist(long double x) {
  const long double f = x - std::floor(x);
  return f < 0.5L ? f : 1.0L - f;
}

}  // namespace oracle

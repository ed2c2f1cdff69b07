#include <doctest.h>

#include <random>

#include "kpell/algebraic.hpp"
#include "kpell/polynomial.hpp"

using namespace kpell;

namespace {

// Cofactor expansion along the first row: independent of Bareiss.
BigInt laplace(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  BigInt det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    const BigInt term = m[0][c] * laplace(minor);
    det += (c % 2 == 0) ? term : BigInt(-term);
  }
  return det;
}

}  // namespace

TEST_CASE("arithmetic and evaluation") {
  const IntPoly p{-1, 0, 1};  // x^2 - 1
  const IntPoly q{1, 1};      // x + 1
  CHECK(exact_div(p, q) == IntPoly{-1, 1});
  CHECK(p.eval(BigInt(3)) == 8);
  CHECK(p.derivative() == IntPoly{0, 2});
  CHECK((p * q).degree() == 3);
  CHECK(gcd(p, IntPoly{2, 2}) == q);
  CHECK(squarefree_part(q * q * IntPoly{-2, 1}) == q * IntPoly{-2, 1});
  CHECK(IntPoly{2, 4, 6}.content() == 2);
  CHECK(IntPoly{-2, -4}.primitive_part() == IntPoly{1, 2});
}

TEST_CASE("Psi_k shape") {
  CHECK(psi_polynomial(2) == IntPoly{-1, -2, 1});
  CHECK(psi_polynomial(3) == IntPoly{-1, -1, -2, 1});
  CHECK(g_denominator(2) == IntPoly{1, -6, 3});
}

TEST_CASE("Bareiss agrees with cofactor expansion") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> u(-9, 9);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
      for (auto& row : m)
        for (auto& v : row) v = u(rng);
      if (trial % 5 == 0) m[0] = std::vector<BigInt>(n, BigInt(0));  // singular
      CHECK(bareiss_determinant(m) == laplace(m));
    }
  }
}

TEST_CASE("resultant of integer polynomials") {
  // Res(x^2 - 2, x - 1) = (1)^2 - 2 evaluated at the root of g: -1
  CHECK(resultant(IntPoly{-2, 0, 1}, IntPoly{-1, 1}) == -1);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> u(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<BigInt> f(4), g(3);
    for (auto& v : f) v = u(rng);
    for (auto& v : g) v = u(rng);
    f.back() = 1 + (trial % 3);
    g.back() = 2;
    const auto s = sylvester_matrix(f, g);
    CHECK(resultant(IntPoly(f), IntPoly(g)) == laplace(s));
  }
}

TEST_CASE("resultant in x over Z[y] matches pointwise resultants") {
  for (int k = 2; k <= 5; ++k) {
    const IntPoly psi = psi_polynomial(k);
    const std::vector<IntPoly> g = {IntPoly{1, k - 1L}, IntPoly{-1, -3L * k}, IntPoly{0, k + 1L}};
    const IntPoly r = resultant_in_x(psi, g);
    for (long y = -3; y <= 3; ++y) {
      const IntPoly gy{1 + (k - 1) * y, -1 - 3L * k * y, (k + 1) * y};
      CHECK(r.eval(BigInt(y)) == resultant(psi, gy));
    }
  }
}

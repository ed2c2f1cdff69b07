#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kpell/bigint.hpp"
#include "kpell/interval.hpp"

namespace kpell {

// Dense univariate polynomial over Z, coefficients stored in ascending order.
// The zero polynomial has no coefficients and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> ascending);
  IntPoly(std::initializer_list<long> ascending);

  static IntPoly constant(const BigInt& c);
  static IntPoly monomial(const BigInt& c, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt coeff(int i) const;
  const BigInt& leading() const;

  IntPoly derivative() const;
  BigInt content() const;
  // Divides out the content and makes the leading coefficient positive.
  IntPoly primitive_part() const;

  BigInt eval(const BigInt& x) const;
  Interval eval(const Interval& x) const;
  ComplexInterval eval(const ComplexInterval& z) const;

  std::string to_string(char var = 'x') const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;
  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const BigInt& s, const IntPoly& a);
  friend IntPoly operator-(const IntPoly& a);

 private:
  void trim();
  std::vector<BigInt> c_;
};

// a / b when the division is exact in Z[x]; InconsistencyError otherwise.
IntPoly exact_div(const IntPoly& a, const IntPoly& b);
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);
// Primitive gcd with positive leading coefficient (primitive PRS).
IntPoly gcd(const IntPoly& a, const IntPoly& b);
// Product of the distinct irreducible factors, primitive.
IntPoly squarefree_part(const IntPoly& p);

inline bool ring_is_zero(const BigInt& v) { return v == 0; }
inline bool ring_is_zero(const IntPoly& v) { return v.is_zero(); }
BigInt ring_divexact(const BigInt& a, const BigInt& b);
inline IntPoly ring_divexact(const IntPoly& a, const IntPoly& b) { return exact_div(a, b); }
inline BigInt ring_one(const BigInt&) { return 1; }
inline IntPoly ring_one(const IntPoly&) { return IntPoly::constant(1); }

// Fraction-free Gaussian elimination (Bareiss). Every intermediate division
// is exact, so the computation never leaves the ring.
template <class Ring>
Ring bareiss_determinant(std::vector<std::vector<Ring>> m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("bareiss_determinant: empty matrix");
  bool negate = false;
  Ring prev = ring_one(m[0][0]);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (ring_is_zero(m[k][k])) {
      std::size_t pivot = k + 1;
      while (pivot < n && ring_is_zero(m[pivot][k])) ++pivot;
      if (pivot == n) return Ring();
      std::swap(m[k], m[pivot]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = ring_divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      }
    }
    prev = m[k][k];
  }
  return negate ? Ring() - m[n - 1][n - 1] : m[n - 1][n - 1];
}

// Sylvester matrix of f and g given by ascending coefficient lists over any
// ring. Row layout: deg(g) shifted copies of f followed by deg(f) copies of g.
template <class Ring>
std::vector<std::vector<Ring>> sylvester_matrix(const std::vector<Ring>& f, const std::vector<Ring>& g) {
  const std::size_t df = f.size() - 1;
  const std::size_t dg = g.size() - 1;
  const std::size_t n = df + dg;
  std::vector<std::vector<Ring>> s(n, std::vector<Ring>(n));
  for (std::size_t row = 0; row < dg; ++row) {
    for (std::size_t i = 0; i <= df; ++i) s[row][row + i] = f[df - i];
  }
  for (std::size_t row = 0; row < df; ++row) {
    for (std::size_t i = 0; i <= dg; ++i) s[dg + row][row + i] = g[dg - i];
  }
  return s;
}

BigInt resultant(const IntPoly& f, const IntPoly& g);

// Res_x(f(x), g(x, y)) where g is given as ascending coefficients in x, each
// an integer polynomial in y. The result is a polynomial in y.
IntPoly resultant_in_x(const IntPoly& f, const std::vector<IntPoly>& g);

}  // namespace kpell

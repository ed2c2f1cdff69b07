#include "kpell/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "kpell/errors.hpp"

namespace kpell {

IntPoly::IntPoly(std::vector<BigInt> ascending) : c_(std::move(ascending)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> ascending) {
  for (long v : ascending) c_.emplace_back(v);
  trim();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(const BigInt& c, int degree) {
  std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPoly::coeff(int i) const {
  return (i >= 0 && i <= degree()) ? c_[static_cast<std::size_t>(i)] : BigInt(0);
}

const BigInt& IntPoly::leading() const {
  if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return c_.back();
}

IntPoly IntPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<BigInt> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(d));
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  BigInt g = content();
  if (leading() < 0) g = -g;
  std::vector<BigInt> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(v[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Interval IntPoly::eval(const Interval& x) const {
  Interval acc = Interval::exact(0, x.precision());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Interval::exact(*it, x.precision());
  return acc;
}

ComplexInterval IntPoly::eval(const ComplexInterval& z) const {
  const mpfr_prec_t p = z.precision();
  ComplexInterval acc(Interval::exact(0, p), Interval::exact(0, p));
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * z;
    acc.re = acc.re + Interval::exact(*it, p);
  }
  return acc;
}

std::string IntPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < a.c_.size()) v[i] += a.c_[i];
    if (i < b.c_.size()) v[i] += b.c_[i];
  }
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a) {
  std::vector<BigInt> v(a.c_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -a.c_[i];
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return IntPoly(std::move(v));
}

IntPoly operator*(const BigInt& s, const IntPoly& a) {
  std::vector<BigInt> v(a.c_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * a.c_[i];
  return IntPoly(std::move(v));
}

IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw InconsistencyError("exact_div: inexact polynomial division");
  std::vector<BigInt> rem = a.coeffs();
  std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  const BigInt& lb = b.leading();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  for (std::size_t i = q.size(); i-- > 0;) {
    BigInt& top = rem[i + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) {
      throw InconsistencyError("exact_div: inexact polynomial division");
    }
    BigInt c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) rem[i + j] -= c * b.coeffs()[j];
    q[i] = std::move(c);
  }
  for (const auto& r : rem) {
    if (r != 0) throw InconsistencyError("exact_div: nonzero remainder");
  }
  return IntPoly(std::move(q));
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DomainError("pseudo-remainder by zero");
  IntPoly r = a;
  const BigInt lb = b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    IntPoly t = IntPoly::monomial(r.leading(), shift) * b;
    r = lb * r - t;
  }
  return r;
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  IntPoly x = a.primitive_part();
  IntPoly y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = pseudo_remainder(x, y).primitive_part();
    x = std::move(y);
    y = std::move(r);
  }
  return x.primitive_part();
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() < 1) return p.primitive_part();
  const IntPoly g = gcd(p, p.derivative());
  if (g.degree() == 0) return p.primitive_part();
  return exact_div(p.primitive_part(), g).primitive_part();
}

BigInt ring_divexact(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt resultant(const IntPoly& f, const IntPoly& g) {
  if (f.degree() < 0 || g.degree() < 0) return 0;
  return bareiss_determinant(sylvester_matrix(f.coeffs(), g.coeffs()));
}

IntPoly resultant_in_x(const IntPoly& f, const std::vector<IntPoly>& g) {
  std::vector<IntPoly> fy;
  fy.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) fy.push_back(IntPoly::constant(c));
  std::vector<IntPoly> gy = g;
  while (!gy.empty() && gy.back().is_zero()) gy.pop_back();
  if (fy.empty() || gy.empty()) return {};
  return bareiss_determinant(sylvester_matrix(fy, gy));
}

}  // namespace kpell

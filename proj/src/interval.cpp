#include "kpell/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

#include "kpell/errors.hpp"

namespace kpell {

namespace {

mpfr_prec_t joint(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

const Mpfr& min_of(const Mpfr& a, const Mpfr& b) { return compare(a, b) <= 0 ? a : b; }
const Mpfr& max_of(const Mpfr& a, const Mpfr& b) { return compare(a, b) >= 0 ? a : b; }

}  // namespace

BigRational Mpfr::to_rational() const {
  if (!mpfr_number_p(v_)) throw DomainError("Mpfr::to_rational: non-finite value");
  BigInt mant;
  const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
  BigRational q(mant);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

std::string Mpfr::to_string(int digits, mpfr_rnd_t rnd) const {
  char* buf = nullptr;
  const std::string fmt = "%." + std::to_string(std::max(1, digits - 1)) + "R*e";
  if (mpfr_asprintf(&buf, fmt.c_str(), rnd, v_) < 0) return "?";
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Mpfr::to_hex() const {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%Ra", v_) < 0) return "?";
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Mpfr Mpfr::from_hex(const std::string& s, mpfr_prec_t prec) {
  Mpfr r(prec);
  if (mpfr_set_str(r.get(), s.c_str(), 16, MPFR_RNDN) != 0) {
    throw DomainError("Mpfr::from_hex: unparsable value " + s);
  }
  return r;
}

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval::Interval(Mpfr lo, Mpfr hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (compare(lo_, hi_) > 0) throw InconsistencyError("Interval: lo > hi");
}

Interval Interval::exact(long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Interval Interval::exact(const BigInt& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::of(const BigRational& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::decimal(const std::string& literal, mpfr_prec_t prec) {
  Interval r(prec);
  if (mpfr_set_str(r.lo_.get(), literal.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(r.hi_.get(), literal.c_str(), 10, MPFR_RNDU) != 0) {
    throw DomainError("Interval::decimal: unparsable literal " + literal);
  }
  return r;
}

Interval Interval::log2_const(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_log2(r.lo_.get(), MPFR_RNDD);
  mpfr_const_log2(r.hi_.get(), MPFR_RNDU);
  return r;
}

double Interval::mid_double() const { return mid().to_double(); }

Mpfr Interval::mid() const {
  Mpfr m(precision() + 2);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

Mpfr Interval::width() const {
  Mpfr w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

double Interval::log2_width() const {
  Mpfr w = width();
  if (w.sign() == 0) return -std::numeric_limits<double>::infinity();
  mpfr_log2(w.get(), w.get(), MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

bool Interval::contains(const Interval& o) const {
  return compare(lo_, o.lo_) <= 0 && compare(o.hi_, hi_) <= 0;
}

bool Interval::contains(long v) const {
  return mpfr_cmp_si(lo_.get(), v) <= 0 && mpfr_cmp_si(hi_.get(), v) >= 0;
}

bool Interval::contains(const BigRational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

Interval Interval::with_precision(mpfr_prec_t prec) const {
  Interval r(prec);
  mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

std::string Interval::to_string(int digits) const {
  return "[" + lo_.to_string(digits, MPFR_RNDD) + ", " + hi_.to_string(digits, MPFR_RNDU) + "]";
}

Interval operator+(const Interval& a, const Interval& b) {
  Mpfr lo(joint(a, b)), hi(joint(a, b));
  mpfr_add(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator-(const Interval& a, const Interval& b) {
  Mpfr lo(joint(a, b)), hi(joint(a, b));
  mpfr_sub(lo.get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator-(const Interval& a) {
  Mpfr lo(a.precision()), hi(a.precision());
  mpfr_neg(lo.get(), a.hi().get(), MPFR_RNDD);
  mpfr_neg(hi.get(), a.lo().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = joint(a, b);
  const Mpfr* xs[2] = {&a.lo(), &a.hi()};
  const Mpfr* ys[2] = {&b.lo(), &b.hi()};
  Mpfr lo(p), hi(p), t(p);
  bool first = true;
  for (const Mpfr* x : xs) {
    for (const Mpfr* y : ys) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || compare(t, lo) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || compare(t, hi) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return {std::move(lo), std::move(hi)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw PrecisionError("interval division: divisor encloses zero");
  const mpfr_prec_t p = joint(a, b);
  const Mpfr* xs[2] = {&a.lo(), &a.hi()};
  const Mpfr* ys[2] = {&b.lo(), &b.hi()};
  Mpfr lo(p), hi(p), t(p);
  bool first = true;
  for (const Mpfr* x : xs) {
    for (const Mpfr* y : ys) {
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || compare(t, lo) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || compare(t, hi) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return {std::move(lo), std::move(hi)};
}

Interval operator*(const Interval& a, long s) { return a * Interval::exact(s, a.precision()); }
Interval operator*(long s, const Interval& a) { return a * s; }
Interval operator+(const Interval& a, long s) { return a + Interval::exact(s, a.precision()); }
Interval operator-(const Interval& a, long s) { return a - Interval::exact(s, a.precision()); }

Interval sqr(const Interval& a) {
  const mpfr_prec_t p = a.precision();
  Mpfr lo(p), hi(p);
  if (a.lo().sign() >= 0) {
    mpfr_sqr(lo.get(), a.lo().get(), MPFR_RNDD);
    mpfr_sqr(hi.get(), a.hi().get(), MPFR_RNDU);
  } else if (a.hi().sign() <= 0) {
    mpfr_sqr(lo.get(), a.hi().get(), MPFR_RNDD);
    mpfr_sqr(hi.get(), a.lo().get(), MPFR_RNDU);
  } else {
    Mpfr t(p);
    mpfr_sqr(hi.get(), a.hi().get(), MPFR_RNDU);
    mpfr_sqr(t.get(), a.lo().get(), MPFR_RNDU);
    if (compare(t, hi) > 0) hi = t;
  }
  return {std::move(lo), std::move(hi)};
}

Interval sqrt(const Interval& a) {
  if (a.hi().sign() < 0) throw DomainError("sqrt of a negative enclosure");
  const mpfr_prec_t p = a.precision();
  Mpfr lo(p), hi(p);
  if (a.lo().sign() > 0) mpfr_sqrt(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), a.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval log(const Interval& a) {
  if (a.hi().sign() <= 0) throw DomainError("log of a non-positive enclosure");
  if (a.lo().sign() <= 0) throw PrecisionError("log: enclosure touches zero");
  const mpfr_prec_t p = a.precision();
  Mpfr lo(p), hi(p);
  mpfr_log(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_log(hi.get(), a.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval log10(const Interval& a) {
  if (a.hi().sign() <= 0) throw DomainError("log10 of a non-positive enclosure");
  if (a.lo().sign() <= 0) throw PrecisionError("log10: enclosure touches zero");
  const mpfr_prec_t p = a.precision();
  Mpfr lo(p), hi(p);
  mpfr_log10(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_log10(hi.get(), a.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval exp(const Interval& a) {
  const mpfr_prec_t p = a.precision();
  Mpfr lo(p), hi(p);
  mpfr_exp(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_exp(hi.get(), a.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval pow(const Interval& a, long n) {
  const mpfr_prec_t p = a.precision();
  if (n == 0) return Interval::exact(1, p);
  if (n < 0) return Interval::exact(1, p) / pow(a, -n);
  Mpfr lo(p), hi(p);
  if (n % 2 == 1 || a.lo().sign() >= 0) {
    mpfr_pow_si(lo.get(), a.lo().get(), n, MPFR_RNDD);
    mpfr_pow_si(hi.get(), a.hi().get(), n, MPFR_RNDU);
  } else if (a.hi().sign() <= 0) {
    mpfr_pow_si(lo.get(), a.hi().get(), n, MPFR_RNDD);
    mpfr_pow_si(hi.get(), a.lo().get(), n, MPFR_RNDU);
  } else {
    Mpfr t(p);
    mpfr_pow_si(hi.get(), a.hi().get(), n, MPFR_RNDU);
    mpfr_pow_si(t.get(), a.lo().get(), n, MPFR_RNDU);
    if (compare(t, hi) > 0) hi = t;
  }
  return {std::move(lo), std::move(hi)};
}

Interval pow(const Interval& a, const Interval& b) { return exp(b * log(a)); }

Interval abs(const Interval& a) {
  if (a.lo().sign() >= 0) return a;
  if (a.hi().sign() <= 0) return -a;
  const mpfr_prec_t p = a.precision();
  Mpfr lo(p), hi(p);
  mpfr_neg(hi.get(), a.lo().get(), MPFR_RNDU);
  if (compare(a.hi(), hi) > 0) mpfr_set(hi.get(), a.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval hull(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = joint(a, b);
  Mpfr lo(p), hi(p);
  mpfr_set(lo.get(), min_of(a.lo(), b.lo()).get(), MPFR_RNDD);
  mpfr_set(hi.get(), max_of(a.hi(), b.hi()).get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval max(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = joint(a, b);
  Mpfr lo(p), hi(p);
  mpfr_set(lo.get(), max_of(a.lo(), b.lo()).get(), MPFR_RNDD);
  mpfr_set(hi.get(), max_of(a.hi(), b.hi()).get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

bool certainly_less(const Interval& a, const Interval& b) { return compare(a.hi(), b.lo()) < 0; }
bool certainly_less(const Interval& a, long b) { return mpfr_cmp_si(a.hi().get(), b) < 0; }
bool certainly_greater(const Interval& a, long b) { return mpfr_cmp_si(a.lo().get(), b) > 0; }

Interval dist_to_nearest_integer(const Interval& a) {
  const mpfr_prec_t p = a.precision();
  Mpfr n_lo(p), n_hi(p);
  mpfr_rint(n_lo.get(), a.lo().get(), MPFR_RNDN);
  mpfr_rint(n_hi.get(), a.hi().get(), MPFR_RNDN);
  if (compare(n_lo, n_hi) == 0) {
    Interval n(n_lo, n_lo);
    return abs(a - n);
  }
  // The enclosure straddles a half-integer.
  Mpfr half(p);
  mpfr_set_d(half.get(), 0.5, MPFR_RNDN);
  Mpfr c_lo(p), f_hi(p);
  mpfr_ceil(c_lo.get(), a.lo().get());
  mpfr_floor(f_hi.get(), a.hi().get());
  Mpfr lo(p);
  if (compare(c_lo, f_hi) > 0) {
    Interval d_lo = abs(Interval(a.lo(), a.lo()) - Interval(n_lo, n_lo));
    Interval d_hi = abs(Interval(a.hi(), a.hi()) - Interval(n_hi, n_hi));
    lo = min_of(d_lo.lo(), d_hi.lo());
  }
  return {std::move(lo), std::move(half)};
}

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re - b.re, a.im - b.im};
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  const Interval d = sqr(b.re) + sqr(b.im);
  if (d.contains_zero()) throw PrecisionError("complex division: divisor encloses zero");
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

ComplexInterval operator*(const ComplexInterval& a, long s) { return {a.re * s, a.im * s}; }
ComplexInterval operator+(const ComplexInterval& a, long s) { return {a.re + s, a.im}; }
ComplexInterval operator-(const ComplexInterval& a, long s) { return {a.re - s, a.im}; }

Interval abs_sq(const ComplexInterval& z) { return sqr(z.re) + sqr(z.im); }
Interval abs(const ComplexInterval& z) { return sqrt(abs_sq(z)); }

ComplexInterval pow(const ComplexInterval& z, unsigned long n) {
  ComplexInterval result(Interval::exact(1, z.precision()), Interval::exact(0, z.precision()));
  ComplexInterval base = z;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace kpell

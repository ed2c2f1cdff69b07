#pragma once

#include <mpfr.h>

#include <string>

#include "kpell/bigint.hpp"

namespace kpell {

// Owning wrapper around mpfr_t with value semantics.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = 128) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  // Exact value as a dyadic rational. Requires a finite number.
  BigRational to_rational() const;
  // Decimal rendering with `digits` significant digits.
  std::string to_string(int digits = 20, mpfr_rnd_t rnd = MPFR_RNDN) const;
  // Exact hexadecimal rendering ("%Ra"), round-trips through from_hex.
  std::string to_hex() const;
  static Mpfr from_hex(const std::string& s, mpfr_prec_t prec);

  int sign() const { return mpfr_sgn(v_); }

 private:
  mpfr_t v_;
};

inline int compare(const Mpfr& a, const Mpfr& b) { return mpfr_cmp(a.get(), b.get()); }

// Closed interval [lo, hi] with dyadic endpoints. Every operation rounds the
// lower endpoint down and the upper endpoint up, so the true value of any
// expression evaluated on enclosures lies in the resulting enclosure.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(Mpfr lo, Mpfr hi);

  static Interval exact(long v, mpfr_prec_t prec);
  static Interval exact(const BigInt& v, mpfr_prec_t prec);
  static Interval of(const BigRational& q, mpfr_prec_t prec);
  // Outward-rounded enclosure of a decimal literal such as "0.276" or "6.2e33".
  static Interval decimal(const std::string& literal, mpfr_prec_t prec);
  static Interval log2_const(mpfr_prec_t prec);

  mpfr_prec_t precision() const { return lo_.precision(); }
  const Mpfr& lo() const { return lo_; }
  const Mpfr& hi() const { return hi_; }

  double lo_double() const { return lo_.to_double(MPFR_RNDD); }
  double hi_double() const { return hi_.to_double(MPFR_RNDU); }
  double mid_double() const;

  Mpfr mid() const;
  Mpfr width() const;  // rounded up
  // log2 of the width, or -inf for a point interval.
  double log2_width() const;

  bool contains(const Interval& o) const;
  bool contains(long v) const;
  bool contains(const BigRational& q) const;
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }

  // Same enclosure stored at a different precision, rounded outward.
  Interval with_precision(mpfr_prec_t prec) const;

  std::string to_string(int digits = 20) const;

 private:
  Mpfr lo_;
  Mpfr hi_;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);  // PrecisionError if b contains 0
Interval operator-(const Interval& a);

Interval operator*(const Interval& a, long s);
Interval operator*(long s, const Interval& a);
Interval operator+(const Interval& a, long s);
Interval operator-(const Interval& a, long s);

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval log(const Interval& a);  // PrecisionError unless a > 0 certified
Interval log10(const Interval& a);
Interval exp(const Interval& a);
Interval pow(const Interval& a, long n);
Interval pow(const Interval& a, const Interval& b);  // a > 0
Interval abs(const Interval& a);
Interval hull(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);

// Certified comparisons: true only when the relation holds for every pair of
// points in the two enclosures.
bool certainly_less(const Interval& a, const Interval& b);
bool certainly_less(const Interval& a, long b);
bool certainly_greater(const Interval& a, long b);

// Distance from the enclosed value to the nearest integer.
Interval dist_to_nearest_integer(const Interval& a);

// Rectangular complex enclosure.
struct ComplexInterval {
  Interval re;
  Interval im;

  explicit ComplexInterval(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const { return re.precision(); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, long s);
ComplexInterval operator+(const ComplexInterval& a, long s);
ComplexInterval operator-(const ComplexInterval& a, long s);

Interval abs(const ComplexInterval& z);
Interval abs_sq(const ComplexInterval& z);
ComplexInterval pow(const ComplexInterval& z, unsigned long n);

}  // namespace kpell

#include "kpell/bigint.hpp"

#include <stdexcept>

namespace kpell {

BigInt binomial(long a, long b) {
  if (a < 0 || b < 0 || a < b) return 0;
  BigInt r = 1;
  // multiplicative formula, exact at every step
  const long kk = (b > a - b) ? a - b : b;
  for (long i = 1; i <= kk; ++i) {
    r *= (a - kk + i);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return r;
}

BigInt integer_root(const BigInt& value, unsigned long e, bool& exact) {
  if (value < 0) throw std::domain_error("integer_root: negative argument");
  if (e == 0) throw std::domain_error("integer_root: zero exponent");
  BigInt r;
  exact = mpz_root(r.get_mpz_t(), value.get_mpz_t(), e) != 0;
  return r;
}

}  // namespace kpell

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace kpell {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Binomial coefficient with the zero convention: C(a, b) = 0 whenever
// a < b or either argument is negative.
BigInt binomial(long a, long b);

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

inline std::size_t bit_length(const BigInt& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

// Floor of the exact e-th root; sets `exact` when root^e == value.
BigInt integer_root(const BigInt& value, unsigned long e, bool& exact);

}  // namespace kpell

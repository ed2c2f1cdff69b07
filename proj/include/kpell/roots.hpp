#pragma once

#include <vector>

#include "kpell/interval.hpp"
#include "kpell/polynomial.hpp"

namespace kpell {

// A certified simple root: the disc |z - center| <= radius contains exactly
// one root of the polynomial. `box` is the axis-aligned square around the
// disc, ready for interval arithmetic.
struct RootDisc {
  Mpfr center_re;
  Mpfr center_im;
  Mpfr radius;  // rounded up
  ComplexInterval box;
  Interval modulus;  // enclosure of |root|
};

// All roots of a squarefree integer polynomial with certified, pairwise
// disjoint inclusion discs (Weierstrass corrections, radius deg*|W_i|).
// Roots are found by Aberth iteration in extended precision and polished in
// MPFR at `prec` bits. Throws CertificationError if the discs overlap.
std::vector<RootDisc> certified_roots(const IntPoly& p, mpfr_prec_t prec);

// Isolate the unique real root of p inside (lo, hi) where p(lo) and p(hi)
// have opposite certified signs. Bisection then interval Newton until the
// enclosure width is at most 2^-target_bits (relative to magnitude 1).
Interval isolate_real_root(const IntPoly& p, const Interval& lo, const Interval& hi, mpfr_prec_t prec,
                           long target_bits);

}  // namespace kpell

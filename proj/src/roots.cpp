#include "kpell/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "kpell/errors.hpp"

namespace kpell {

namespace {

using LComplex = std::complex<long double>;

// Round-to-nearest complex number used only while polishing; certification
// is done separately with interval arithmetic.
struct MpComplex {
  Mpfr re;
  Mpfr im;
  explicit MpComplex(mpfr_prec_t p) : re(p), im(p) {}
};

void mp_mul(MpComplex& out, const MpComplex& a, const MpComplex& b, Mpfr& t1, Mpfr& t2) {
  // (a.re b.re - a.im b.im) + i (a.re b.im + a.im b.re)
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  Mpfr re(t1.precision());
  mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_swap(out.re.get(), re.get());
}

// Horner evaluation of p and p' at z.
void mp_eval(const std::vector<Mpfr>& coeffs, const MpComplex& z, MpComplex& val, MpComplex& der) {
  const mpfr_prec_t p = z.re.precision();
  Mpfr t1(p), t2(p);
  mpfr_set_zero(val.re.get(), 1);
  mpfr_set_zero(val.im.get(), 1);
  mpfr_set_zero(der.re.get(), 1);
  mpfr_set_zero(der.im.get(), 1);
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    mp_mul(der, der, z, t1, t2);
    mpfr_add(der.re.get(), der.re.get(), val.re.get(), MPFR_RNDN);
    mpfr_add(der.im.get(), der.im.get(), val.im.get(), MPFR_RNDN);
    mp_mul(val, val, z, t1, t2);
    mpfr_add(val.re.get(), val.re.get(), coeffs[i].get(), MPFR_RNDN);
  }
}

// z -= val / der; returns log2 of |correction| (or -inf).
double mp_newton_step(MpComplex& z, const MpComplex& val, const MpComplex& der) {
  const mpfr_prec_t p = z.re.precision();
  Mpfr den(p), t1(p), t2(p), cre(p), cim(p);
  mpfr_sqr(t1.get(), der.re.get(), MPFR_RNDN);
  mpfr_sqr(t2.get(), der.im.get(), MPFR_RNDN);
  mpfr_add(den.get(), t1.get(), t2.get(), MPFR_RNDN);
  if (mpfr_zero_p(den.get())) throw CertificationError("Newton polish hit a critical point");
  // val * conj(der) / |der|^2
  mpfr_mul(t1.get(), val.re.get(), der.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), val.im.get(), der.im.get(), MPFR_RNDN);
  mpfr_add(cre.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(cre.get(), cre.get(), den.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), val.im.get(), der.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), val.re.get(), der.im.get(), MPFR_RNDN);
  mpfr_sub(cim.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(cim.get(), cim.get(), den.get(), MPFR_RNDN);
  mpfr_sub(z.re.get(), z.re.get(), cre.get(), MPFR_RNDN);
  mpfr_sub(z.im.get(), z.im.get(), cim.get(), MPFR_RNDN);
  mpfr_hypot(t1.get(), cre.get(), cim.get(), MPFR_RNDN);
  if (mpfr_zero_p(t1.get())) return -INFINITY;
  mpfr_log2(t1.get(), t1.get(), MPFR_RNDN);
  return t1.to_double();
}

std::vector<LComplex> aberth(const std::vector<long double>& a) {
  const std::size_t n = a.size() - 1;
  long double radius = std::pow(std::fabs(a[0] / a[n]), 1.0L / static_cast<long double>(n));
  if (!(radius > 0.0L) || !std::isfinite(radius)) radius = 1.0L;
  radius = std::clamp(radius, 0.25L, 4.0L);
  std::vector<LComplex> z(n);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t j = 0; j < n; ++j) {
    z[j] = std::polar(radius, two_pi * static_cast<long double>(j) / static_cast<long double>(n) + 0.4L);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      LComplex val = a[n], der = 0.0L;
      for (std::size_t c = n; c-- > 0;) {
        der = der * z[i] + val;
        val = val * z[i] + a[c];
      }
      if (val == LComplex(0.0L)) continue;
      const LComplex ratio = val / der;
      LComplex s = 0.0L;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) s += 1.0L / (z[i] - z[j]);
      }
      const LComplex w = ratio / (1.0L - ratio * s);
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[i])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

Interval point(const Mpfr& v) { return Interval(v, v); }

}  // namespace

std::vector<RootDisc> certified_roots(const IntPoly& poly, mpfr_prec_t prec) {
  const int n = poly.degree();
  if (n < 1) throw DomainError("certified_roots: polynomial of degree < 1");
  std::vector<long double> a;
  std::vector<Mpfr> coeffs;
  for (const auto& c : poly.coeffs()) {
    a.push_back(static_cast<long double>(c.get_d()));
    Mpfr m(prec);
    mpfr_set_z(m.get(), c.get_mpz_t(), MPFR_RNDN);
    coeffs.push_back(std::move(m));
  }
  const std::vector<LComplex> approx = aberth(a);

  std::vector<MpComplex> z;
  z.reserve(approx.size());
  for (const auto& w : approx) {
    MpComplex m(prec);
    mpfr_set_ld(m.re.get(), w.real(), MPFR_RNDN);
    mpfr_set_ld(m.im.get(), w.imag(), MPFR_RNDN);
    z.push_back(std::move(m));
  }
  const double stop = -static_cast<double>(prec) + 12.0;
  for (auto& zi : z) {
    MpComplex val(prec), der(prec);
    for (int iter = 0; iter < 60; ++iter) {
      mp_eval(coeffs, zi, val, der);
      if (mpfr_zero_p(val.re.get()) && mpfr_zero_p(val.im.get())) break;
      if (mp_newton_step(zi, val, der) < stop) break;
    }
  }

  // Inclusion discs D(z_i, n |W_i|), W_i = p(z_i) / (a_n prod_{j != i} (z_i - z_j)).
  std::vector<ComplexInterval> boxes;
  boxes.reserve(z.size());
  for (const auto& zi : z) boxes.emplace_back(point(zi.re), point(zi.im));
  const Interval lead = Interval::exact(poly.leading(), prec);
  std::vector<Mpfr> radius;
  radius.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const ComplexInterval val = poly.eval(boxes[i]);
    ComplexInterval den(lead, Interval::exact(0, prec));
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j != i) den = den * (boxes[i] - boxes[j]);
    }
    const Interval den_abs = abs(den);
    if (den_abs.contains_zero()) throw CertificationError("coincident root approximations");
    const Interval w = abs(val) / den_abs * static_cast<long>(n);
    radius.push_back(w.hi());
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const Interval gap = abs(boxes[i] - boxes[j]);
      Mpfr reach(prec);
      mpfr_add(reach.get(), radius[i].get(), radius[j].get(), MPFR_RNDU);
      if (compare(gap.lo(), reach) <= 0) {
        throw CertificationError("root inclusion discs overlap at " + std::to_string(prec) + " bits");
      }
    }
  }

  std::vector<RootDisc> out;
  out.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const Interval r(radius[i], radius[i]);
    Interval re = point(z[i].re), im = point(z[i].im);
    const Interval pm = hull(-r, r);
    RootDisc d{z[i].re, z[i].im, radius[i], ComplexInterval(re + pm, im + pm), Interval(prec)};
    Interval centre_abs = abs(ComplexInterval(re, im));
    Interval mod_lo = centre_abs - r;
    Mpfr lo = mod_lo.lo();
    if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
    d.modulus = Interval(lo, (centre_abs + r).hi());
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end(), [](const RootDisc& x, const RootDisc& y) {
    const int c = compare(x.modulus.hi(), y.modulus.hi());
    if (c != 0) return c > 0;
    return compare(x.center_im, y.center_im) > 0;
  });
  return out;
}

namespace {

// Any point strictly between a and b will do, so rounding to prec is fine.
Mpfr midpoint(const Mpfr& a, const Mpfr& b, mpfr_prec_t prec) {
  Mpfr m(prec);
  mpfr_add(m.get(), a.get(), b.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

// -1, 0 (undecided) or +1.
int certified_sign(const IntPoly& p, const Mpfr& x, mpfr_prec_t prec) {
  const Interval v = p.eval(point(x).with_precision(prec));
  if (v.positive()) return 1;
  if (v.negative()) return -1;
  return 0;
}

}  // namespace

Interval isolate_real_root(const IntPoly& p, const Interval& lo, const Interval& hi, mpfr_prec_t prec,
                           long target_bits) {
  Mpfr a = lo.lo(), b = hi.hi();
  const int sa = certified_sign(p, a, prec);
  const int sb = certified_sign(p, b, prec);
  if (sa == 0 || sb == 0 || sa == sb) {
    throw CertificationError("isolate_real_root: no certified sign change on the bracket");
  }
  const IntPoly dp = p.derivative();
  Mpfr target(prec);
  mpfr_set_ui_2exp(target.get(), 1, -target_bits, MPFR_RNDN);
  for (int iter = 0; iter < 4 * static_cast<int>(prec) + 64; ++iter) {
    Interval x(a, b);
    x = x.with_precision(prec);
    const Mpfr w = x.width();
    if (compare(w, target) <= 0) return x;
    if (w.to_double() < 0x1p-10) {
      const Mpfr m = midpoint(a, b, prec);
      const Interval dx = dp.eval(x);
      if (!dx.contains_zero()) {
        const Interval newton = point(m).with_precision(prec) - p.eval(point(m).with_precision(prec)) / dx;
        const Mpfr& nlo = compare(newton.lo(), a) > 0 ? newton.lo() : a;
        const Mpfr& nhi = compare(newton.hi(), b) < 0 ? newton.hi() : b;
        if (compare(nlo, nhi) > 0) throw CertificationError("interval Newton: no root in enclosure");
        Mpfr nw(prec);
        mpfr_sub(nw.get(), nhi.get(), nlo.get(), MPFR_RNDU);
        mpfr_mul_2ui(nw.get(), nw.get(), 1, MPFR_RNDU);
        if (compare(nw, w) < 0) {
          Mpfr na = nlo, nb = nhi;
          a = std::move(na);
          b = std::move(nb);
          continue;
        }
      }
    }
    // bisection, nudging the split point if its sign is undecided
    Mpfr m = midpoint(a, b, prec);
    int sm = certified_sign(p, m, prec);
    if (sm == 0) {
      Mpfr q = midpoint(a, m, prec);
      sm = certified_sign(p, q, prec);
      if (sm == 0) return x;  // enclosure is at the evaluation noise floor
      m = std::move(q);
    }
    if (sm == sa) {
      a = std::move(m);
    } else {
      b = std::move(m);
    }
  }
  throw CertificationError("isolate_real_root: iteration limit reached");
}

}  // namespace kpell

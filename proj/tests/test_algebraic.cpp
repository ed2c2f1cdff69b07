#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "kpell/algebraic.hpp"
#include "kpell/errors.hpp"
#include "kpell/sequences.hpp"

using namespace kpell;

namespace {

Interval sqrt2(mpfr_prec_t p) { return sqrt(Interval::exact(2, p)); }

}  // namespace

TEST_CASE("k = 2 closed forms") {
  const auto ctx = cached_context(2);
  const mpfr_prec_t p = ctx->alpha.precision();
  const Interval alpha = Interval::exact(1, p) + sqrt2(p);
  CHECK(compare(ctx->alpha.lo(), alpha.hi()) <= 0);
  CHECK(compare(alpha.lo(), ctx->alpha.hi()) <= 0);
  const Interval g = sqrt2(p) / Interval::exact(4, p);
  CHECK(compare(ctx->g_alpha.lo(), g.hi()) <= 0);
  CHECK(compare(g.lo(), ctx->g_alpha.hi()) <= 0);
  CHECK(std::fabs(ctx->g_alpha.mid_double() - 0.353553390593273762) < 1e-15);
  CHECK(ctx->alpha.log2_width() <= -320);
  CHECK(ctx->alpha_in_bracket);
  CHECK(ctx->psi_straddles_zero);
  CHECK(ctx->vieta_consistent);
}

TEST_CASE("eval_g at 1 is zero") {
  const ComplexInterval one(Interval::exact(1, 128), Interval::exact(0, 128));
  const ComplexInterval z = eval_g(2, one);
  CHECK(z.re.contains(0));
  CHECK(z.im.contains(0));
}

TEST_CASE("contexts for 2 <= k <= 30") {
  for (int k = 2; k <= 30; ++k) {
    const auto ctx = cached_context(k);
    CAPTURE(k);
    CHECK(ctx->alpha_in_bracket);
    CHECK(ctx->conjugates_inside_unit_circle);
    CHECK(ctx->vieta_consistent);
    CHECK(static_cast<int>(ctx->roots.size()) == k);
    if (k >= 3) {
      CHECK(certainly_less(Interval::decimal("0.276", 128), ctx->g_alpha));
      CHECK(certainly_less(ctx->g_alpha, Interval::decimal("0.5", 128)));
    }
    CHECK(certainly_less(ctx->max_conjugate_g(), 1));
    // h(alpha) = (1/k) log alpha
    const Interval h = height_of_alpha(*ctx);
    const Interval want = ctx->log_alpha / Interval::exact(k, ctx->alpha.precision());
    CHECK(compare(h.lo(), want.hi()) <= 0);
    CHECK(compare(want.lo(), h.hi()) <= 0);
  }
}

TEST_CASE("Binet residual and growth sandwich") {
  for (int k = 2; k <= 12; ++k) {
    const auto ctx = cached_context(k, kDefaultBits, true);
    for (long n = 2 - k; n <= 120; ++n) CHECK(certainly_less(binet_residual(*ctx, n), Interval::decimal("0.5", 64)));
    for (long n = 1; n <= 200; ++n) {
      const auto g = growth_sandwich(*ctx, n);
      CHECK(g.lower_ok);
      CHECK(g.upper_ok);
    }
    for (long n : {0L, 5L, 40L}) {
      const ComplexInterval s = binet_sum(*ctx, n);
      CHECK(s.re.contains(BigRational(term(SequenceSpec::pell(k), n))));
      CHECK(s.im.contains(0));
    }
  }
}

TEST_CASE("precision monotonicity") {
  for (int k : {3, 7}) {
    const auto lo = build_context(k, 160, false);
    const auto hi = build_context(k, 640, false);
    CHECK(compare(lo.alpha.lo(), hi.alpha.lo()) <= 0);
    CHECK(compare(hi.alpha.hi(), lo.alpha.hi()) <= 0);
    CHECK(compare(lo.tau.lo(), hi.tau.lo()) <= 0);
    CHECK(compare(hi.tau.hi(), lo.tau.hi()) <= 0);
  }
}

TEST_CASE("height certificate for k = 2 matches the closed form") {
  const auto cert = minpoly_via_resultant(2);
  CHECK(cert.minpoly == IntPoly{-1, 0, 8});
  CHECK(cert.degree == 2);
  CHECK(std::fabs(cert.height.mid_double() - 0.5 * std::log(8.0)) < 1e-12);
  REQUIRE(cert.height_from_minpoly_roots.has_value());
  CHECK(std::fabs(cert.height_from_minpoly_roots->mid_double() - 0.5 * std::log(8.0)) < 1e-12);
}

TEST_CASE("height certificates for 3 <= k <= 8") {
  for (int k = 3; k <= 8; ++k) {
    const auto cert = minpoly_via_resultant(k);
    CAPTURE(k);
    CHECK(cert.minpoly_at_subject.contains_zero());
    CHECK(cert.irreducible_by_degree);
    CHECK(cert.below_bound);
    if (cert.height_from_minpoly_roots) {
      CHECK(std::fabs(cert.height_from_minpoly_roots->mid_double() - cert.height.mid_double()) < 1e-9);
    }
  }
}

TEST_CASE("rational heights and rules") {
  CHECK(std::fabs(height_rational(BigInt(2), BigInt(1)).mid_double() - std::log(2.0)) < 1e-15);
  CHECK(std::fabs(height_rational(BigInt(3), BigInt(2)).mid_double() - std::log(3.0)) < 1e-15);
  CHECK(std::fabs(height_rational(BigInt(6), BigInt(4)).mid_double() - std::log(3.0)) < 1e-15);
  CHECK(std::fabs(height_rational(BigRational(81, 16)).mid_double() - 4 * std::log(3.0)) < 1e-14);
  CHECK_THROWS_AS(height_rational(BigInt(1), BigInt(0)), DomainError);
  for (long p = -6; p <= 6; ++p)
    for (long q = 1; q <= 6; ++q)
      for (long s : {-3L, 0L, 2L}) {
        if (p == 0 && s < 0) continue;
        CHECK(check_height_rules(BigRational(p, q), BigRational(q + 1, 3 - 0 * p), s).all());
      }
}

TEST_CASE("context records round-trip through disk") {
  const auto dir = std::filesystem::temp_directory_path() / "kpell_ctx_test";
  std::filesystem::remove_all(dir);
  const auto ctx = build_context(5, 256, false);
  save_context_record(dir, ctx);
  const auto back = load_context_record(dir, 5, 256);
  REQUIRE(back.has_value());
  CHECK(compare(back->alpha.lo(), ctx.alpha.lo()) == 0);
  CHECK(compare(back->tau.hi(), ctx.tau.hi()) == 0);
  CHECK_FALSE(load_context_record(dir, 6, 256).has_value());
  std::filesystem::remove_all(dir);
}

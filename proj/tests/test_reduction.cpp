#include <doctest.h>

#include <cmath>
#include <random>

#include "kpell/algebraic.hpp"
#include "kpell/errors.hpp"
#include "kpell/reduction.hpp"
#include "oracles.hpp"

using namespace kpell;

namespace {

struct ScanMin {
  long u = 0;
  long double norm = 1;
};

ScanMin exhaustive(long double x, long M) {
  ScanMin best;
  for (long u = 1; u <= M; ++u) {
    const long double d = oracle::frac_dist(static_cast<long double>(u) * x);
    if (d < best.norm) {
      best.norm = d;
      best.u = u;
    }
  }
  return best;
}

BigRational from_quotients(const std::vector<long>& a) {
  BigRational v = a.back();
  for (std::size_t i = a.size() - 1; i-- > 0;) v = BigRational(a[i]) + 1 / v;
  v.canonicalize();
  return v;
}

}  // namespace

TEST_CASE("golden ratio and sqrt 2") {
  const auto cf = expand_cf(golden_ratio(256), BigInt(100));
  for (const auto& a : cf.quotients) CHECK(a == 1);
  CHECK(cf.q.back() == 144);
  CHECK(cf.q[cf.q.size() - 2] == 89);

  const auto s2 = expand_cf(sqrt(Interval::exact(2, 256)), BigInt(50));
  CHECK(s2.quotients[0] == 1);
  for (std::size_t i = 1; i < s2.quotients.size(); ++i) CHECK(s2.quotients[i] == 2);
  const std::vector<long> want_q = {1, 2, 5, 12, 29, 70};
  REQUIRE(s2.q.size() == want_q.size());
  for (std::size_t i = 0; i < want_q.size(); ++i) CHECK(s2.q[i] == want_q[i]);
}

TEST_CASE("tau_2 closed form") {
  const mpfr_prec_t p = 400;
  const Interval closed = Interval::decimal("1.5", p) * Interval::log2_const(p) /
                          log(Interval::exact(1, p) + sqrt(Interval::exact(2, p)));
  const auto ctx = build_context(2, 320, false);
  const Interval t = abs(ctx.tau);
  CHECK(compare(t.lo(), closed.hi()) <= 0);
  CHECK(compare(closed.lo(), t.hi()) <= 0);
  const auto a = expand_cf(closed, BigInt(1000000));
  const auto b = expand_cf(t, BigInt(1000000));
  CHECK(a.quotients[0] == 1);
  const std::size_t n = std::min(a.quotients.size(), b.quotients.size());
  for (std::size_t i = 0; i < n; ++i) CHECK(a.quotients[i] == b.quotients[i]);
}

TEST_CASE("convergent identities, monotone q and reconstruction") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    long d = static_cast<long>(2 + rng() % 1000);
    const long r = static_cast<long>(std::sqrt(static_cast<double>(d)));
    if (r * r == d) ++d;  // keep it irrational
    const Interval x = sqrt(Interval::exact(d, 512)) +
                       Interval::exact(static_cast<long>(rng() % 7), 512);
    const auto cf = expand_cf(x, pow10(40));
    for (int j = 1; j <= cf.certified_to(); ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const BigInt det = cf.p[ju] * cf.q[ju - 1] - cf.p[ju - 1] * cf.q[ju];
      CHECK(det == ((j - 1) % 2 == 0 ? 1 : -1));
      if (j >= 2) CHECK(cf.q[ju] > cf.q[ju - 1]);
    }
    // the enclosure lies between the last two convergents
    const int J = cf.certified_to();
    const BigRational a(cf.p[J - 1], cf.q[J - 1]), b(cf.p[J], cf.q[J]);
    const BigRational lo = a < b ? a : b, hi = a < b ? b : a;
    CHECK(x.lo().to_rational() >= lo);
    CHECK(x.hi().to_rational() <= hi);
  }
}

TEST_CASE("insufficient precision carries the depth") {
  const Interval x = sqrt(Interval::exact(3, 64));
  try {
    expand_cf(x, pow10(60));
    FAIL("expected InsufficientPrecision");
  } catch (const InsufficientPrecision& e) {
    CHECK(e.achieved_depth() > 5);
  }
  const EnclosureSource src = [](long bits) { return sqrt(Interval::exact(3, bits)); };
  CHECK_THROWS_AS(expand_cf(src, pow10(400), 64, 512), InsufficientPrecision);
  CHECK(expand_cf(src, pow10(60), 64, 4096).q.back() > pow10(60));
}

TEST_CASE("best approximation equals the exhaustive minimum") {
  CHECK(best_approx_min(expand_cf(golden_ratio(256), BigInt(10)), BigInt(10)).u == 8);
  CHECK(std::fabs(best_approx_min(expand_cf(golden_ratio(256), BigInt(10)), BigInt(10)).norm.mid_double() - 0.0557) < 1e-3);
  const auto s2 = best_approx_min(expand_cf(sqrt(Interval::exact(2, 256)), BigInt(30)), BigInt(30));
  CHECK(s2.u == 29);
  CHECK(std::fabs(s2.norm.mid_double() - 0.0122) < 1e-3);
  const Interval x = sqrt(Interval::exact(7, 256));
  CHECK(best_approx_min(expand_cf(x, BigInt(1)), BigInt(1)).norm.contains(dist_to_nearest_integer(x)));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<long double> u(0.0L, 10.0L);
  for (int trial = 0; trial < 20; ++trial) {
    const long double v = u(rng);
    const Interval x = Interval::of(BigRational(static_cast<double>(v)), 256);
    const long double xv = static_cast<long double>(static_cast<double>(v));
    for (long M : {1000L, 10000L, 100000L}) {
      const auto cf = expand_cf(x, BigInt(M));
      const auto best = best_approx_min(cf, BigInt(M));
      const auto scan = exhaustive(xv, M);
      CHECK(best.u == scan.u);
      CHECK(std::fabs(static_cast<double>(best.norm.mid_double() - scan.norm)) < 1e-12);
    }
  }
}

TEST_CASE("homogeneous reduction on a synthetic tau") {
  std::vector<long> a;
  for (long i = 0; i <= 30; ++i) a.push_back(i == 0 ? 0 : i);
  const BigRational x = from_quotients(a);
  const EnclosureSource src = [&](long bits) { return Interval::of(x, bits); };
  const BigInt M = 1000000;
  const auto cf = expand_cf(src(400), M);
  for (std::size_t i = 0; i < cf.quotients.size(); ++i) CHECK(cf.quotients[i] == a[i]);
  const auto out = reduce_homogeneous(src, M, 5);
  // by hand: largest q_j <= M and its exact distance
  const int j = cf.last_index_at_most(M);
  BigRational L = BigRational(cf.q[j]) * x - BigRational(cf.p[j]);
  if (L < 0) L = -L;
  const double want = std::floor(5 + std::log2(1.0 / L.get_d()));
  CHECK(out.q_used == cf.q[j]);
  CHECK(out.new_n_bound == static_cast<long>(want));
}

TEST_CASE("M = 1 uses ||tau|| alone") {
  const auto ctx = build_context(4, 320, false);
  const auto out = reduce_homogeneous(4, BigInt(1), 5);
  const double norm = oracle::frac_dist(std::fabs(static_cast<long double>(ctx.tau.mid_double())));
  CHECK(out.q_used == 1);
  CHECK(out.new_n_bound == static_cast<long>(std::floor(5 + std::log2(1.0 / norm))));
}

TEST_CASE("Dujella-Petho step with the quoted numbers") {
  const mpfr_prec_t p = 256;
  const auto s = dujella_petho_step(Interval::exact(pow10(64), p), Interval::exact(pow10(63), p),
                                    Interval::decimal("5e-65", p), Interval::decimal("0.5", p), 5);
  REQUIRE(s.ok);
  CHECK(std::fabs(s.epsilon.mid_double() - 0.45) < 1e-12);
  CHECK(std::fabs(s.log2_q_over_eps.mid_double() - 213.753) < 1e-2);
  CHECK(std::fabs(s.real_bound.mid_double() - 218.753) < 1e-2);
  CHECK(s.new_n_bound == 218);
  const auto bad = dujella_petho_step(Interval::exact(pow10(64), p), Interval::exact(pow10(63), p),
                                      Interval::decimal("5e-65", p), Interval::exact(0, p), 5);
  CHECK_FALSE(bad.ok);
}

TEST_CASE("real reductions for small k") {
  const BigInt M = pow10(63);
  for (int k : {2, 3, 5}) {
    CAPTURE(k);
    const auto h = reduce_homogeneous(k, M, 5);
    CHECK(h.ok);
    CHECK(h.q_used <= M);
    CHECK(h.new_n_bound <= 500);
    CHECK(h.new_n_bound >= 200);
    const auto dp = reduce_dujella_petho(k, M, MuChoice{}, 5);
    CHECK(dp.ok);
    CHECK(dp.q_used > 6 * M);
    const auto lit = reduce_dujella_petho(k, M, MuChoice{MuChoice::Kind::Literal, Interval(64)}, 5);
    CHECK_FALSE(lit.ok);
    CHECK(lit.note.find("reduction failed") != std::string::npos);
    // determinism
    const auto again = reduce_homogeneous(k, M, 5);
    CHECK(again.q_used == h.q_used);
    CHECK(again.new_n_bound == h.new_n_bound);
  }
}

TEST_CASE("reduction soundness at desk scale") {
  // every |u tau + mu| with 1 <= u <= M is at least the certified L
  const auto ctx = build_context(3, 320, false);
  const long M = 20000;
  const auto out = reduce_homogeneous(3, BigInt(M), 5);
  const long double tau = static_cast<long double>(ctx.tau.mid_double());
  const long double L = static_cast<long double>(out.small_norm.lo_double());
  for (long u = 1; u <= M; ++u) {
    const long double t = u * tau;
    const long double best = std::fabs(t - std::nearbyint(t));
    CHECK(best >= L * (1 - 1e-9L));
  }
}

TEST_CASE("sweep records every k") {
  const auto sw = reduce_all_k(2, 8, pow10(63), 5, 2);
  CHECK(sw.rows.size() == 7);
  CHECK(sw.failures == 0);
  CHECK(sw.max_bound <= 500);
  for (std::size_t i = 0; i < sw.rows.size(); ++i) CHECK(sw.rows[i].k == static_cast<int>(i) + 2);
}

TEST_CASE("parse_big") {
  CHECK(parse_big("1e63") == pow10(63));
  CHECK(parse_big("6.5e2") == 650);
  CHECK(parse_big("10^4") == 10000);
  CHECK(parse_big("123") == 123);
  CHECK_THROWS_AS(parse_big("1.5"), DomainError);
}

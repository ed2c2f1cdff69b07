#include <doctest.h>

#include <cmath>
#include <random>

#include "kpell/bounds.hpp"
#include "kpell/errors.hpp"

using namespace kpell;

namespace {

Interval iv(double v) { return Interval::of(BigRational(v), 128); }

const ConstantRow& find_row(const std::vector<ConstantRow>& rows, const std::string& id) {
  for (const auto& r : rows)
    if (r.id == id) return r;
  throw std::runtime_error("missing row " + id);
}

// Largest integer y in [2, limit] with y / (log y)^s < T, by direct scan.
long scan_max_y(long s, double T, long limit) {
  long best = 0;
  for (long y = 2; y <= limit; ++y) {
    const double ly = std::log(static_cast<double>(y));
    if (static_cast<double>(y) / std::pow(ly, static_cast<double>(s)) < T) best = y;
  }
  return best;
}

}  // namespace

TEST_CASE("Matveev constants") {
  const double c2 = matveev_constant(2).mid_double();
  CHECK(std::fabs(c2 / 7.70e8 - 1) < 0.005);
  CHECK(std::fabs(c2 - 1.4 * std::pow(30.0, 5) * std::pow(2.0, 4.5)) < 1e-3);

  MatveevInstance one{1, 1, iv(1), {Interval::decimal("0.16", 128)}};
  const double v = matveev_lower_bound(one).mid_double();
  CHECK(std::fabs(v - (-1.4 * std::pow(30.0, 4) * 0.16)) < 1e-6);

  MatveevInstance bad{1, 1, iv(1), {iv(0.1)}};
  CHECK_THROWS_AS(matveev_lower_bound(bad), PreconditionError);
  MatveevInstance bad_t{2, 1, iv(1), {iv(1)}};
  CHECK_THROWS_AS(matveev_lower_bound(bad_t), PreconditionError);
}

TEST_CASE("Matveev bound is monotone in its parameters") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.2, 50);
  for (int trial = 0; trial < 100; ++trial) {
    const long t = 1 + trial % 3;
    MatveevInstance a;
    a.t = t;
    a.D = 1 + trial % 7;
    a.B = iv(1 + u(rng) * 100);
    for (long i = 0; i < t; ++i) a.A.push_back(iv(u(rng)));
    const double base = matveev_lower_bound(a).mid_double();
    MatveevInstance b = a;
    b.B = a.B * 3L;
    CHECK(matveev_lower_bound(b).mid_double() <= base);
    MatveevInstance d = a;
    d.D += 1;
    CHECK(matveev_lower_bound(d).mid_double() <= base);
    MatveevInstance e = a;
    e.A[0] = e.A[0] * 2L;
    CHECK(matveev_lower_bound(e).mid_double() <= base);
  }
}

TEST_CASE("Guzman-Luca examples and scan oracle") {
  CHECK(std::fabs(guzman_luca(1, 100.0).mid_double() - 200 * std::log(100.0)) < 1e-9);
  CHECK(std::fabs(guzman_luca(1, 17.0).mid_double() - 34 * std::log(17.0)) < 1e-9);
  CHECK(scan_max_y(1, 100, 5000) < 921);
  CHECK(scan_max_y(1, 17, 200) < 96.3);
  const double t6 = 1e6;
  CHECK(std::fabs(guzman_luca(2, t6).mid_double() / (4 * t6 * std::pow(std::log(t6), 2)) - 1) < 1e-12);
  CHECK_THROWS_AS(guzman_luca(1, 4.0), PreconditionError);
  CHECK_THROWS_AS(guzman_luca(2, 256.0), PreconditionError);
}

TEST_CASE("Guzman-Luca implication holds on random valid T") {
  std::mt19937_64 rng(2);
  for (long s : {1L, 2L}) {
    const double lo = std::pow(4.0 * s * s, static_cast<double>(s));
    std::uniform_real_distribution<double> u(std::log(lo) + 1e-9, std::log(lo * 300));
    for (int i = 0; i < 25; ++i) {
      const double T = std::exp(u(rng));
      const double bound = guzman_luca(s, T).hi_double();
      const long limit = static_cast<long>(std::min(1e6, bound));
      // no y beyond the bound may satisfy y / (log y)^s < T
      const long ymax = scan_max_y(s, T, std::min<long>(1000000, limit + 1000));
      CHECK(static_cast<double>(ymax) < bound);
    }
  }
}

TEST_CASE("fixed point helper stabilises") {
  // y -> 2 T log y style iteration converges
  const auto step = [](const Interval& y) { return log(y) * 100L; };
  const auto fp = iterate_to_fixed_point(step, iv(1000));
  CHECK(fp.converged);
  CHECK(std::fabs(fp.value.mid_double() - 100 * std::log(fp.value.mid_double())) < 0.02 * fp.value.mid_double());
}

TEST_CASE("bound1 constant table") {
  const auto rows = bound1_constant_table();
  CHECK(find_row(rows, "pow30").consistent);
  CHECK(find_row(rows, "pow2_4.5").consistent);
  CHECK(find_row(rows, "matveev_t2").consistent);
  CHECK(find_row(rows, "times_4").consistent);
  CHECK(find_row(rows, "times_log_alpha").consistent);
  CHECK(find_row(rows, "doubling").consistent);
  CHECK(find_row(rows, "r_const").consistent);
  CHECK(find_row(rows, "lambda_const").consistent);
  CHECK_FALSE(find_row(rows, "C1").consistent);
  CHECK(std::fabs(find_row(rows, "C1").recomputed.mid_double() - 5 * (5.66e9 + 0.2) / std::log(2.0)) < 1e8);
  CHECK(find_row(rows, "case1_m").consistent);
  CHECK(find_row(rows, "case1_n").consistent);
  CHECK(find_row(rows, "case2").relation == "conclusion-only");
  const auto& f = find_row(rows, "final_k850");
  CHECK_FALSE(f.consistent);
  const double direct = 6.2e33 * std::pow(850.0, 8) * std::pow(std::log(850.0), 6);
  CHECK(std::fabs(f.recomputed.mid_double() / direct - 1) < 1e-12);
  CHECK(f.rel_deviation > 50);
  CHECK(f.rel_deviation < 60);
}

TEST_CASE("bound1 per k") {
  const auto r3 = bound1(3);
  CHECK(std::fabs(r3.case1_m_bound.mid_double() / (5.3e14 * 27 * std::pow(std::log(3.0), 3)) - 1) < 1e-12);
  for (int k = 3; k <= 60; ++k) {
    const auto r = bound1(k);
    CHECK(r.case2_dominates);
    CHECK(compare(r.final_n_bound.lo(), r.case2_n_bound.lo()) == 0);
  }
  CHECK_THROWS_AS(bound1(2), PreconditionError);
}

TEST_CASE("linear form residual") {
  const auto ctx = cached_context(2);
  const auto z = linear_form_residual(*ctx, 4, 2, 2, 4);
  CHECK(z.u == 2);
  CHECK(z.mu == 0);
  const auto r = linear_form_residual(*ctx, 3, 2, 1, 2);
  const double lg = std::log(std::sqrt(2.0) / 4), la = std::log(1 + std::sqrt(2.0));
  CHECK(std::fabs(r.abs_form.mid_double() - std::fabs(-lg - la)) < 1e-14);
  CHECK(std::fabs(r.abs_form_over_log.mid_double() - std::fabs(-lg - la) / la) < 1e-14);
  // independent evaluation at doubled precision
  const auto hi = build_context(2, 640, false);
  const auto r2 = linear_form_residual(hi, 3, 2, 1, 2);
  CHECK(compare(r.abs_form.lo(), r2.abs_form.hi()) <= 0);
  CHECK(compare(r2.abs_form.lo(), r.abs_form.hi()) <= 0);
  CHECK_THROWS_AS(linear_form_residual(*ctx, 2, 3, 1, 1), PreconditionError);
}

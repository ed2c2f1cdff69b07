// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "kpell/algebraic.hpp"
#include "kpell/audit.hpp"
#include "kpell/bounds.hpp"
#include "kpell/dependence.hpp"
#include "kpell/reduction.hpp"
#include "kpell/sequences.hpp"
#include "oracles.hpp"

using namespace kpell;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome kilic() {
  long checked = 0;
  for (int k = 2; k <= 30; ++k)
    for (long n = 1; n <= k + 1; ++n) {
      ++checked;
      if (!check_kilic_segment(k, n).pass)
        return {false, "k=" + std::to_string(k) + " n=" + std::to_string(n)};
    }
  return {true, std::to_string(checked) + " (k, n) pairs"};
}

Outcome binet_error() {
  double worst = 0;
  for (int k = 2; k <= 20; ++k) {
    const auto ctx = cached_context(k, 320, false);
    const Interval half = Interval::decimal("0.5", ctx->alpha.precision());
    for (long n = 2 - k; n <= 200; ++n) {
      const Interval e = binet_residual(*ctx, n);
      if (!certainly_less(e, half)) return {false, "k=" + std::to_string(k) + " n=" + std::to_string(n)};
      worst = std::max(worst, e.hi_double());
    }
  }
  return {true, "max residual " + std::to_string(worst)};
}

Outcome g_bounds() {
  double gmin = 1, gmax = 0, conj = 0;
  for (int k = 3; k <= 30; ++k) {
    const auto ctx = cached_context(k, 320, true);
    const mpfr_prec_t p = ctx->g_alpha.precision();
    if (!certainly_less(Interval::decimal("0.276", p), ctx->g_alpha) ||
        !certainly_less(ctx->g_alpha, Interval::decimal("0.5", p)))
      return {false, "g out of range at k=" + std::to_string(k)};
    const Interval c = ctx->max_conjugate_g();
    if (!certainly_less(c, 1L)) return {false, "conjugate g at k=" + std::to_string(k)};
    gmin = std::min(gmin, ctx->g_alpha.lo_double());
    gmax = std::max(gmax, ctx->g_alpha.hi_double());
    conj = std::max(conj, c.hi_double());
  }
  return {true, "g in [" + std::to_string(gmin) + ", " + std::to_string(gmax) + "], max conjugate |g| " +
                    std::to_string(conj)};
}

Outcome height() {
  const auto two = minpoly_via_resultant(2);
  if (!(two.minpoly == IntPoly{-1, 0, 8})) return {false, "k=2 minimal polynomial is not 8y^2 - 1"};
  const double h_oracle = 0.5 * std::log(8.0);  // h(sqrt(2)/4) = (1/2) log 8
  if (std::fabs(two.height.mid_double() - h_oracle) > 1e-6) return {false, "k=2 height"};
  for (int k = 3; k <= 12; ++k) {
    const auto c = minpoly_via_resultant(k);
    if (!c.below_bound) return {false, "h >= 4 log k at k=" + std::to_string(k)};
  }
  return {true, "h(g_2) = " + two.height.to_string(10) + ", k=3..12 below 4 log k"};
}

Outcome matveev() {
  const Interval c = matveev_constant(2);
  const double dev = c.mid_double() / 7.70e8 - 1;
  if (std::fabs(dev) > 0.005) return {false, "deviation " + std::to_string(dev)};
  std::cout << "    constant table:\n";
  bool saw_final = false;
  for (const auto& r : bound1_constant_table()) {
    std::cout << "      " << r.id << ": printed " << r.printed << ", recomputed " << r.recomputed.to_string(6)
              << ", rel deviation " << r.rel_deviation << ", " << r.relation << ", "
              << (r.relation == "conclusion-only" ? "conclusion-only" : r.consistent ? "consistent" : "INCONSISTENT")
              << "\n";
    if (r.id == "final_k850") saw_final = r.rel_deviation > 50;
  }
  if (!saw_final) return {false, "the 9.3e63 discrepancy was not reported"};
  return {true, "1.4*30^5*2^4.5 = " + c.to_string(6) + " (" + std::to_string(100 * dev) + "%)"};
}

Outcome reduction(const std::string& golden_dir) {
  const mpfr_prec_t p = 256;
  const auto step = dujella_petho_step(Interval::exact(pow10(64), p), Interval::exact(pow10(63), p),
                                       Interval::decimal("5e-65", p), Interval::decimal("0.5", p), 5);
  if (!step.ok || std::fabs(step.epsilon.mid_double() - 0.45) > 1e-3) return {false, "epsilon"};
  if (std::fabs(step.real_bound.mid_double() - 218.753) > 1e-2) return {false, "bound " + step.real_bound.to_string(8)};

  const auto sweep = reduce_all_k(2, 100, pow10(63), 5);
  json bounds = json::object();
  for (const auto& row : sweep.rows) {
    if (!row.error.empty() || !row.homogeneous.ok) return {false, "k=" + std::to_string(row.k) + " " + row.error};
    if (row.homogeneous.new_n_bound > 500) return {false, "bound above 500 at k=" + std::to_string(row.k)};
    bounds[std::to_string(row.k)] = {{"n_bound", row.homogeneous.new_n_bound},
                                     {"q", to_decimal(row.homogeneous.q_used)}};
  }
  const json current = {{"M", "1e63"}, {"offset", 5}, {"homogeneous", bounds}};
  const auto path = std::filesystem::path(golden_dir) / "reduction_sweep_k2_100.json";
  std::string golden_note;
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    const json golden = json::parse(in);
    if (golden != current) return {false, "differs from golden fixture " + path.string()};
    golden_note = "matches golden fixture";
  } else {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream(path) << current.dump(2) << "\n";
    golden_note = "golden fixture recorded";
  }
  return {true, "eps " + step.epsilon.to_string(6) + ", bound " + step.real_bound.to_string(8) +
                    "; sweep k=2..100 max bound " + std::to_string(sweep.max_bound) + ", " + golden_note};
}

Outcome best_approx() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> d(2, 100000);
  int cases = 0;
  for (int trial = 0; trial < 20; ++trial) {
    long s = d(rng);
    while (true) {
      bool exact = false;
      integer_root(BigInt(s), 2, exact);
      if (!exact) break;
      ++s;
    }
    const Interval x = sqrt(Interval::exact(s, 256));
    const long double xv = std::sqrt(static_cast<long double>(s));
    for (long M : {1000L, 10000L, 100000L}) {
      const auto best = best_approx_min(expand_cf(x, BigInt(M)), BigInt(M));
      long arg = 0;
      long double lo = 1;
      for (long u = 1; u <= M; ++u) {
        const long double v = oracle::frac_dist(static_cast<long double>(u) * xv);
        if (v < lo) {
          lo = v;
          arg = u;
        }
      }
      ++cases;
      if (best.u != arg) return {false, "sqrt(" + std::to_string(s) + "), M=" + std::to_string(M)};
    }
  }
  return {true, std::to_string(cases) + " (real, M) cases, exact argmin match"};
}

Outcome search_box() {
  SearchBox box;
  box.k_min = 2;
  box.k_max = 50;
  box.n_max = 120;
  box.definitions = {Definition::Strict};
  box.oracle_below = pow10(25);
  const auto s = search(box, [](const SearchRecord&) {});
  if (s.dependent_both_at_least_2 != 0) return {false, std::to_string(s.dependent_both_at_least_2) + " dependent pairs"};
  if (s.oracle_disagreements != 0) return {false, std::to_string(s.oracle_disagreements) + " oracle disagreements"};
  return {true, std::to_string(s.pairs) + " pairs, " + std::to_string(s.oracle_checked) + " oracle-checked, " +
                    std::to_string(s.oracle_unavailable) + " oracle-unavailable"};
}

Outcome asymptotic() {
  const auto e = eval_Mk(850);
  if (e.log10_value.lo_double() < -6.3 || e.log10_value.hi_double() > -6.0) return {false, "log10 M(850)"};
  for (int k = 850; k <= 2000; k += 10)
    if (!eval_Mk(k).below_one) return {false, "M(k) >= 1 at k=" + std::to_string(k)};
  return {true, "log10 M(850) = " + e.log10_value.to_string(6)};
}

Outcome guzman_luca_property() {
  std::mt19937_64 rng(99);
  long scanned = 0;
  for (long s : {1L, 2L}) {
    const double floor_T = std::pow(4.0 * s * s, static_cast<double>(s));
    std::uniform_real_distribution<double> t(floor_T * 1.0001, floor_T * 20);
    for (int i = 0; i < 50; ++i) {
      const double T = t(rng);
      const double bound = guzman_luca(s, T).lo_double();
      const long top = static_cast<long>(2 * bound);
      for (long y = 3; y <= top; ++y) {
        const double yy = static_cast<double>(y);
        if (yy / std::pow(std::log(yy), static_cast<double>(s)) < T && yy >= bound)
          return {false, "s=" + std::to_string(s) + " T=" + std::to_string(T) + " y=" + std::to_string(y)};
      }
      scanned += top - 2;
    }
  }
  return {true, std::to_string(scanned) + " values of y scanned"};
}

Outcome audit_completeness() {
  const auto report = run_audit(AuditConfig{});
  std::set<std::string> seen;
  for (const auto& r : report.records) seen.insert(r.claim_id);
  for (const auto& e : claim_manifest())
    if (!seen.count(e.claim_id)) return {false, "no record for " + e.claim_id};
  return {true, std::to_string(report.records.size()) + " records: " + std::to_string(report.count(ClaimStatus::Pass)) +
                    " pass, " + std::to_string(report.count(ClaimStatus::Fail)) + " fail, " +
                    std::to_string(report.count(ClaimStatus::ConclusionOnly)) + " conclusion-only, " +
                    std::to_string(report.count(ClaimStatus::NotEvaluable)) + " not-evaluable"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string golden_dir = argc > 1 ? argv[1] : "golden";
  struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "odd-index Fibonacci segment", 1, kilic},
      {2, "Binet error below 1/2", 30, binet_error},
      {3, "g and conjugate bounds", 60, g_bounds},
      {4, "height certificates", 60, height},
      {5, "Matveev constants and constant table", 60, matveev},
      {6, "reduction reproduction and sweep", 600, [&] { return reduction(golden_dir); }},
      {7, "best approximation oracle", 60, best_approx},
      {8, "dependence search box", 300, search_box},
      {9, "M(k) threshold", 60, asymptotic},
      {10, "Guzman-Luca property", 60, guzman_luca_property},
      {11, "audit completeness", 600, audit_completeness},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > c.budget_s) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget";
    }
    if (!o.pass) ++failed;
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << " (" << t << "): " << o.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

#include "kpell/bounds.hpp"

#include <cmath>

#include "kpell/errors.hpp"

namespace kpell {

namespace {

constexpr mpfr_prec_t kPrec = 192;

Interval dec(const char* s) { return Interval::decimal(s, kPrec); }
Interval num(long v) { return Interval::exact(v, kPrec); }

// Half a unit in the last printed digit of a decimal literal such as
// "7.70e8" or "22.6274".
Interval half_ulp(const std::string& printed) {
  const auto e_pos = printed.find_first_of("eE");
  const std::string mant = printed.substr(0, e_pos);
  long exponent = e_pos == std::string::npos ? 0 : std::stol(printed.substr(e_pos + 1));
  const auto dot = mant.find('.');
  if (dot != std::string::npos) exponent -= static_cast<long>(mant.size() - dot - 1);
  return pow(num(10), exponent) / num(2);
}

double rel_dev(const Interval& printed, const Interval& recomputed) {
  return printed.mid_double() / recomputed.mid_double() - 1.0;
}

ConstantRow row(std::string id, std::string description, const char* printed, Interval recomputed, Interval chained,
                std::string relation, std::string note = {}) {
  ConstantRow r;
  r.id = std::move(id);
  r.description = std::move(description);
  r.printed = printed;
  r.printed_value = dec(printed);
  r.recomputed = std::move(recomputed);
  r.chained = std::move(chained);
  r.relation = std::move(relation);
  r.note = std::move(note);
  r.rel_deviation = rel_dev(r.printed_value, r.recomputed);
  if (r.relation == "approx") {
    const Interval diff = abs(r.printed_value - r.recomputed);
    r.consistent = certainly_less(diff, half_ulp(r.printed) + dec("1e-30") * abs(r.printed_value));
  } else if (r.relation == "upper") {
    r.consistent = compare(r.recomputed.hi(), r.printed_value.lo()) <= 0;
  } else {
    r.consistent = false;
  }
  return r;
}

Interval klog(int k, int pk, int plog) {
  const Interval kk = num(k);
  return pow(kk, pk) * pow(log(kk), plog);
}

}  // namespace

void MatveevInstance::validate() const {
  if (t < 1) throw PreconditionError("Matveev: t must be >= 1");
  if (D < 1) throw PreconditionError("Matveev: D must be >= 1");
  if (certainly_less(B, 1)) throw PreconditionError("Matveev: B must be >= 1");
  if (static_cast<long>(A.size()) != t) throw PreconditionError("Matveev: need exactly t values A_i");
  const Interval floor_a = Interval::decimal("0.16", B.precision());
  for (const auto& a : A) {
    if (certainly_less(a, floor_a)) throw PreconditionError("Matveev: A_i must be >= 0.16");
  }
}

Interval matveev_constant(long t, mpfr_prec_t prec) {
  const Interval tt = Interval::exact(t, prec);
  return Interval::decimal("1.4", prec) * pow(Interval::exact(30, prec), t + 3) *
         pow(tt, Interval::decimal("4.5", prec));
}

Interval matveev_lower_bound(const MatveevInstance& inst) {
  inst.validate();
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(kPrec, inst.B.precision());
  const Interval D = Interval::exact(inst.D, prec);
  Interval product = matveev_constant(inst.t, prec) * sqr(D) * (log(D) + 1L) * (log(inst.B.with_precision(prec)) + 1L);
  for (const auto& a : inst.A) product = product * a.with_precision(prec);
  return -product;
}

Interval guzman_luca(long s, const Interval& T) {
  if (s < 1) throw PreconditionError("Guzman-Luca: s must be >= 1");
  const mpfr_prec_t prec = T.precision();
  const Interval threshold = pow(Interval::exact(4 * s * s, prec), s);
  if (!certainly_less(threshold, T)) throw PreconditionError("Guzman-Luca: requires T > (4 s^2)^s");
  return pow(Interval::exact(2, prec), s) * T * pow(log(T), s);
}

Interval guzman_luca(long s, double T) { return guzman_luca(s, Interval::of(BigRational(T), kPrec)); }

FixedPoint iterate_to_fixed_point(const std::function<Interval(const Interval&)>& step, const Interval& start,
                                  double rel_tol, int max_iter) {
  FixedPoint fp;
  fp.value = start;
  for (fp.iterations = 1; fp.iterations <= max_iter; ++fp.iterations) {
    Interval next = step(fp.value);
    const double a = fp.value.mid_double(), b = next.mid_double();
    fp.value = std::move(next);
    if (std::fabs(b - a) <= rel_tol * std::fabs(b)) {
      fp.converged = true;
      break;
    }
  }
  return fp;
}

Interval case2_formula(int k, mpfr_prec_t prec) {
  const Interval kk = Interval::exact(k, prec);
  return Interval::decimal("6.2e33", prec) * pow(kk, 8) * pow(log(kk), 6);
}

std::vector<ConstantRow> bound1_constant_table() {
  std::vector<ConstantRow> rows;
  const Interval m30 = pow(num(30), 5);
  const Interval r45 = pow(num(2), dec("4.5"));
  const Interval matveev = matveev_constant(2, kPrec);
  rows.push_back(row("pow30", "30^5", "2.43e7", m30, m30, "approx"));
  rows.push_back(row("pow2_4.5", "2^4.5", "22.6274", r45, r45, "approx"));
  rows.push_back(row("matveev_t2", "1.4 * 30^5 * 2^4.5", "7.70e8", dec("1.4") * dec("2.43e7") * dec("22.6274"),
                     matveev, "approx"));
  const Interval c4 = matveev * 4L;
  rows.push_back(row("times_4", "multiplied by the 4 of A_1 <= 4k log k", "3.08e9", dec("7.70e8") * 4L, c4, "approx"));
  const Interval c283 = c4 * dec("0.92");
  rows.push_back(row("times_log_alpha", "multiplied by the bound 0.92 for log alpha", "2.83e9",
                     dec("3.08e9") * dec("0.92"), c283, "approx",
                     "relies on log alpha < 0.92, which the audit checks separately"));
  const Interval c566 = c283 * 2L;
  rows.push_back(row("doubling", "1 + log k < 2 log k absorbed as a factor 2", "5.66e9", dec("2.83e9") * 2L, c566,
                     "approx"));

  const Interval r = dec("0.5") / dec("0.276");
  rows.push_back(row("r_const", "0.5 / 0.276 bounds |r| * 2^n", "1.8116", r, r, "upper"));
  rows.push_back(row("z_const", "2 * 1.8116", "3.6232", dec("1.8116") * 2L, r * 2L, "approx"));
  rows.push_back(row("sum_const", "two error terms, 2 * 3.6232", "7.2464", dec("3.6232") * 2L, r * 4L, "approx"));
  rows.push_back(row("lambda_const", "|Lambda| <= 2|e^Lambda - 1|, 2 * 7.2464", "14.4928", dec("7.2464") * 2L,
                     r * 8L, "approx"));

  // m log 2 < (5 * 5.66e9 K + 2.98) log m with K = k^3 (log k)^2 >= 32.6:
  // 1 + 2 log n <= 5 log m for n <= m^2, and log(28.99 m) <= 2.98 log m for m >= 6.
  const Interval log2c = Interval::log2_const(kPrec);
  const Interval c1 = (dec("5.66e9") * 5L + 1L) / log2c;
  rows.push_back(row("C1", "m / log m < C_1 k^3 (log k)^2 from the Lambda bound and the Matveev bound with n <= m^2", "3.2e9", c1,
                     (c566 * 5L + 1L) / log2c, "upper",
                     "recomputed as (5 * 5.66e9 + 1) / log 2; the printed value is smaller than required"));

  // s = 1 transfer with T = C_1 k^3 (log k)^2; 2 T log T / (k^3 (log k)^3)
  // equals 2 C_1 (log C_1 + 3 log k + 2 log log k) / log k, decreasing in k,
  // so its supremum over k >= 3 is attained at k = 3.
  const auto gl_ratio = [](const Interval& C1) {
    const Interval T = C1 * klog(3, 3, 2);
    return guzman_luca(1, T) / klog(3, 3, 3);
  };
  rows.push_back(row("case1_m", "m < 2T log T with T = 3.2e9 k^3 (log k)^2, sup over k >= 3", "5.3e14",
                     gl_ratio(dec("3.2e9")), gl_ratio(c1), "upper",
                     "step-local value uses the printed C_1; the chained value uses the recomputed C_1"));
  rows.push_back(row("case1_n", "n <= m^2", "2.9e29", sqr(dec("5.3e14")), sqr(gl_ratio(c1)), "upper"));
  rows.push_back(row("case2", "t = 4 application, stated without constants", "6.2e33", dec("6.2e33"), dec("6.2e33"),
                     "conclusion-only", "intermediate constants not given; only the stated conclusion is implemented"));
  const Interval at850 = case2_formula(850, kPrec);
  rows.push_back(row("final_k850", "6.2e33 * 850^8 * (log 850)^6", "9.3e63", at850, at850, "approx",
                     "printed value exceeds the formula by a factor of about 58; still a valid but loose upper bound"));
  return rows;
}

Bound1Result bound1(int k) {
  if (k < 3) throw PreconditionError("bound1 is stated for k >= 3");
  Bound1Result r;
  r.k = k;
  r.case1_m_bound = dec("5.3e14") * klog(k, 3, 3);
  r.case1_n_bound = dec("2.9e29") * klog(k, 6, 6);
  r.case2_n_bound = case2_formula(k, kPrec);
  r.case2_dominates = certainly_less(r.case1_n_bound, r.case2_n_bound);
  r.final_n_bound = max(r.case1_n_bound, r.case2_n_bound);
  r.c1_recomputed = (dec("5.66e9") * 5L + 1L) / Interval::log2_const(kPrec);
  r.case1_m_bound_recomputed = guzman_luca(1, r.c1_recomputed * klog(k, 3, 2));
  r.case1_n_bound_recomputed = sqr(r.case1_m_bound_recomputed);
  r.constants = bound1_constant_table();
  return r;
}

LinearFormResidual linear_form_residual(const AlgebraicContext& ctx, long n, long m, long x, long y) {
  if (!(n > m && m >= 1)) throw PreconditionError("linear form: need n > m >= 1");
  if (x < 1 || y < 1) throw PreconditionError("linear form: need x, y >= 1");
  const mpfr_prec_t prec = ctx.alpha.precision();
  LinearFormResidual r;
  r.u = y - x;
  r.mu = BigInt(n) * x - BigInt(m) * y;
  const Interval mu = Interval::exact(r.mu, prec);
  const Interval u = Interval::exact(r.u, prec);
  const Interval form = Interval::exact(x - y, prec) * log(ctx.g_alpha) + mu * ctx.log_alpha;
  r.abs_form = abs(form);
  r.abs_form_over_log = abs(mu - u * ctx.tau);
  r.abs_u_tau_plus_mu = abs(u * ctx.tau + mu);
  const Interval two = Interval::exact(2, prec);
  r.below_2_pow_5_minus_n = certainly_less(r.abs_form, pow(two, 5 - n));
  r.normalized_below_2_pow_5_minus_n = certainly_less(r.abs_form_over_log, pow(two, 5 - n));
  r.normalized_below_2_pow_6_minus_n = certainly_less(r.abs_form_over_log, pow(two, 6 - n));
  return r;
}

}  // namespace kpell

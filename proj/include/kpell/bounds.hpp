#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kpell/algebraic.hpp"
#include "kpell/interval.hpp"

namespace kpell {

// Parameters of a lower bound for a linear form in t logarithms.
struct MatveevInstance {
  long t = 1;
  long D = 1;
  Interval B;               // B >= max |b_i|
  std::vector<Interval> A;  // A_i >= max{D h(gamma_i), |log gamma_i|, 0.16}

  // Throws PreconditionError when an invariant fails.
  void validate() const;
};

// 1.4 * 30^(t+3) * t^4.5
Interval matveev_constant(long t, mpfr_prec_t prec = 128);
// Enclosure of -1.4 * 30^(t+3) * t^4.5 * D^2 (1 + log D)(1 + log B) A_1...A_t.
// The lower endpoint is a valid lower bound for log|Lambda|.
Interval matveev_lower_bound(const MatveevInstance& inst);

// 2^s T (log T)^s. PreconditionError unless T > (4 s^2)^s.
Interval guzman_luca(long s, const Interval& T);
Interval guzman_luca(long s, double T);

// Repeats `step` from `start` until consecutive values agree to within
// `rel_tol` (relative) or max_iter is reached.
struct FixedPoint {
  Interval value;
  int iterations = 0;
  bool converged = false;
};
FixedPoint iterate_to_fixed_point(const std::function<Interval(const Interval&)>& step, const Interval& start,
                                  double rel_tol = 0.01, int max_iter = 100);

// One printed constant of the bound chain next to its recomputation.
struct ConstantRow {
  std::string id;
  std::string description;
  std::string printed;      // as printed, e.g. "7.70e8"
  Interval printed_value;
  Interval recomputed;      // from the previous printed constant
  Interval chained;         // from exact inputs, without intermediate rounding
  std::string relation;     // "approx", "upper" or "conclusion-only"
  double rel_deviation = 0; // printed / recomputed - 1
  bool consistent = false;
  std::string note;
};

// The k-independent constants of the t = 2 application.
std::vector<ConstantRow> bound1_constant_table();

struct Bound1Result {
  int k = 0;
  Interval case1_m_bound;  // 5.3e14 k^3 (log k)^3
  Interval case1_n_bound;  // 2.9e29 k^6 (log k)^6
  Interval case2_n_bound;  // 6.2e33 k^8 (log k)^6
  Interval final_n_bound;  // max of the two cases
  bool case2_dominates = false;
  // Case 1 redone with the recomputed C_1 and the transfer lemma.
  Interval c1_recomputed;
  Interval case1_m_bound_recomputed;
  Interval case1_n_bound_recomputed;
  std::vector<ConstantRow> constants;
};

// PreconditionError for k < 3.
Bound1Result bound1(int k);

// 6.2e33 * k^8 (log k)^6
Interval case2_formula(int k, mpfr_prec_t prec = 192);

// The linear form (x - y) log g_k(alpha) + (nx - my) log alpha and its
// normalisations by log alpha.
struct LinearFormResidual {
  long u = 0;   // y - x
  BigInt mu;    // nx - my
  Interval abs_form;            // |(x-y) log g + (nx-my) log alpha|
  Interval abs_form_over_log;   // abs_form / log alpha = |mu - u tau|
  Interval abs_u_tau_plus_mu;   // |u tau + mu|, the sign convention as usually quoted
  bool below_2_pow_5_minus_n = false;  // abs_form < 2^(-n+5)
  bool normalized_below_2_pow_5_minus_n = false;
  bool normalized_below_2_pow_6_minus_n = false;
};

LinearFormResidual linear_form_residual(const AlgebraicContext& ctx, long n, long m, long x, long y);

}  // namespace kpell

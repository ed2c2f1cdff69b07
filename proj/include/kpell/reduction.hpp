#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kpell/bigint.hpp"
#include "kpell/interval.hpp"

namespace kpell {

// Partial quotients and convergents valid for every real in `value`.
struct ContinuedFractionExpansion {
  Interval value;
  std::vector<BigInt> quotients;  // a_0 .. a_J
  std::vector<BigInt> p;          // p_0 .. p_J
  std::vector<BigInt> q;          // q_0 .. q_J
  long bits = 0;                  // precision of the enclosure that was expanded

  int certified_to() const { return static_cast<int>(quotients.size()) - 1; }
  // Index of the largest q_j <= bound, or -1.
  int last_index_at_most(const BigInt& bound) const;
  // Index of the smallest q_j > bound, or -1.
  int first_index_above(const BigInt& bound) const;
};

// Expands until the first denominator exceeding max_q has been certified.
// Throws InsufficientPrecision (with the achieved depth) if the enclosure is
// too wide to get there.
ContinuedFractionExpansion expand_cf(const Interval& x, const BigInt& max_q);

// Same, asking `source` for tighter enclosures (doubling the precision from
// start_bits up to max_bits) until the expansion reaches max_q.
using EnclosureSource = std::function<Interval(long bits)>;
ContinuedFractionExpansion expand_cf(const EnclosureSource& source, const BigInt& max_q, long start_bits = 320,
                                     long max_bits = 4096);

// min over 1 <= u <= M of ||u tau||, attained at the largest convergent
// denominator q_j <= M.
struct BestApproximation {
  BigInt u;         // the minimising q_j
  Interval norm;    // ||u tau||
  int index = 0;
};
BestApproximation best_approx_min(const ContinuedFractionExpansion& cf, const BigInt& M);

struct ReductionOutcome {
  int k = 0;
  std::string method;  // "homogeneous" or "dujella-petho"
  BigInt M;
  long offset = 5;
  bool ok = false;
  std::string note;
  BigInt q_used;
  Interval small_norm;                // ||q_used tau||
  std::optional<Interval> norm_mu_q;  // ||mu q|| (inhomogeneous only)
  std::optional<Interval> epsilon;    // inhomogeneous only
  Interval real_bound;                // offset + log2(1/L) or offset + log2(q/eps)
  long new_n_bound = 0;
  long u_zero_bound = 0;              // offset - 1, from |mu| >= 1 when u = 0
  long bits_used = 0;
  int cf_depth = 0;
};

// |u tau + mu| < 2^(offset - n) with 1 <= |u| <= M forces ||u tau|| < 2^(offset - n).
ReductionOutcome reduce_homogeneous(const EnclosureSource& abs_tau, const BigInt& M, long offset = 5);
ReductionOutcome reduce_homogeneous(int k, const BigInt& M, long offset = 5);

// Dujella-Petho criterion given all its ingredients: eps = ||mu q|| - M ||q tau||,
// n - offset < log(q / eps) / log 2 when eps > 0.
struct DujellaPethoStep {
  Interval epsilon;
  Interval log2_q_over_eps;
  Interval real_bound;  // offset + log2(q/eps)
  long new_n_bound = 0; // largest integer strictly below real_bound
  bool ok = false;      // eps certified > 0
};
DujellaPethoStep dujella_petho_step(const Interval& q, const Interval& M, const Interval& norm_q_tau,
                                    const Interval& norm_mu_q, long offset);

// How ||mu q|| is obtained for the inhomogeneous step.
struct MuChoice {
  enum class Kind {
    AssumedHalf,  // ||mu q|| = 0.5 as asserted for mu = floor(q/2)
    Literal,      // mu = floor(q/2) taken literally: mu q is an integer
    Shift,        // a real inhomogeneous constant
  };
  Kind kind = Kind::AssumedHalf;
  Interval shift = Interval(64);  // used when kind == Shift
  std::string describe() const;
};

// Smallest convergent denominator q > 6M first, then up to `retries` further
// convergents while eps <= 0. A failed outcome has ok = false and a note.
ReductionOutcome reduce_dujella_petho(const EnclosureSource& abs_tau, const BigInt& M, const MuChoice& mu,
                                      long offset = 5, int retries = 10);
ReductionOutcome reduce_dujella_petho(int k, const BigInt& M, const MuChoice& mu, long offset = 5,
                                      int retries = 10);

struct SweepRow {
  int k = 0;
  ReductionOutcome homogeneous;
  ReductionOutcome dujella_petho;
  std::string error;  // non-empty when this k failed outright
};
struct SweepResult {
  std::vector<SweepRow> rows;
  long max_bound = 0;       // over successful homogeneous rows
  int failures = 0;
  BigInt max_q_dujella_petho;  // largest q used by the inhomogeneous recipe
};

// Per-k reductions over k_min..k_max, run on `threads` workers.
SweepResult reduce_all_k(int k_min, int k_max, const BigInt& M, long offset = 5, unsigned threads = 0);

// |tau_k| enclosure source backed by the algebraic context cache.
EnclosureSource abs_tau_source(int k);

// 10^e as an exact integer.
BigInt pow10(unsigned long e);
// Parses "1e63", "6000", "10^64" style integers.
BigInt parse_big(const std::string& s);

}  // namespace kpell

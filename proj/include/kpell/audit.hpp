#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "kpell/bigint.hpp"
#include "kpell/interval.hpp"

namespace kpell {

enum class ClaimStatus { Pass, Fail, ConclusionOnly, NotEvaluable };
std::string to_string(ClaimStatus s);

struct ClaimRecord {
  std::string claim_id;
  std::string anchor;  // where the claim is made, in words
  std::string grid;    // parameter ranges evaluated
  ClaimStatus status = ClaimStatus::NotEvaluable;
  nlohmann::json evidence = nlohmann::json::object();
  std::string note;
};

struct ManifestEntry {
  std::string claim_id;
  std::string anchor;
};
// Hand-maintained list of every audited claim, in report order.
const std::vector<ManifestEntry>& claim_manifest();

struct AuditConfig {
  int k_root_max = 30;        // per-root checks
  int k_binet_max = 20;       // Binet error sweep
  int k_height_max = 12;      // resultant certificates
  int k_scalar_max = 850;     // scalar formulas
  long n_max = 200;
  int k_reduction_max = 850;  // real continued-fraction sweep
  int k_search_max = 20;
  long n_search_max = 80;
  long bits = 320;
  std::string reduction_M = "1e63";
  std::vector<std::string> claims;  // empty: all
  unsigned threads = 0;

  // key = value lines; '#' starts a comment. Unknown keys are errors.
  void load_file(const std::string& path);
  // KPELL_PRECISION_BITS overrides `bits`.
  void apply_environment();
};

struct AuditReport {
  int schema_version = 1;
  AuditConfig config;
  std::vector<ClaimRecord> records;

  std::size_t count(ClaimStatus s) const;
  nlohmann::json to_json() const;
  std::string table() const;
};

// Evaluates every selected claim; a claim that throws becomes not-evaluable
// with the error in its note. Records come back in manifest order.
AuditReport run_audit(const AuditConfig& config);

// log10 M(k) for M(k) = 2.365e136 k^32 (log k)^24 / 2^(k+1), with the
// four summands of the logarithm.
struct MkEvaluation {
  int k = 0;
  Interval log10_value;
  Interval constant_term;  // log10 2.365e136
  Interval power_term;     // 32 log10 k
  Interval loglog_term;    // 24 log10 log k
  Interval two_term;       // (k+1) log10 2
  bool below_one = false;
};
MkEvaluation eval_Mk(int k);
// Smallest k* with M(k) < 1 for every k >= k* (M is eventually decreasing;
// the scan runs far enough past its maximum to make this exact).
int Mk_crossover();

// |P_n / 2^(n-1) - (1 - (n-k)/2^(k+1))| against 4n^2 / 2^(2k+2), exactly.
// With r = 1 the sequence is k-Fibonacci and the normalisation is 2^(n-2).
struct SecondOrderCheck {
  int k = 0;
  long n = 0;
  long r = 2;
  BigRational residual;
  BigRational bound;
  bool within_bound = false;
};
SecondOrderCheck second_order_residual(int k, long n, long r = 2);

struct ChainReport {
  BigInt Delta;  // (m-1)y - (n-1)x
  BigInt N;      // x(n-k) - y(m-k)
  bool first_holds = false;   // (n-1)x = (m-1)y
  bool second_holds = false;  // x(n-k) = y(m-k)
  bool identity_holds = false;  // -Delta - N == (x - y)(k - 1)
  std::string forced_conclusion;
};
ChainReport contradiction_chain(int k, long n, long m, long x, long y);

struct AsymptoticState {
  int k = 0;
  long n = 0, m = 0, x = 0, y = 0;
  Interval a_n, a_m;        // P/2^(index-1) - 1
  Interval zeta_bound_n;    // 4n^2 / 2^(2k+2)
  Interval theta_bound_n;   // 2 (x a_n)^2
  BigInt Delta;
  BigInt N;
  MkEvaluation Mk;
};
AsymptoticState asymptotic_state(int k, long n, long m, long x, long y);

}  // namespace kpell

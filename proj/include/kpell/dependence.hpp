#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kpell/bigint.hpp"

namespace kpell {

// a = base^exponent with base not a perfect power.
struct PrimitiveBase {
  BigInt base;
  unsigned long exponent = 1;
};

// Requires a >= 2. Exact e-th roots for prime e <= log2(a), composed.
PrimitiveBase primitive_base(const BigInt& a);

enum class Definition {
  Strict,   // nonzero x, y with a^x = b^y
  Lattice,  // (x, y) != (0, 0) with a^x b^y = 1
};
std::string to_string(Definition d);
Definition parse_definition(const std::string& s);

struct Witness {
  BigInt c;  // common primitive base, c >= 2
  unsigned long s = 0;  // |a| = c^s
  unsigned long t = 0;  // |b| = c^t
};

struct DependenceVerdict {
  BigInt a;
  BigInt b;
  Definition definition = Definition::Strict;
  bool dependent = false;
  bool degenerate = false;   // a or b in {0, 1, -1} or negative
  std::string reason;        // set for degenerate inputs
  std::optional<Witness> witness;
  // A relation realising the definition: a^x = b^y (strict) or
  // a^x b^y = 1 (lattice).
  std::optional<std::pair<long, long>> exponents;

  std::string verdict() const { return dependent ? "dependent" : "independent"; }
};

DependenceVerdict mul_dep(const BigInt& a, const BigInt& b, Definition def);

// All (x, y) with 1 <= x <= x_max and a^x = b^y; a, b >= 2.
std::vector<std::pair<long, long>> direct_solutions(const BigInt& a, const BigInt& b, long x_max);
// The same for a = P_n^(k), b = P_m^(k). PreconditionError unless n > m and
// both terms are >= 2.
std::vector<std::pair<long, long>> check_direct_equation(int k, long n, long m, long x_max);

struct SearchBox {
  int k_min = 2;
  int k_max = 10;
  long n_max = 60;
  std::optional<long> m_min;  // default 2 - k
  long x_max = 0;             // > 0: also cross-check dependent pairs directly
  std::vector<Definition> definitions{Definition::Strict};
  BigInt oracle_below;        // > 0: factorization cross-check for terms below this
  unsigned threads = 0;

  void validate() const;
};

struct SearchRecord {
  int k = 0;
  long n = 0;
  long m = 0;
  BigInt p_n;
  BigInt p_m;
  DependenceVerdict verdict;
  std::optional<bool> direct_agrees;  // when x_max > 0
};

struct SearchSummary {
  unsigned long long pairs = 0;
  unsigned long long pairs_both_at_least_2 = 0;
  unsigned long long dependent_both_at_least_2 = 0;  // under any requested definition
  unsigned long long degenerate_pairs = 0;
  unsigned long long dependent_degenerate = 0;
  unsigned long long oracle_checked = 0;
  unsigned long long oracle_disagreements = 0;
  unsigned long long oracle_unavailable = 0;
  unsigned long long direct_disagreements = 0;
  std::vector<std::pair<Definition, unsigned long long>> dependent_by_definition;
};

// Enumerates m < n for every k in the box and reports dependent pairs in
// (k, n, m) order through `sink`, which is only ever called from one thread.
SearchSummary search(const SearchBox& box, const std::function<void(const SearchRecord&)>& sink);

// One JSON object per line.
std::string to_jsonl(const SearchRecord& r);
std::string summary_json(const SearchBox& box, const SearchSummary& s);

}  // namespace kpell

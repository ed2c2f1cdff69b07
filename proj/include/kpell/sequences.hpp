#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "kpell/bigint.hpp"

namespace kpell {

// G_n = r*G_{n-1} + G_{n-2} + ... + G_{n-k} for n >= 2, with
// G_{2-k} = ... = G_{-1} = 0, G_0 = a, G_1 = b.
struct SequenceSpec {
  int k = 2;
  long r = 2;
  long a = 0;
  long b = 1;

  static SequenceSpec pell(int k) { return {k, 2, 0, 1}; }
  static SequenceSpec fibonacci(int k) { return {k, 1, 0, 1}; }

  long first_index() const { return 2 - k; }
  void validate() const;
  std::string describe() const;

  friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;
};

// Streams the sequence from index 2-k upwards keeping only the last k terms.
class TermStream {
 public:
  explicit TermStream(const SequenceSpec& spec);

  long index() const { return index_; }
  const BigInt& current() const { return window_[head_]; }
  void advance();
  // Advance until index() == n. n must not be behind the stream.
  void seek(long n);

 private:
  SequenceSpec spec_;
  long index_;
  std::vector<BigInt> window_;  // ring buffer, window_[head_] is G_index
  std::size_t head_ = 0;
  BigInt window_sum_;
};

// Immutable table of exact terms G_lo .. G_hi.
class TermTable {
 public:
  static TermTable build(const SequenceSpec& spec, long hi);
  static TermTable window(const SequenceSpec& spec, long lo, long hi);

  const SequenceSpec& spec() const { return spec_; }
  long lo() const { return lo_; }
  long hi() const { return hi_; }
  bool covers(long n) const { return n >= lo_ && n <= hi_; }
  const BigInt& at(long n) const;
  const BigInt& operator[](long n) const { return terms_[static_cast<std::size_t>(n - lo_)]; }
  std::span<const BigInt> terms() const { return terms_; }

  // Recompute every term with lo + k <= n <= hi from its k predecessors.
  bool verify_recurrence() const;
  std::size_t byte_size() const;

 private:
  TermTable(SequenceSpec spec, long lo, long hi, std::vector<BigInt> terms)
      : spec_(spec), lo_(lo), hi_(hi), terms_(std::move(terms)) {}

  SequenceSpec spec_;
  long lo_;
  long hi_;
  std::vector<BigInt> terms_;
};

// Shared, immutable table covering [2-k, >= hi]. Tables are cached per SequenceSpec;
// once the cached total exceeds the byte budget older tables are dropped
// (outstanding shared_ptrs stay valid).
std::shared_ptr<const TermTable> cached_table(const SequenceSpec& spec, long hi);
void set_table_cache_budget(std::size_t bytes);
std::size_t table_cache_bytes();
void clear_table_cache();

// Exact G_n. Throws DomainError for n < 2 - k.
BigInt term(const SequenceSpec& spec, long n);

// Classical Fibonacci number F_n, n >= 0.
BigInt fibonacci(long n);

struct IdentityCheck {
  std::string identity;
  int k = 0;
  long n = 0;
  BigInt lhs;
  BigInt rhs;
  BigInt residual;  // lhs - rhs
  bool pass = false;
};

// P_n^(k) == F_{2n-1} for 1 <= n <= k+1.
IdentityCheck check_kilic_segment(int k, long n);
// P_n^(k) == F_{2n-1} - sum_{j=1}^{n-k-1} F_{2j-1} F_{2(n-k-1)} for
// k+2 <= n <= 2k+2, with the second factor taken outside the summation index
// exactly as the identity is usually quoted.
IdentityCheck check_kilic_tail(int k, long n);
// P_n^(k) == 2^(n-1) for 2 <= n <= k+1.
IdentityCheck check_power_of_two_segment(int k, long n);

struct CooperHowardExpansion {
  int k = 0;
  long n = 0;
  long ell = 0;
  std::vector<BigInt> coefficients;  // C_{n,j}, j = 1 .. ell-1
  BigInt predicted;                  // 2^(n-1) + sum C_{n,j} 2^(n-(k+1)j-1)
};

CooperHowardExpansion cooper_howard(int k, long n);
// Compares cooper_howard(k, n).predicted against P_n^(k).
IdentityCheck check_cooper_howard(int k, long n);

}  // namespace kpell

#include "kpell/sequences.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "kpell/errors.hpp"

namespace kpell {

void SequenceSpec::validate() const {
  if (k < 2) throw DomainError("sequence order k must be >= 2, got " + std::to_string(k));
  if (r < 1) throw DomainError("leading multiplier r must be >= 1, got " + std::to_string(r));
}

std::string SequenceSpec::describe() const {
  if (r == 2 && a == 0 && b == 1) return std::to_string(k) + "-Pell";
  if (r == 1 && a == 0 && b == 1) return std::to_string(k) + "-Fibonacci";
  return "G(k=" + std::to_string(k) + ", r=" + std::to_string(r) + ", a=" + std::to_string(a) +
         ", b=" + std::to_string(b) + ")";
}

TermStream::TermStream(const SequenceSpec& spec)
    : spec_(spec), index_(spec.first_index()), window_(static_cast<std::size_t>(spec.k)) {
  spec_.validate();
  if (index_ == 0) window_[0] = spec_.a;
  window_sum_ = window_[0];
}

void TermStream::advance() {
  const std::size_t k = window_.size();
  const long next = index_ + 1;
  const std::size_t slot = (head_ + 1) % k;
  BigInt value;
  if (next <= 1) {
    value = next == 0 ? BigInt(spec_.a) : (next == 1 ? BigInt(spec_.b) : BigInt(0));
  } else {
    // G_next = (r-1) G_index + (G_index + ... + G_{index-k+1})
    value = window_sum_ + (spec_.r - 1) * window_[head_];
  }
  window_sum_ -= window_[slot];  // G_{next-k}, or an unused zero slot
  window_sum_ += value;
  window_[slot] = std::move(value);
  head_ = slot;
  index_ = next;
}

void TermStream::seek(long n) {
  if (n < index_) throw DomainError("TermStream::seek: cannot move backwards");
  while (index_ < n) advance();
}

TermTable TermTable::build(const SequenceSpec& spec, long hi) { return window(spec, spec.first_index(), hi); }

TermTable TermTable::window(const SequenceSpec& spec, long lo, long hi) {
  spec.validate();
  if (lo < spec.first_index()) {
    throw DomainError("term index " + std::to_string(lo) + " below 2-k = " + std::to_string(spec.first_index()));
  }
  if (hi < lo) throw DomainError("TermTable: empty range");
  TermStream s(spec);
  s.seek(lo);
  std::vector<BigInt> terms;
  terms.reserve(static_cast<std::size_t>(hi - lo + 1));
  terms.push_back(s.current());
  while (s.index() < hi) {
    s.advance();
    terms.push_back(s.current());
  }
  return TermTable(spec, lo, hi, std::move(terms));
}

const BigInt& TermTable::at(long n) const {
  if (!covers(n)) {
    throw DomainError("index " + std::to_string(n) + " outside table [" + std::to_string(lo_) + ", " +
                      std::to_string(hi_) + "]");
  }
  return (*this)[n];
}

bool TermTable::verify_recurrence() const {
  const long k = spec_.k;
  for (long n = std::max(lo_ + k, 2L); n <= hi_; ++n) {
    BigInt expect = spec_.r * (*this)[n - 1];
    for (long i = 2; i <= k; ++i) expect += (*this)[n - i];
    if (expect != (*this)[n]) return false;
  }
  for (long n = lo_; n <= std::min(hi_, 1L); ++n) {
    const BigInt want = n == 1 ? BigInt(spec_.b) : (n == 0 ? BigInt(spec_.a) : BigInt(0));
    if ((*this)[n] != want) return false;
  }
  return true;
}

std::size_t TermTable::byte_size() const {
  std::size_t bytes = sizeof(*this);
  for (const auto& t : terms_) bytes += sizeof(BigInt) + mpz_size(t.get_mpz_t()) * sizeof(mp_limb_t);
  return bytes;
}

namespace {

using SpecKey = std::tuple<int, long, long, long>;

struct TableCache {
  std::mutex mu;
  std::map<SpecKey, std::shared_ptr<const TermTable>> tables;
  std::size_t bytes = 0;
  std::size_t budget = std::size_t{256} << 20;
};

TableCache& table_cache() {
  static TableCache cache;
  return cache;
}

SpecKey key_of(const SequenceSpec& s) { return {s.k, s.r, s.a, s.b}; }

}  // namespace

std::shared_ptr<const TermTable> cached_table(const SequenceSpec& spec, long hi) {
  spec.validate();
  auto& cache = table_cache();
  const SpecKey key = key_of(spec);
  {
    std::lock_guard lock(cache.mu);
    auto it = cache.tables.find(key);
    if (it != cache.tables.end() && it->second->hi() >= hi) return it->second;
  }
  // Build outside the lock; grow geometrically so repeated extension is cheap.
  long target = std::max(hi, 1L);
  {
    std::lock_guard lock(cache.mu);
    auto it = cache.tables.find(key);
    if (it != cache.tables.end()) target = std::max(target, 2 * it->second->hi());
  }
  auto table = std::make_shared<const TermTable>(TermTable::build(spec, target));
  std::lock_guard lock(cache.mu);
  auto& slot = cache.tables[key];
  if (slot && slot->hi() >= table->hi()) return slot;
  if (slot) cache.bytes -= slot->byte_size();
  slot = table;
  cache.bytes += table->byte_size();
  if (cache.bytes > cache.budget) {
    for (auto it = cache.tables.begin(); it != cache.tables.end();) {
      if (it->first == key) {
        ++it;
        continue;
      }
      cache.bytes -= it->second->byte_size();
      it = cache.tables.erase(it);
    }
  }
  return table;
}

void set_table_cache_budget(std::size_t bytes) {
  std::lock_guard lock(table_cache().mu);
  table_cache().budget = bytes;
}

std::size_t table_cache_bytes() {
  std::lock_guard lock(table_cache().mu);
  return table_cache().bytes;
}

void clear_table_cache() {
  std::lock_guard lock(table_cache().mu);
  table_cache().tables.clear();
  table_cache().bytes = 0;
}

BigInt term(const SequenceSpec& spec, long n) {
  spec.validate();
  if (n < spec.first_index()) {
    throw DomainError("term index " + std::to_string(n) + " below 2-k = " + std::to_string(spec.first_index()));
  }
  return cached_table(spec, n)->at(n);
}

BigInt fibonacci(long n) {
  if (n < 0) throw DomainError("fibonacci: negative index");
  return term(SequenceSpec::fibonacci(2), n);
}

namespace {

IdentityCheck make_check(std::string name, int k, long n, BigInt lhs, BigInt rhs) {
  IdentityCheck c;
  c.identity = std::move(name);
  c.k = k;
  c.n = n;
  c.residual = lhs - rhs;
  c.pass = c.residual == 0;
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  return c;
}

void require_order(int k) {
  if (k < 2) throw DomainError("order k must be >= 2");
}

}  // namespace

IdentityCheck check_kilic_segment(int k, long n) {
  require_order(k);
  if (n < 1 || n > k + 1) {
    throw DomainError("kilic segment needs 1 <= n <= k+1, got n=" + std::to_string(n));
  }
  return make_check("kilic", k, n, term(SequenceSpec::pell(k), n), fibonacci(2 * n - 1));
}

IdentityCheck check_kilic_tail(int k, long n) {
  require_order(k);
  if (n < k + 2 || n > 2L * k + 2) {
    throw DomainError("kilic tail needs k+2 <= n <= 2k+2, got n=" + std::to_string(n));
  }
  const long top = n - k - 1;
  const BigInt outer = fibonacci(2 * top);
  BigInt sum = 0;
  for (long j = 1; j <= top; ++j) sum += fibonacci(2 * j - 1) * outer;
  return make_check("kilic-tail", k, n, term(SequenceSpec::pell(k), n), fibonacci(2 * n - 1) - sum);
}

IdentityCheck check_power_of_two_segment(int k, long n) {
  require_order(k);
  if (n < 2 || n > k + 1) {
    throw DomainError("power-of-two segment needs 2 <= n <= k+1, got n=" + std::to_string(n));
  }
  return make_check("pow2", k, n, term(SequenceSpec::pell(k), n), pow2(static_cast<unsigned long>(n - 1)));
}

CooperHowardExpansion cooper_howard(int k, long n) {
  require_order(k);
  if (n < k + 2) throw DomainError("Cooper-Howard expansion needs n >= k+2, got n=" + std::to_string(n));
  CooperHowardExpansion e;
  e.k = k;
  e.n = n;
  e.ell = (n + k) / (k + 1);
  e.predicted = pow2(static_cast<unsigned long>(n - 1));
  for (long j = 1; j <= e.ell - 1; ++j) {
    const long top = n - j * k;
    BigInt c = binomial(top, j + 1) - binomial(top - 2, j - 1);
    if (j % 2 == 1) c = -c;
    const long shift = n - (k + 1) * j - 1;  // >= 0 because j <= (n-1)/(k+1)
    e.predicted += c * pow2(static_cast<unsigned long>(shift));
    e.coefficients.push_back(std::move(c));
  }
  return e;
}

IdentityCheck check_cooper_howard(int k, long n) {
  CooperHowardExpansion e = cooper_howard(k, n);
  return make_check("cooper-howard", k, n, term(SequenceSpec::pell(k), n), std::move(e.predicted));
}

}  // namespace kpell

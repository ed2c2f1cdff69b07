#include "kpell/dependence.hpp"

#include <json.hpp>

#include <cmath>
#include <condition_variable>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "kpell/errors.hpp"
#include "kpell/factor.hpp"
#include "kpell/sequences.hpp"

namespace kpell {

namespace {

std::vector<unsigned long> primes_up_to(unsigned long n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<unsigned long> out;
  for (unsigned long i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (unsigned long j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

double log_big(const BigInt& v) {
  long e = 0;
  const double d = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(d) + static_cast<double>(e) * std::log(2.0);
}

}  // namespace

PrimitiveBase primitive_base(const BigInt& a) {
  if (a < 2) throw DomainError("primitive_base: a must be >= 2");
  PrimitiveBase pb{a, 1};
  if (!mpz_perfect_power_p(a.get_mpz_t())) return pb;
  const auto primes = primes_up_to(bit_length(a));
  for (unsigned long e : primes) {
    if (bit_length(pb.base) <= e) break;  // base < 2^e: no e-th root >= 2
    bool exact = false;
    for (;;) {
      BigInt r = integer_root(pb.base, e, exact);
      if (!exact) break;
      pb.base = std::move(r);
      pb.exponent *= e;
    }
  }
  return pb;
}

std::string to_string(Definition d) { return d == Definition::Strict ? "strict" : "lattice"; }

Definition parse_definition(const std::string& s) {
  if (s == "strict") return Definition::Strict;
  if (s == "lattice") return Definition::Lattice;
  throw DomainError("unknown definition: " + s);
}

namespace {

// a is 0, 1 or -1; b arbitrary.
void classify_degenerate(const BigInt& a, const BigInt& b, DependenceVerdict& v, bool swapped) {
  const auto set = [&](long x, long y) {
    v.dependent = true;
    v.exponents = swapped ? std::make_pair(y, x) : std::make_pair(x, y);
  };
  const BigInt absb = abs(b);
  if (a == 0) {
    v.reason = "involves 0";
    if (v.definition == Definition::Lattice) {
      // a^0 b^y = 1 needs |b| = 1
      if (b == 1) set(0, 1);
      else if (b == -1) set(0, 2);
    }
    return;
  }
  v.reason = a == 1 ? "involves 1" : "involves -1";
  const long ea = a == 1 ? 1 : 2;  // smallest positive power of a equal to 1
  if (v.definition == Definition::Lattice) {
    set(ea, 0);
    return;
  }
  // a^x = b^y with x, y nonzero forces |b| = 1
  if (b == 0) {
    v.reason = "involves 0";
    return;
  }
  if (absb == 1) set(ea, b == 1 ? 1 : 2);
}

}  // namespace

DependenceVerdict mul_dep(const BigInt& a, const BigInt& b, Definition def) {
  DependenceVerdict v;
  v.a = a;
  v.b = b;
  v.definition = def;
  const BigInt A = abs(a), B = abs(b);
  if (A <= 1 || B <= 1) {
    v.degenerate = true;
    if (A <= 1) classify_degenerate(a, b, v, false);
    else classify_degenerate(b, a, v, true);
    return v;
  }
  if (a < 0 || b < 0) {
    v.degenerate = true;
    v.reason = "negative input: decided on absolute values with even exponents";
  }
  const auto pa = primitive_base(A);
  const auto pb = primitive_base(B);
  if (pa.base != pb.base) return v;
  v.dependent = true;
  v.witness = Witness{pa.base, pa.exponent, pb.exponent};
  const unsigned long g = std::gcd(pa.exponent, pb.exponent);
  long x = static_cast<long>(pb.exponent / g);
  long y = static_cast<long>(pa.exponent / g);
  const bool neg_lhs = a < 0 && x % 2 == 1;
  const bool neg_rhs = b < 0 && y % 2 == 1;
  if (neg_lhs || neg_rhs) {
    x *= 2;
    y *= 2;
  }
  v.exponents = def == Definition::Strict ? std::make_pair(x, y) : std::make_pair(x, -y);
  return v;
}

std::vector<std::pair<long, long>> direct_solutions(const BigInt& a, const BigInt& b, long x_max) {
  if (a < 2 || b < 2) throw PreconditionError("direct equation needs both values >= 2");
  std::vector<std::pair<long, long>> out;
  const double ratio = log_big(a) / log_big(b);
  for (long x = 1; x <= x_max; ++x) {
    const double yr = static_cast<double>(x) * ratio;
    const long y = std::lround(yr);
    if (y < 1 || std::fabs(yr - static_cast<double>(y)) > 1e-6) continue;
    if (ipow(a, static_cast<unsigned long>(x)) == ipow(b, static_cast<unsigned long>(y))) out.emplace_back(x, y);
  }
  return out;
}

std::vector<std::pair<long, long>> check_direct_equation(int k, long n, long m, long x_max) {
  if (n <= m) throw PreconditionError("direct equation needs n > m");
  const auto spec = SequenceSpec::pell(k);
  return direct_solutions(term(spec, n), term(spec, m), x_max);
}

void SearchBox::validate() const {
  if (k_min < 2 || k_max < k_min) throw PreconditionError("search box: need 2 <= k_min <= k_max");
  if (n_max < 2) throw PreconditionError("search box: n_max must be >= 2");
  if (m_min && *m_min < 2 - k_max) throw PreconditionError("search box: m_min must be >= 2 - k");
  if (definitions.empty()) throw PreconditionError("search box: no definition selected");
}

namespace {

struct Batch {
  std::vector<SearchRecord> records;
  SearchSummary summary;
};

void add(SearchSummary& into, const SearchSummary& s) {
  into.pairs += s.pairs;
  into.pairs_both_at_least_2 += s.pairs_both_at_least_2;
  into.dependent_both_at_least_2 += s.dependent_both_at_least_2;
  into.degenerate_pairs += s.degenerate_pairs;
  into.dependent_degenerate += s.dependent_degenerate;
  into.oracle_checked += s.oracle_checked;
  into.oracle_disagreements += s.oracle_disagreements;
  into.oracle_unavailable += s.oracle_unavailable;
  into.direct_disagreements += s.direct_disagreements;
  for (std::size_t i = 0; i < s.dependent_by_definition.size(); ++i)
    into.dependent_by_definition[i].second += s.dependent_by_definition[i].second;
}

bool proportional(const Factorization& fa, const Factorization& fb) {
  if (fa.size() != fb.size()) return false;
  const unsigned long ea0 = fa.begin()->second, eb0 = fb.begin()->second;
  for (auto ia = fa.begin(), ib = fb.begin(); ia != fa.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second * eb0 != ib->second * ea0) return false;
  }
  return true;
}

Batch search_k(const SearchBox& box, int k) {
  Batch batch;
  for (auto d : box.definitions) batch.summary.dependent_by_definition.emplace_back(d, 0);
  const long lo = std::max<long>(2 - k, box.m_min.value_or(2 - k));
  const auto table = TermTable::build(SequenceSpec::pell(k), box.n_max);

  struct Entry {
    long index;
    std::string base_key;  // primitive base, for terms >= 2
    std::optional<Factorization> factors;
    bool has_factors = false;
  };
  std::vector<Entry> big;    // terms >= 2
  std::vector<long> slot;    // position in `big`, or -1
  for (long i = lo; i <= box.n_max; ++i) {
    const BigInt& v = table.at(i);
    slot.push_back(v >= 2 ? static_cast<long>(big.size()) : -1);
    if (v >= 2) {
      Entry e{i, primitive_base(v).base.get_str(16), std::nullopt, false};
      if (box.oracle_below > 0 && v < box.oracle_below) {
        e.factors = factor(v);
        e.has_factors = true;
      }
      big.push_back(std::move(e));
    }
  }
  const auto total = static_cast<unsigned long long>(box.n_max - lo + 1);
  batch.summary.pairs = total * (total - 1) / 2;
  batch.summary.pairs_both_at_least_2 = big.size() * (big.size() - (big.empty() ? 0 : 1)) / 2;
  batch.summary.degenerate_pairs = batch.summary.pairs - batch.summary.pairs_both_at_least_2;

  const auto emit = [&](long n, long m, const DependenceVerdict& v) {
    SearchRecord r;
    r.k = k;
    r.n = n;
    r.m = m;
    r.p_n = table.at(n);
    r.p_m = table.at(m);
    r.verdict = v;
    if (box.x_max > 0 && !v.degenerate) {
      r.direct_agrees = !direct_solutions(r.p_n, r.p_m, box.x_max).empty();
      if (!*r.direct_agrees) ++batch.summary.direct_disagreements;
    }
    batch.records.push_back(std::move(r));
  };

  // (k, n, m) order: n ascending, then m ascending
  for (long n = lo + 1; n <= box.n_max; ++n) {
    const BigInt& pn = table.at(n);
    for (long m = lo; m < n; ++m) {
      const BigInt& pm = table.at(m);
      const bool both = pn >= 2 && pm >= 2;
      if (both) {
        const auto& en = big[static_cast<std::size_t>(slot[static_cast<std::size_t>(n - lo)])];
        const auto& em = big[static_cast<std::size_t>(slot[static_cast<std::size_t>(m - lo)])];
        if (en.has_factors && em.has_factors) {
          if (!en.factors || !em.factors) {
            ++batch.summary.oracle_unavailable;
          } else {
            ++batch.summary.oracle_checked;
            const bool oracle = proportional(*en.factors, *em.factors);
            const bool fast = mul_dep(pn, pm, Definition::Strict).dependent;
            if (oracle != fast) ++batch.summary.oracle_disagreements;
          }
        }
        if (en.base_key != em.base_key) continue;
        bool counted = false;
        for (std::size_t d = 0; d < box.definitions.size(); ++d) {
          const auto v = mul_dep(pn, pm, box.definitions[d]);
          if (!v.dependent) continue;
          ++batch.summary.dependent_by_definition[d].second;
          if (!counted) ++batch.summary.dependent_both_at_least_2;
          counted = true;
          emit(n, m, v);
        }
      } else {
        bool counted = false;
        for (std::size_t d = 0; d < box.definitions.size(); ++d) {
          const auto v = mul_dep(pn, pm, box.definitions[d]);
          if (!v.dependent) continue;
          ++batch.summary.dependent_by_definition[d].second;
          if (!counted) ++batch.summary.dependent_degenerate;
          counted = true;
          emit(n, m, v);
        }
      }
    }
  }
  return batch;
}

}  // namespace

SearchSummary search(const SearchBox& box, const std::function<void(const SearchRecord&)>& sink) {
  box.validate();
  const int count = box.k_max - box.k_min + 1;
  std::vector<std::optional<Batch>> slots(static_cast<std::size_t>(count));
  std::mutex mu;
  std::condition_variable cv;
  int next = 0;
  std::exception_ptr failure;

  const auto worker = [&]() {
    for (;;) {
      int idx;
      {
        std::lock_guard lock(mu);
        if (next >= count || failure) return;
        idx = next++;
      }
      try {
        Batch b = search_k(box, box.k_min + idx);
        std::lock_guard lock(mu);
        slots[static_cast<std::size_t>(idx)] = std::move(b);
      } catch (...) {
        std::lock_guard lock(mu);
        failure = std::current_exception();
      }
      cv.notify_all();
    }
  };
  unsigned threads = box.threads ? box.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);

  SearchSummary total;
  for (auto d : box.definitions) total.dependent_by_definition.emplace_back(d, 0);
  for (int i = 0; i < count; ++i) {
    Batch b;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return slots[static_cast<std::size_t>(i)].has_value() || failure; });
      if (failure) break;
      b = std::move(*slots[static_cast<std::size_t>(i)]);
      slots[static_cast<std::size_t>(i)].reset();
    }
    for (const auto& r : b.records) sink(r);
    add(total, b.summary);
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return total;
}

std::string to_jsonl(const SearchRecord& r) {
  nlohmann::json j = {
      {"k", r.k},
      {"n", r.n},
      {"m", r.m},
      {"P_n", to_decimal(r.p_n)},
      {"P_m", to_decimal(r.p_m)},
      {"verdict", r.verdict.verdict()},
      {"definition", to_string(r.verdict.definition)},
      {"degenerate", r.verdict.degenerate},
  };
  if (!r.verdict.reason.empty()) j["reason"] = r.verdict.reason;
  if (r.verdict.witness) {
    j["witness"] = {{"c", to_decimal(r.verdict.witness->c)}, {"s", r.verdict.witness->s}, {"t", r.verdict.witness->t}};
  }
  if (r.verdict.exponents) j["exponents"] = {r.verdict.exponents->first, r.verdict.exponents->second};
  if (r.direct_agrees) j["direct_check"] = *r.direct_agrees;
  return j.dump();
}

std::string summary_json(const SearchBox& box, const SearchSummary& s) {
  nlohmann::json defs = nlohmann::json::object();
  for (const auto& [d, c] : s.dependent_by_definition) defs[to_string(d)] = c;
  nlohmann::json j = {
      {"type", "summary"},
      {"k_min", box.k_min},
      {"k_max", box.k_max},
      {"n_max", box.n_max},
      {"pairs", s.pairs},
      {"pairs_both_at_least_2", s.pairs_both_at_least_2},
      {"dependent_both_at_least_2", s.dependent_both_at_least_2},
      {"degenerate_pairs", s.degenerate_pairs},
      {"dependent_degenerate", s.dependent_degenerate},
      {"dependent_by_definition", defs},
      {"oracle_checked", s.oracle_checked},
      {"oracle_disagreements", s.oracle_disagreements},
      {"oracle_unavailable", s.oracle_unavailable},
      {"direct_disagreements", s.direct_disagreements},
  };
  if (box.m_min) j["m_min"] = *box.m_min;
  return j.dump();
}

}  // namespace kpell

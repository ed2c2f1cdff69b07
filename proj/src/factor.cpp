#include "kpell/factor.hpp"

#include <mutex>
#include <numeric>
#include <unordered_map>

#include "kpell/errors.hpp"

namespace kpell {

namespace {

bool is_probable_prime(const BigInt& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Brent's variant of Pollard rho with batched gcds; 0 on failure.
BigInt pollard_brent(const BigInt& n, unsigned long c0, unsigned long budget) {
  if (n % 2 == 0) return 2;
  const BigInt c = c0;
  BigInt y = 2, x, ys, q = 1, g = 1, t;
  unsigned long r = 1, spent = 0;
  const unsigned long batch = 128;
  const auto f = [&](BigInt& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      const unsigned long lim = std::min(batch, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        f(y);
        t = x - y;
        q = q * abs(t);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += lim;
      spent += lim;
      if (spent > budget) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      f(ys);
      t = x - ys;
      t = abs(t);
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? BigInt(0) : g;
}

bool split(const BigInt& n, Factorization& out, unsigned long budget) {
  if (n == 1) return true;
  if (is_probable_prime(n)) {
    out[n] += 1;
    return true;
  }
  bool exact = false;
  for (unsigned long e = 2; e <= 8; ++e) {
    const BigInt r = integer_root(n, e, exact);
    if (exact) {
      Factorization sub;
      if (!split(r, sub, budget)) return false;
      for (const auto& [p, m] : sub) out[p] += m * e;
      return true;
    }
  }
  for (unsigned long c = 1; c <= 6; ++c) {
    const BigInt d = pollard_brent(n, c, budget);
    if (d != 0 && d != 1 && d != n) return split(d, out, budget) && split(n / d, out, budget);
  }
  return false;
}

}  // namespace

std::optional<Factorization> factor(const BigInt& n0, unsigned long rho_budget) {
  if (n0 < 1) throw DomainError("factor: n must be positive");
  Factorization out;
  BigInt n = n0;
  for (unsigned long p = 2; p < 10000; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      unsigned long e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      out[BigInt(p)] = e;
    }
    if (n == 1) return out;
  }
  if (!split(n, out, rho_budget)) return std::nullopt;
  return out;
}

std::optional<bool> mul_dep_oracle(const BigInt& a, const BigInt& b) {
  if (a < 2 || b < 2) throw DomainError("mul_dep_oracle: needs a, b >= 2");
  static std::mutex mu;
  static std::unordered_map<std::string, std::optional<Factorization>> memo;
  const auto get = [&](const BigInt& v) {
    const std::string key = v.get_str(16);
    {
      std::lock_guard lock(mu);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    auto f = factor(v);
    std::lock_guard lock(mu);
    memo.emplace(key, f);
    return f;
  };
  const auto fa = get(a), fb = get(b);
  if (!fa || !fb) return std::nullopt;
  if (fa->size() != fb->size()) return false;
  // a^x = b^y  <=>  e_a(p) * eb0 == e_b(p) * ea0 for every p, same support
  const unsigned long ea0 = fa->begin()->second;
  const unsigned long eb0 = fb->begin()->second;
  auto ia = fa->begin();
  auto ib = fb->begin();
  for (; ia != fa->end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (ia->second * eb0 != ib->second * ea0) return false;
  }
  return true;
}

}  // namespace kpell

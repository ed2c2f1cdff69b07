#include <doctest.h>

#include <random>
#include <set>

#include "kpell/dependence.hpp"
#include "kpell/errors.hpp"
#include "kpell/factor.hpp"
#include "kpell/sequences.hpp"

using namespace kpell;

namespace {

// Independent check: a^x = b^y for the witness-derived exponents.
bool recomposes(const DependenceVerdict& v) {
  if (!v.witness) return false;
  const auto& w = *v.witness;
  return ipow(w.c, w.s) == abs(v.a) && ipow(w.c, w.t) == abs(v.b) && !mpz_perfect_power_p(w.c.get_mpz_t());
}

}  // namespace

TEST_CASE("primitive base examples") {
  CHECK(primitive_base(BigInt(169)).base == 13);
  CHECK(primitive_base(BigInt(169)).exponent == 2);
  CHECK(primitive_base(BigInt(8)).base == 2);
  CHECK(primitive_base(BigInt(8)).exponent == 3);
  CHECK(primitive_base(BigInt(12)).base == 12);
  CHECK(primitive_base(BigInt(12)).exponent == 1);
  CHECK(primitive_base(BigInt(64)).exponent == 6);
  CHECK(primitive_base(ipow(BigInt(6), 30)).base == 6);
  CHECK(primitive_base(ipow(BigInt(6), 30)).exponent == 30);
  CHECK(primitive_base(ipow(BigInt(10), 77)).exponent == 77);
  CHECK_THROWS_AS(primitive_base(BigInt(1)), DomainError);
}

TEST_CASE("mul_dep examples") {
  const auto v = mul_dep(2, 8, Definition::Strict);
  CHECK(v.dependent);
  CHECK(v.witness->c == 2);
  CHECK(v.witness->s == 1);
  CHECK(v.witness->t == 3);
  CHECK(v.exponents == std::make_pair(3L, 1L));
  CHECK_FALSE(mul_dep(5, 169, Definition::Strict).dependent);
  const auto s1 = mul_dep(1, 7, Definition::Strict);
  CHECK_FALSE(s1.dependent);
  CHECK(s1.degenerate);
  const auto l1 = mul_dep(1, 7, Definition::Lattice);
  CHECK(l1.dependent);
  CHECK(l1.exponents == std::make_pair(1L, 0L));
  CHECK(mul_dep(1, 1, Definition::Strict).dependent);
  CHECK_FALSE(mul_dep(0, 5, Definition::Strict).dependent);
  CHECK_FALSE(mul_dep(0, 5, Definition::Lattice).dependent);
  CHECK_FALSE(mul_dep(0, 0, Definition::Strict).dependent);
  CHECK(mul_dep(0, 1, Definition::Lattice).dependent);
  CHECK(mul_dep(7, 1, Definition::Lattice).exponents == std::make_pair(0L, 1L));
  const auto neg = mul_dep(-8, 2, Definition::Strict);
  CHECK(neg.dependent);
  CHECK(neg.degenerate);
  // (-8)^2 = 2^6
  CHECK(neg.exponents == std::make_pair(2L, 6L));
  CHECK(mul_dep(-1, 1, Definition::Strict).dependent);
  CHECK_FALSE(mul_dep(-1, 3, Definition::Strict).dependent);
}

TEST_CASE("oracle examples") {
  CHECK(mul_dep_oracle(12, 18) == false);
  CHECK(mul_dep_oracle(4, 32) == true);
  CHECK(mul_dep_oracle(36, 216) == true);
  const auto f = factor(BigInt("1000000000000000000000000000"));
  REQUIRE(f);
  CHECK(f->at(2) == 27);
  CHECK(f->at(5) == 27);
  // product of two ~12-digit primes needs the rho stage
  const BigInt p("100000000003"), q("999999999989");
  const auto pq = factor(p * q);
  REQUIRE(pq);
  CHECK(pq->size() == 2);
  CHECK(pq->count(p) == 1);
}

TEST_CASE("mul_dep agrees with the factorization oracle on random pairs") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> u(2, 1000000);
  std::uniform_int_distribution<long> small(2, 40);
  for (int i = 0; i < 10000; ++i) {
    BigInt a, b;
    if (i % 4 == 0) {
      // force dependent pairs
      const BigInt c = small(rng);
      a = ipow(c, 1 + rng() % 3);
      b = ipow(c, 1 + rng() % 3);
    } else {
      a = u(rng);
      b = u(rng);
    }
    const auto v = mul_dep(a, b, Definition::Strict);
    const auto o = mul_dep_oracle(a, b);
    REQUIRE(o.has_value());
    CHECK(v.dependent == *o);
    if (v.dependent) CHECK(recomposes(v));
  }
}

TEST_CASE("symmetry and power closure") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    const BigInt a = 2 + rng() % 5000;
    const BigInt b = 2 + rng() % 5000;
    const auto ab = mul_dep(a, b, Definition::Strict), ba = mul_dep(b, a, Definition::Strict);
    CHECK(ab.dependent == ba.dependent);
    if (ab.dependent) {
      CHECK(ab.witness->s == ba.witness->t);
      CHECK(ab.witness->t == ba.witness->s);
    }
    for (unsigned long j = 1; j <= 5; ++j) {
      const auto p = mul_dep(a, ipow(a, j), Definition::Strict);
      CHECK(p.dependent);
      CHECK(recomposes(p));
    }
  }
}

TEST_CASE("direct equation") {
  const auto sols = direct_solutions(8, 2, 4);
  REQUIRE(sols.size() == 4);
  CHECK(sols[0] == std::make_pair(1L, 3L));
  CHECK(sols[1] == std::make_pair(2L, 6L));
  CHECK(check_direct_equation(3, 10, 5, 300).empty());
  CHECK_THROWS_AS(check_direct_equation(2, 2, 2, 10), PreconditionError);
}

TEST_CASE("k = 2 classical Pell has no strict dependent pairs with terms >= 2") {
  SearchBox box;
  box.k_min = box.k_max = 2;
  box.n_max = 60;
  box.m_min = 0;
  std::vector<SearchRecord> out;
  const auto s = search(box, [&](const SearchRecord& r) { out.push_back(r); });
  CHECK(s.dependent_both_at_least_2 == 0);
  CHECK(out.empty());
  // (n, m) = (3, 0) is a degenerate pair, not a strict dependence
  const auto v = mul_dep(term(SequenceSpec::pell(2), 3), term(SequenceSpec::pell(2), 0), Definition::Strict);
  CHECK(v.degenerate);
  CHECK_FALSE(v.dependent);
}

TEST_CASE("search matches a naive loop over the direct equation") {
  SearchBox box;
  box.k_min = 2;
  box.k_max = 6;
  box.n_max = 24;
  box.definitions = {Definition::Strict, Definition::Lattice};
  box.threads = 3;
  std::set<std::tuple<int, long, long>> found;
  std::vector<std::tuple<int, long, long>> order;
  search(box, [&](const SearchRecord& r) {
    order.emplace_back(r.k, r.n, r.m);
    if (r.p_n >= 2 && r.p_m >= 2) found.emplace(r.k, r.n, r.m);
  });
  CHECK(std::is_sorted(order.begin(), order.end()));
  std::set<std::tuple<int, long, long>> naive;
  for (int k = 2; k <= 6; ++k)
    for (long n = 2 - k; n <= 24; ++n)
      for (long m = 2 - k; m < n; ++m) {
        const BigInt pn = term(SequenceSpec::pell(k), n), pm = term(SequenceSpec::pell(k), m);
        if (pn < 2 || pm < 2) continue;
        if (!direct_solutions(pn, pm, 40).empty()) naive.emplace(k, n, m);
      }
  CHECK(found == naive);
}

TEST_CASE("k-Pell pairs below 10^25 agree with the oracle") {
  SearchBox box;
  box.k_min = 2;
  box.k_max = 12;
  box.n_max = 60;
  box.oracle_below = BigInt("10000000000000000000000000");
  const auto s = search(box, [](const SearchRecord&) {});
  CHECK(s.oracle_checked > 1000);
  CHECK(s.oracle_disagreements == 0);
  CHECK(s.oracle_unavailable == 0);
  CHECK(s.dependent_both_at_least_2 == 0);
}

TEST_CASE("lattice definition reports pairs with P_1 = 1") {
  SearchBox box;
  box.k_min = box.k_max = 3;
  box.n_max = 10;
  box.definitions = {Definition::Lattice};
  std::vector<SearchRecord> out;
  search(box, [&](const SearchRecord& r) { out.push_back(r); });
  bool saw_one = false;
  for (const auto& r : out) {
    CHECK(r.verdict.degenerate);
    if (r.m == 1 || r.n == 1) saw_one = true;
  }
  CHECK(saw_one);
  CHECK(to_jsonl(out.front()).find("\"definition\":\"lattice\"") != std::string::npos);
}

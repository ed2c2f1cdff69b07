#include <doctest.h>

#include "kpell/errors.hpp"
#include "kpell/sequences.hpp"
#include "oracles.hpp"

using namespace kpell;

TEST_CASE("term examples") {
  CHECK(term(SequenceSpec::pell(2), 0) == 0);
  CHECK(term(SequenceSpec::pell(2), 7) == 169);
  CHECK(term(SequenceSpec::pell(3), 4) == 13);
  CHECK(term(SequenceSpec::fibonacci(2), 10) == 55);
  CHECK(fibonacci(10) == 55);
  CHECK_THROWS_AS(term(SequenceSpec::pell(4), -3), DomainError);
  CHECK(term(SequenceSpec::pell(4), -2) == 0);
}

TEST_CASE("terms match the naive recurrence oracle") {
  for (int k = 2; k <= 12; ++k) {
    for (long r : {1L, 2L, 3L}) {
      const SequenceSpec spec{k, r, 0, 1};
      const auto want = oracle::naive_terms(k, r, 0, 1, 80);
      const auto table = TermTable::build(spec, 80);
      REQUIRE(table.lo() == 2 - k);
      for (long n = 2 - k; n <= 80; ++n) CHECK(table.at(n) == want[static_cast<std::size_t>(n - (2 - k))]);
      CHECK(table.verify_recurrence());
    }
  }
  // nonstandard initial values
  const SequenceSpec odd{3, 2, 5, -2};
  const auto want = oracle::naive_terms(3, 2, 5, -2, 40);
  for (long n = -1; n <= 40; ++n) CHECK(term(odd, n) == want[static_cast<std::size_t>(n + 1)]);
}

TEST_CASE("window and shift robustness") {
  const auto spec = SequenceSpec::pell(5);
  const auto full = TermTable::build(spec, 150);
  const auto win = TermTable::window(spec, 90, 150);
  for (long n = 90; n <= 150; ++n) CHECK(win.at(n) == full.at(n));
  const auto wider = cached_table(spec, 300);
  for (long n = -3; n <= 150; ++n) CHECK(wider->at(n) == full.at(n));
  CHECK_THROWS_AS(win.at(89), DomainError);
}

TEST_CASE("TermStream seeks") {
  TermStream s(SequenceSpec::pell(2));
  s.seek(7);
  CHECK(s.current() == 169);
  s.advance();
  CHECK(s.current() == 408);
}

TEST_CASE("monotonicity in n and k") {
  for (int k = 2; k <= 20; ++k) {
    const auto t = cached_table(SequenceSpec::pell(k), 120);
    for (long n = 2; n <= 120; ++n) CHECK(t->at(n) > t->at(n - 1));
    if (k > 2) {
      const auto prev = cached_table(SequenceSpec::pell(k - 1), 120);
      for (long n = 1; n <= 120; ++n) CHECK(t->at(n) >= prev->at(n));
    }
  }
}

TEST_CASE("Kilic segment holds for 2 <= k <= 30") {
  CHECK(check_kilic_segment(3, 4).rhs == 13);
  CHECK(check_kilic_segment(5, 6).lhs == 89);
  for (int k = 2; k <= 30; ++k) {
    for (long n = 1; n <= k + 1; ++n) {
      const auto c = check_kilic_segment(k, n);
      CHECK(c.pass);
      CHECK(c.lhs == oracle::naive_pell(k, n));
      CHECK(c.rhs == oracle::naive_fib(2 * n - 1));
    }
  }
  CHECK_THROWS_AS(check_kilic_segment(3, 5), DomainError);
  CHECK_THROWS_AS(check_kilic_segment(3, 0), DomainError);
}

TEST_CASE("Kilic tail transcribed verbatim") {
  for (int k = 2; k <= 10; ++k) {
    for (long n = k + 2; n <= 2 * k + 2; ++n) {
      const auto c = check_kilic_tail(k, n);
      mpz_class sum = 0;
      for (long j = 1; j <= n - k - 1; ++j) sum += oracle::naive_fib(2 * j - 1) * oracle::naive_fib(2 * (n - k - 1));
      CHECK(c.lhs == oracle::naive_pell(k, n));
      CHECK(c.rhs == oracle::naive_fib(2 * n - 1) - sum);
      CHECK(c.residual == c.lhs - c.rhs);
      CHECK(c.pass == (c.residual == 0));
    }
  }
  CHECK_THROWS_AS(check_kilic_tail(2, 3), DomainError);
  CHECK_THROWS_AS(check_kilic_tail(2, 7), DomainError);
}

TEST_CASE("power-of-two segment fails from n = 3") {
  CHECK(check_power_of_two_segment(3, 2).pass);
  const auto c = check_power_of_two_segment(3, 3);
  CHECK_FALSE(c.pass);
  CHECK(c.lhs == 5);
  CHECK(c.rhs == 4);
  CHECK_FALSE(check_power_of_two_segment(4, 4).pass);
  CHECK(check_power_of_two_segment(4, 4).lhs == 13);
}

TEST_CASE("Cooper-Howard expansion by direct formula") {
  const auto e = cooper_howard(2, 4);
  CHECK(e.ell == 2);
  REQUIRE(e.coefficients.size() == 1);
  CHECK(e.coefficients[0] == 0);
  CHECK(e.predicted == 8);
  CHECK_FALSE(check_cooper_howard(2, 4).pass);
  CHECK(check_cooper_howard(2, 4).lhs == 12);

  for (int k = 2; k <= 8; ++k) {
    for (long n = k + 2; n <= 60; ++n) {
      const auto x = cooper_howard(k, n);
      const long ell = (n + k) / (k + 1);
      CHECK(x.ell == ell);
      mpz_class want = 0;
      mpz_ui_pow_ui(want.get_mpz_t(), 2, static_cast<unsigned long>(n - 1));
      for (long j = 1; j <= ell - 1; ++j) {
        const mpz_class c = (j % 2 ? -1 : 1) * (oracle::pascal(n - j * k, j + 1) - oracle::pascal(n - j * k - 2, j - 1));
        CHECK(x.coefficients[static_cast<std::size_t>(j - 1)] == c);
        const long e = n - (k + 1) * j - 1;
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
        want += c * p;
      }
      CHECK(x.predicted == want);
    }
  }
  CHECK_THROWS_AS(cooper_howard(3, 4), DomainError);
}

TEST_CASE("binomial zero convention") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(2, 5) == 0);
  CHECK(binomial(-1, 0) == 0);
  CHECK(binomial(3, -1) == 0);
  for (long a = 0; a <= 30; ++a)
    for (long b = 0; b <= a; ++b) CHECK(binomial(a, b) == oracle::pascal(a, b));
}

TEST_CASE("table cache honours its budget") {
  clear_table_cache();
  set_table_cache_budget(1 << 16);
  for (int k = 2; k <= 40; ++k) cached_table(SequenceSpec::pell(k), 400);
  CHECK(table_cache_bytes() <= (1 << 16) + 200000);
  set_table_cache_budget(256u << 20);
  clear_table_cache();
}

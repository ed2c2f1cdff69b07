#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kpell/interval.hpp"
#include "kpell/polynomial.hpp"
#include "kpell/roots.hpp"

namespace kpell {

inline constexpr long kDefaultBits = 320;
inline constexpr long kMaxBits = 4096;

// x^k - 2x^(k-1) - x^(k-2) - ... - x - 1
IntPoly psi_polynomial(int k);
// (k+1)x^2 - 3kx + (k-1), the denominator of g_k
IntPoly g_denominator(int k);
Interval golden_ratio(mpfr_prec_t prec);

// Per-k bundle of certified enclosures. Immutable once built.
struct AlgebraicContext {
  int k = 0;
  long bits = 0;  // published precision; enclosure widths are <= 2^-bits
  IntPoly psi;
  Interval phi;
  Interval bracket_lo;  // phi^2 (1 - phi^-k)
  Interval bracket_hi;  // phi^2
  Interval alpha;
  Interval log_alpha;
  Interval g_alpha;
  Interval tau;  // log g_k(alpha) / log alpha

  // Filled when conjugates were requested: roots[0] is the dominant root.
  std::vector<RootDisc> roots;
  std::vector<ComplexInterval> g_conjugates;  // g_k(alpha^(i)), i >= 2

  bool alpha_in_bracket = false;
  bool psi_straddles_zero = false;
  bool conjugates_inside_unit_circle = false;
  bool vieta_consistent = false;
  bool has_conjugates() const { return !roots.empty(); }

  // max_{i >= 2} |alpha^(i)| and |g_k(alpha^(i))| (upper ends).
  Interval max_conjugate_modulus() const;
  Interval max_conjugate_g() const;
};

// Builds the context at `bits` precision, escalating x2 up to kMaxBits if a
// certification fails. Conjugates cost O(k^2) multiprecision work; callers
// that only need alpha, g_k(alpha) and tau pass with_conjugates = false.
AlgebraicContext build_context(int k, long bits = kDefaultBits, bool with_conjugates = true);

// Process-wide (k, bits, conjugates) -> context cache with single-flight
// construction.
std::shared_ptr<const AlgebraicContext> cached_context(int k, long bits = kDefaultBits,
                                                       bool with_conjugates = true);

// g_k(z) = (z - 1) / ((k+1)z^2 - 3kz + k - 1). PrecisionError if the
// denominator enclosure contains zero.
Interval eval_g(int k, const Interval& z);
ComplexInterval eval_g(int k, const ComplexInterval& z);

// |P_n^(k) - g_k(alpha) alpha^n| for n >= 2 - k.
Interval binet_residual(const AlgebraicContext& ctx, long n);
// sum_i g_k(alpha^(i)) (alpha^(i))^n; requires conjugates.
ComplexInterval binet_sum(const AlgebraicContext& ctx, long n);

struct GrowthCheck {
  long n = 0;
  bool lower_ok = false;  // alpha^(n-2) <= P_n
  bool upper_ok = false;  // P_n <= alpha^(n-1)
};
GrowthCheck growth_sandwich(const AlgebraicContext& ctx, long n);

// Weil height of g_k(alpha) from its minimal polynomial, obtained as the
// squarefree part of Res_x(Psi_k(x), ((k+1)x^2 - 3kx + k - 1) y - (x - 1)).
struct HeightCertificate {
  std::string subject;
  int k = 0;
  IntPoly resultant;
  IntPoly minpoly;
  int degree = 0;
  bool irreducible_by_degree = false;  // degree == k, so minpoly generates Q(alpha)
  std::string note;
  Interval log_leading;
  Interval height;
  std::optional<Interval> height_from_minpoly_roots;
  Interval minpoly_at_subject;
  Interval bound;  // 4 log k
  bool below_bound = false;
};

HeightCertificate minpoly_via_resultant(int k, long bits = kDefaultBits);

// h(p/q) = log max(|p|, q). DomainError for q = 0; the fraction is reduced first.
Interval height_rational(const BigInt& p, const BigInt& q, mpfr_prec_t prec = 128);
Interval height_rational(const BigRational& v, mpfr_prec_t prec = 128);

struct HeightRuleCheck {
  bool product = false;    // h(eta gamma) <= h(eta) + h(gamma)
  bool quotient = false;   // h(eta / gamma) <= h(eta) + h(gamma)
  bool sum = false;        // h(eta + gamma) <= h(eta) + h(gamma) + log 2
  bool difference = false; // h(eta - gamma) <= h(eta) + h(gamma) + log 2
  bool power = false;      // h(eta^s) = |s| h(eta)
  bool all() const { return product && quotient && sum && difference && power; }
};
HeightRuleCheck check_height_rules(const BigRational& eta, const BigRational& gamma, long s);

// (1/k) sum_i log max(|alpha^(i)|, 1); equals (1/k) log alpha.
Interval height_of_alpha(const AlgebraicContext& ctx);

// On-disk cache of dominant-root data, one JSON file per (k, bits) with an
// embedded content hash. Records failing the hash check are ignored.
void save_context_record(const std::filesystem::path& dir, const AlgebraicContext& ctx);
std::optional<AlgebraicContext> load_context_record(const std::filesystem::path& dir, int k, long bits);

}  // namespace kpell

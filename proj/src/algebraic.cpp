#include "kpell/algebraic.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <future>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "kpell/errors.hpp"
#include "kpell/sequences.hpp"

namespace kpell {

IntPoly psi_polynomial(int k) {
  if (k < 2) throw DomainError("psi_polynomial: k must be >= 2");
  std::vector<BigInt> c(static_cast<std::size_t>(k) + 1, BigInt(-1));
  c[static_cast<std::size_t>(k)] = 1;
  c[static_cast<std::size_t>(k) - 1] = -2;
  return IntPoly(std::move(c));
}

IntPoly g_denominator(int k) { return IntPoly{k - 1L, -3L * k, k + 1L}; }

Interval golden_ratio(mpfr_prec_t prec) {
  return (Interval::exact(1, prec) + sqrt(Interval::exact(5, prec))) / Interval::exact(2, prec);
}

Interval AlgebraicContext::max_conjugate_modulus() const {
  if (roots.size() < 2) throw DomainError("context built without conjugates");
  Interval m = roots[1].modulus;
  for (std::size_t i = 2; i < roots.size(); ++i) m = max(m, roots[i].modulus);
  return m;
}

Interval AlgebraicContext::max_conjugate_g() const {
  if (g_conjugates.empty()) throw DomainError("context built without conjugates");
  Interval m = abs(g_conjugates[0]);
  for (std::size_t i = 1; i < g_conjugates.size(); ++i) m = max(m, abs(g_conjugates[i]));
  return m;
}

Interval eval_g(int k, const Interval& z) {
  const Interval den = sqr(z) * (k + 1L) - z * (3L * k) + (k - 1L);
  return (z - 1L) / den;
}

ComplexInterval eval_g(int k, const ComplexInterval& z) {
  const ComplexInterval den = z * z * (k + 1L) - z * (3L * k) + (k - 1L);
  if (den.contains_zero()) throw PrecisionError("eval_g: denominator encloses zero");
  return (z - 1L) / den;
}

namespace {

bool vieta_check(const IntPoly& psi, const std::vector<RootDisc>& roots, mpfr_prec_t prec) {
  // expand prod (x - r_i) and compare with the integer coefficients
  std::vector<ComplexInterval> c;
  c.emplace_back(Interval::exact(1, prec), Interval::exact(0, prec));
  for (const auto& r : roots) {
    std::vector<ComplexInterval> next(c.size() + 1, ComplexInterval(Interval::exact(0, prec), Interval::exact(0, prec)));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] = next[i + 1] + c[i];
      next[i] = next[i] - c[i] * r.box;
    }
    c = std::move(next);
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    const BigRational want(psi.coeff(static_cast<int>(i)));
    if (!c[i].re.contains(want) || !c[i].im.contains(0)) return false;
  }
  return true;
}

AlgebraicContext build_at(int k, long bits, bool with_conjugates) {
  const mpfr_prec_t prec = bits + 32;
  AlgebraicContext ctx;
  ctx.k = k;
  ctx.bits = bits;
  ctx.psi = psi_polynomial(k);
  ctx.phi = golden_ratio(prec);
  const Interval phi2 = sqr(ctx.phi);
  ctx.bracket_hi = phi2;
  ctx.bracket_lo = phi2 * (Interval::exact(1, prec) - pow(ctx.phi, -static_cast<long>(k)));

  ctx.alpha = isolate_real_root(ctx.psi, ctx.bracket_lo, ctx.bracket_hi, prec, bits);
  if (ctx.alpha.log2_width() > -static_cast<double>(bits)) {
    throw PrecisionError("dominant root enclosure wider than 2^-" + std::to_string(bits));
  }
  ctx.alpha_in_bracket = certainly_less(ctx.bracket_lo, ctx.alpha) && certainly_less(ctx.alpha, ctx.bracket_hi);
  const Interval at_lo = ctx.psi.eval(Interval(ctx.alpha.lo(), ctx.alpha.lo()));
  const Interval at_hi = ctx.psi.eval(Interval(ctx.alpha.hi(), ctx.alpha.hi()));
  ctx.psi_straddles_zero = (at_lo.negative() && at_hi.positive()) || (at_lo.positive() && at_hi.negative());
  if (!ctx.psi_straddles_zero) throw PrecisionError("Psi_k does not change sign across the alpha enclosure");

  ctx.log_alpha = log(ctx.alpha);
  ctx.g_alpha = eval_g(k, ctx.alpha);
  ctx.tau = log(ctx.g_alpha) / ctx.log_alpha;

  if (with_conjugates) {
    ctx.roots = certified_roots(ctx.psi, prec);
    const RootDisc& dom = ctx.roots.front();
    const bool dominant_matches = dom.box.im.contains(0) && compare(dom.box.re.lo(), ctx.alpha.hi()) <= 0 &&
                                  compare(ctx.alpha.lo(), dom.box.re.hi()) <= 0;
    if (!dominant_matches) throw CertificationError("largest root disc does not contain the isolated alpha");
    ctx.conjugates_inside_unit_circle = true;
    for (std::size_t i = 1; i < ctx.roots.size(); ++i) {
      if (!certainly_less(ctx.roots[i].modulus, 1)) ctx.conjugates_inside_unit_circle = false;
      ctx.g_conjugates.push_back(eval_g(k, ctx.roots[i].box));
    }
    if (!ctx.conjugates_inside_unit_circle) {
      throw CertificationError("could not certify |alpha^(i)| < 1 for all conjugates");
    }
    ctx.vieta_consistent = vieta_check(ctx.psi, ctx.roots, prec);
  }
  return ctx;
}

}  // namespace

AlgebraicContext build_context(int k, long bits, bool with_conjugates) {
  if (k < 2) throw DomainError("build_context: k must be >= 2");
  if (bits < 128) throw DomainError("build_context: precision must be >= 128 bits");
  for (long b = bits;; b *= 2) {
    try {
      return build_at(k, b, with_conjugates);
    } catch (const CertificationError&) {
      if (b * 2 > kMaxBits) throw;
    } catch (const PrecisionError&) {
      if (b * 2 > kMaxBits) throw;
    }
  }
}

namespace {

using CtxKey = std::tuple<int, long, bool>;

struct ContextCache {
  std::mutex mu;
  std::map<CtxKey, std::shared_future<std::shared_ptr<const AlgebraicContext>>> entries;
};

ContextCache& context_cache() {
  static ContextCache cache;
  return cache;
}

}  // namespace

std::shared_ptr<const AlgebraicContext> cached_context(int k, long bits, bool with_conjugates) {
  auto& cache = context_cache();
  std::promise<std::shared_ptr<const AlgebraicContext>> promise;
  std::shared_future<std::shared_ptr<const AlgebraicContext>> fut;
  bool builder = false;
  {
    std::lock_guard lock(cache.mu);
    const CtxKey key{k, bits, with_conjugates};
    auto it = cache.entries.find(key);
    if (it == cache.entries.end() && !with_conjugates) {
      // a context with conjugates serves dominant-only requests as well
      auto full = cache.entries.find(CtxKey{k, bits, true});
      if (full != cache.entries.end()) it = full;
    }
    if (it != cache.entries.end()) {
      fut = it->second;
    } else {
      fut = promise.get_future().share();
      cache.entries.emplace(key, fut);
      builder = true;
    }
  }
  if (builder) {
    try {
      promise.set_value(std::make_shared<const AlgebraicContext>(build_context(k, bits, with_conjugates)));
    } catch (...) {
      promise.set_exception(std::current_exception());
      std::lock_guard lock(cache.mu);
      cache.entries.erase(CtxKey{k, bits, with_conjugates});
    }
  }
  return fut.get();
}

Interval binet_residual(const AlgebraicContext& ctx, long n) {
  const mpfr_prec_t prec = ctx.alpha.precision();
  const BigInt p = term(SequenceSpec::pell(ctx.k), n);
  return abs(Interval::exact(p, prec) - ctx.g_alpha * pow(ctx.alpha, n));
}

ComplexInterval binet_sum(const AlgebraicContext& ctx, long n) {
  if (!ctx.has_conjugates()) throw DomainError("binet_sum needs conjugate roots");
  if (n < 0) throw DomainError("binet_sum: n must be >= 0");
  const mpfr_prec_t prec = ctx.alpha.precision();
  const unsigned long e = static_cast<unsigned long>(n);
  ComplexInterval total(ctx.g_alpha * pow(ctx.alpha, n), Interval::exact(0, prec));
  for (std::size_t i = 1; i < ctx.roots.size(); ++i) {
    total = total + ctx.g_conjugates[i - 1] * pow(ctx.roots[i].box, e);
  }
  return total;
}

GrowthCheck growth_sandwich(const AlgebraicContext& ctx, long n) {
  if (n < 1) throw DomainError("growth sandwich is stated for n >= 1");
  const mpfr_prec_t prec = ctx.alpha.precision();
  const Interval p = Interval::exact(term(SequenceSpec::pell(ctx.k), n), prec);
  const Interval lower = pow(ctx.alpha, n - 2);
  const Interval upper = pow(ctx.alpha, n - 1);
  GrowthCheck g;
  g.n = n;
  g.lower_ok = compare(lower.hi(), p.lo()) <= 0;
  g.upper_ok = compare(p.hi(), upper.lo()) <= 0;
  return g;
}

HeightCertificate minpoly_via_resultant(int k, long bits) {
  if (k < 2) throw DomainError("minpoly_via_resultant: k must be >= 2");
  const auto ctx = cached_context(k, bits, true);
  const mpfr_prec_t prec = ctx->alpha.precision();

  HeightCertificate cert;
  cert.subject = "g_" + std::to_string(k) + "(alpha)";
  cert.k = k;
  // ((k+1)x^2 - 3kx + k - 1) y - (x - 1), as coefficients in x over Z[y]
  const std::vector<IntPoly> g = {
      IntPoly{1, k - 1L},
      IntPoly{-1, -3L * k},
      IntPoly{0, k + 1L},
  };
  cert.resultant = resultant_in_x(ctx->psi, g);
  if (cert.resultant.degree() < 1) throw InconsistencyError("resultant is constant");
  cert.minpoly = squarefree_part(cert.resultant);
  cert.degree = cert.minpoly.degree();
  cert.irreducible_by_degree = cert.degree == k;
  cert.note = cert.irreducible_by_degree
                  ? "degree equals k: generator of Q(alpha), irreducible"
                  : "factor of resultant, irreducibility unverified";
  if (k % cert.degree != 0) throw InconsistencyError("minimal polynomial degree does not divide k");

  cert.minpoly_at_subject = cert.minpoly.eval(ctx->g_alpha);
  if (!cert.minpoly_at_subject.contains_zero()) {
    throw InconsistencyError("no resultant factor vanishes at g_k(alpha)");
  }

  cert.log_leading = log(Interval::exact(cert.minpoly.leading(), prec));
  // Each conjugate of g_k(alpha) appears k/degree times among g_k(alpha^(i)).
  Interval conj_sum = log(max(abs(ctx->g_alpha), Interval::exact(1, prec)));
  for (const auto& gc : ctx->g_conjugates) conj_sum = conj_sum + log(max(abs(gc), Interval::exact(1, prec)));
  cert.height = cert.log_leading / Interval::exact(cert.degree, prec) + conj_sum / Interval::exact(k, prec);

  try {
    const auto roots = certified_roots(cert.minpoly, prec);
    Interval s = cert.log_leading;
    for (const auto& r : roots) s = s + log(max(r.modulus, Interval::exact(1, prec)));
    cert.height_from_minpoly_roots = s / Interval::exact(cert.degree, prec);
  } catch (const CertificationError&) {
    cert.height_from_minpoly_roots.reset();
  }

  cert.bound = log(Interval::exact(k, prec)) * 4L;
  cert.below_bound = certainly_less(cert.height, cert.bound);
  return cert;
}

Interval height_rational(const BigInt& p, const BigInt& q, mpfr_prec_t prec) {
  if (q == 0) throw DomainError("height_rational: zero denominator");
  return height_rational(BigRational(p, q), prec);
}

Interval height_rational(const BigRational& v, mpfr_prec_t prec) {
  BigRational c = v;
  c.canonicalize();
  const BigInt num = abs(c.get_num());
  const BigInt& den = c.get_den();
  if (num == 0) return Interval::exact(0, prec);  // h(0) = 0 by convention
  return log(Interval::exact(num > den ? num : den, prec));
}

HeightRuleCheck check_height_rules(const BigRational& eta, const BigRational& gamma, long s) {
  const mpfr_prec_t prec = 192;
  const Interval he = height_rational(eta, prec);
  const Interval hg = height_rational(gamma, prec);
  const Interval log2 = Interval::log2_const(prec);
  const auto le = [](const Interval& a, const Interval& b) { return compare(a.lo(), b.hi()) <= 0; };
  HeightRuleCheck r;
  r.product = le(height_rational(eta * gamma, prec), he + hg);
  r.quotient = gamma == 0 || le(height_rational(eta / gamma, prec), he + hg);
  r.sum = le(height_rational(eta + gamma, prec), he + hg + log2);
  r.difference = le(height_rational(eta - gamma, prec), he + hg + log2);
  if (eta == 0 && s < 0) {
    r.power = true;
  } else {
    BigRational pw = 1;
    for (long i = 0; i < std::labs(s); ++i) pw *= eta;
    if (s < 0) pw = 1 / pw;
    const Interval lhs = height_rational(pw, prec);
    const Interval rhs = he * std::labs(s);
    r.power = compare(lhs.lo(), rhs.hi()) <= 0 && compare(rhs.lo(), lhs.hi()) <= 0;
  }
  return r;
}

Interval height_of_alpha(const AlgebraicContext& ctx) {
  if (!ctx.has_conjugates()) throw DomainError("height_of_alpha needs conjugate roots");
  const mpfr_prec_t prec = ctx.alpha.precision();
  Interval s = log(max(ctx.alpha, Interval::exact(1, prec)));
  for (std::size_t i = 1; i < ctx.roots.size(); ++i) s = s + log(max(ctx.roots[i].modulus, Interval::exact(1, prec)));
  return s / Interval::exact(ctx.k, prec);
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

nlohmann::json interval_json(const Interval& v) { return {{"lo", v.lo().to_hex()}, {"hi", v.hi().to_hex()}}; }

Interval interval_from_json(const nlohmann::json& j, mpfr_prec_t prec) {
  return Interval(Mpfr::from_hex(j.at("lo").get<std::string>(), prec),
                  Mpfr::from_hex(j.at("hi").get<std::string>(), prec));
}

std::filesystem::path record_path(const std::filesystem::path& dir, int k, long bits) {
  return dir / ("k" + std::to_string(k) + "-b" + std::to_string(bits) + ".json");
}

}  // namespace

void save_context_record(const std::filesystem::path& dir, const AlgebraicContext& ctx) {
  nlohmann::json payload = {
      {"k", ctx.k},
      {"bits", ctx.bits},
      {"alpha", interval_json(ctx.alpha)},
      {"g_alpha", interval_json(ctx.g_alpha)},
      {"tau", interval_json(ctx.tau)},
      {"log_alpha", interval_json(ctx.log_alpha)},
  };
  const std::string body = payload.dump();
  nlohmann::json record = {{"payload", payload}, {"content_hash", std::to_string(fnv1a(body))}};
  std::filesystem::create_directories(dir);
  std::ofstream out(record_path(dir, ctx.k, ctx.bits));
  out << record.dump(1) << "\n";
}

std::optional<AlgebraicContext> load_context_record(const std::filesystem::path& dir, int k, long bits) {
  std::ifstream in(record_path(dir, k, bits));
  if (!in) return std::nullopt;
  try {
    const nlohmann::json record = nlohmann::json::parse(in);
    const nlohmann::json& payload = record.at("payload");
    if (std::to_string(fnv1a(payload.dump())) != record.at("content_hash").get<std::string>()) return std::nullopt;
    if (payload.at("k").get<int>() != k || payload.at("bits").get<long>() != bits) return std::nullopt;
    const mpfr_prec_t prec = bits + 32;
    AlgebraicContext ctx;
    ctx.k = k;
    ctx.bits = bits;
    ctx.psi = psi_polynomial(k);
    ctx.phi = golden_ratio(prec);
    ctx.bracket_hi = sqr(ctx.phi);
    ctx.bracket_lo = ctx.bracket_hi * (Interval::exact(1, prec) - pow(ctx.phi, -static_cast<long>(k)));
    ctx.alpha = interval_from_json(payload.at("alpha"), prec);
    ctx.g_alpha = interval_from_json(payload.at("g_alpha"), prec);
    ctx.tau = interval_from_json(payload.at("tau"), prec);
    ctx.log_alpha = interval_from_json(payload.at("log_alpha"), prec);
    // re-verify the root rather than trusting the file
    const Interval at_lo = ctx.psi.eval(Interval(ctx.alpha.lo(), ctx.alpha.lo()));
    const Interval at_hi = ctx.psi.eval(Interval(ctx.alpha.hi(), ctx.alpha.hi()));
    ctx.psi_straddles_zero = at_lo.negative() && at_hi.positive();
    if (!ctx.psi_straddles_zero) return std::nullopt;
    ctx.alpha_in_bracket = certainly_less(ctx.bracket_lo, ctx.alpha) && certainly_less(ctx.alpha, ctx.bracket_hi);
    return ctx;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace kpell

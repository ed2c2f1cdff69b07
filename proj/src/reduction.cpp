#include "kpell/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "kpell/algebraic.hpp"
#include "kpell/errors.hpp"

namespace kpell {

namespace {

BigInt floor_q(const BigRational& x) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

// Largest integer strictly below every point of x.
long largest_below(const Interval& x) {
  const BigRational hi = x.hi().to_rational();
  BigInt f = floor_q(hi);
  if (BigRational(f) == hi) f -= 1;
  return f.get_si();
}

long bits_for(const BigInt& q) { return 2 * static_cast<long>(bit_length(q)) + 64; }

}  // namespace

int ContinuedFractionExpansion::last_index_at_most(const BigInt& bound) const {
  int idx = -1;
  for (std::size_t j = 0; j < q.size(); ++j)
    if (q[j] <= bound) idx = static_cast<int>(j);
  return idx;
}

int ContinuedFractionExpansion::first_index_above(const BigInt& bound) const {
  for (std::size_t j = 0; j < q.size(); ++j)
    if (q[j] > bound) return static_cast<int>(j);
  return -1;
}

ContinuedFractionExpansion expand_cf(const Interval& x, const BigInt& max_q) {
  if (max_q < 1) throw DomainError("expand_cf: max_q must be >= 1");
  ContinuedFractionExpansion cf;
  cf.value = x;
  cf.bits = x.precision();
  BigRational lo = x.lo().to_rational();
  BigRational hi = x.hi().to_rational();
  BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  for (;;) {
    const BigInt a = floor_q(lo);
    if (floor_q(hi) != a) break;
    cf.quotients.push_back(a);
    const BigInt p = a * p_prev + p_prev2;
    const BigInt q = a * q_prev + q_prev2;
    cf.p.push_back(p);
    cf.q.push_back(q);
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    if (q > max_q) return cf;
    const BigRational flo = lo - a, fhi = hi - a;
    if (flo == 0 || fhi == 0) break;  // an endpoint is rational with this expansion
    lo = 1 / fhi;
    hi = 1 / flo;
    lo.canonicalize();
    hi.canonicalize();
  }
  throw InsufficientPrecision("continued fraction: enclosure too wide to reach q > " + to_decimal(max_q),
                              cf.certified_to());
}

ContinuedFractionExpansion expand_cf(const EnclosureSource& source, const BigInt& max_q, long start_bits,
                                     long max_bits) {
  int depth = -1;
  for (long bits = std::max(start_bits, bits_for(max_q));; bits *= 2) {
    if (bits > max_bits) bits = max_bits;
    try {
      return expand_cf(source(bits), max_q);
    } catch (const InsufficientPrecision& e) {
      depth = std::max(depth, e.achieved_depth());
    } catch (const PrecisionError&) {
    } catch (const CertificationError&) {
    }
    if (bits >= max_bits) break;
  }
  throw InsufficientPrecision("continued fraction: precision ceiling of " + std::to_string(max_bits) +
                                  " bits reached before q > " + to_decimal(max_q),
                              depth);
}

BestApproximation best_approx_min(const ContinuedFractionExpansion& cf, const BigInt& M) {
  if (M < 1) throw DomainError("best_approx_min: M must be >= 1");
  const int j = cf.last_index_at_most(M);
  if (j < 0 || j + 1 > cf.certified_to()) {
    throw InsufficientPrecision("best_approx_min: expansion must extend past the last q_j <= M", cf.certified_to());
  }
  BestApproximation b;
  b.index = j;
  b.u = cf.q[static_cast<std::size_t>(j)];
  b.norm = dist_to_nearest_integer(Interval::exact(b.u, cf.value.precision()) * cf.value);
  return b;
}

ReductionOutcome reduce_homogeneous(const EnclosureSource& abs_tau, const BigInt& M, long offset) {
  ReductionOutcome out;
  out.method = "homogeneous";
  out.M = M;
  out.offset = offset;
  out.u_zero_bound = offset - 1;
  const auto cf = expand_cf(abs_tau, M);
  const auto best = best_approx_min(cf, M);
  out.bits_used = cf.bits;
  out.cf_depth = cf.certified_to();
  out.q_used = best.u;
  out.small_norm = best.norm;
  const mpfr_prec_t prec = cf.value.precision();
  out.real_bound = Interval::exact(offset, prec) - log(best.norm) / Interval::log2_const(prec);
  out.new_n_bound = std::max(largest_below(out.real_bound), out.u_zero_bound);
  out.ok = true;
  return out;
}

ReductionOutcome reduce_homogeneous(int k, const BigInt& M, long offset) {
  auto out = reduce_homogeneous(abs_tau_source(k), M, offset);
  out.k = k;
  return out;
}

DujellaPethoStep dujella_petho_step(const Interval& q, const Interval& M, const Interval& norm_q_tau,
                                    const Interval& norm_mu_q, long offset) {
  DujellaPethoStep s;
  s.epsilon = norm_mu_q - M * norm_q_tau;
  s.ok = s.epsilon.positive();
  if (!s.ok) return s;
  const mpfr_prec_t prec = q.precision();
  s.log2_q_over_eps = log(q / s.epsilon) / Interval::log2_const(prec);
  s.real_bound = s.log2_q_over_eps + offset;
  s.new_n_bound = largest_below(s.real_bound);
  return s;
}

std::string MuChoice::describe() const {
  switch (kind) {
    case Kind::AssumedHalf:
      return "assumed ||mu q|| = 0.5";
    case Kind::Literal:
      return "mu = floor(q/2) taken literally";
    case Kind::Shift:
      return "shift " + shift.to_string(12);
  }
  return {};
}

ReductionOutcome reduce_dujella_petho(const EnclosureSource& abs_tau, const BigInt& M, const MuChoice& mu,
                                      long offset, int retries) {
  ReductionOutcome out;
  out.method = "dujella-petho";
  out.M = M;
  out.offset = offset;
  out.u_zero_bound = offset - 1;
  const BigInt six_m = 6 * M;
  auto cf = expand_cf(abs_tau, six_m);
  const int j0 = cf.first_index_above(six_m);
  for (int r = 0; r <= retries; ++r) {
    const int j = j0 + r;
    // q_{j+1} must be certified too, so that q_j * value is sharp enough.
    while (cf.certified_to() < j + 1) cf = expand_cf(abs_tau, cf.q.back());
    const mpfr_prec_t prec = cf.value.precision();
    const BigInt& q = cf.q[static_cast<std::size_t>(j)];
    const Interval qi = Interval::exact(q, prec);
    const Interval nqt = dist_to_nearest_integer(qi * cf.value);
    Interval nmq(prec);
    switch (mu.kind) {
      case MuChoice::Kind::AssumedHalf:
        nmq = Interval::decimal("0.5", prec);
        break;
      case MuChoice::Kind::Literal: {
        BigInt half = q / 2;
        nmq = dist_to_nearest_integer(Interval::exact(half * q, prec));
        break;
      }
      case MuChoice::Kind::Shift:
        nmq = dist_to_nearest_integer(mu.shift.with_precision(prec) * qi);
        break;
    }
    const auto step = dujella_petho_step(qi, Interval::exact(M, prec), nqt, nmq, offset);
    out.q_used = q;
    out.small_norm = nqt;
    out.norm_mu_q = nmq;
    out.epsilon = step.epsilon;
    out.bits_used = cf.bits;
    out.cf_depth = j;
    if (step.ok) {
      out.ok = true;
      out.real_bound = step.real_bound;
      out.new_n_bound = std::max(step.new_n_bound, out.u_zero_bound);
      out.note = mu.describe();
      if (r > 0) out.note += "; advanced " + std::to_string(r) + " convergent(s)";
      return out;
    }
  }
  out.ok = false;
  out.note = "reduction failed: eps <= 0 for " + std::to_string(retries + 1) + " convergents (" + mu.describe() + ")";
  return out;
}

ReductionOutcome reduce_dujella_petho(int k, const BigInt& M, const MuChoice& mu, long offset, int retries) {
  auto out = reduce_dujella_petho(abs_tau_source(k), M, mu, offset, retries);
  out.k = k;
  return out;
}

EnclosureSource abs_tau_source(int k) {
  return [k](long bits) { return abs(cached_context(k, bits, false)->tau); };
}

SweepResult reduce_all_k(int k_min, int k_max, const BigInt& M, long offset, unsigned threads) {
  if (k_min < 2 || k_max < k_min) throw DomainError("reduce_all_k: need 2 <= k_min <= k_max");
  SweepResult res;
  res.rows.resize(static_cast<std::size_t>(k_max - k_min + 1));
  std::atomic<int> next{k_min};
  const auto worker = [&]() {
    for (int k = next++; k <= k_max; k = next++) {
      SweepRow& row = res.rows[static_cast<std::size_t>(k - k_min)];
      row.k = k;
      try {
        row.homogeneous = reduce_homogeneous(k, M, offset);
        row.dujella_petho = reduce_dujella_petho(k, M, MuChoice{}, offset);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& row : res.rows) {
    if (!row.error.empty() || !row.homogeneous.ok) {
      ++res.failures;
      continue;
    }
    res.max_bound = std::max(res.max_bound, row.homogeneous.new_n_bound);
    if (row.dujella_petho.ok && row.dujella_petho.q_used > res.max_q_dujella_petho) {
      res.max_q_dujella_petho = row.dujella_petho.q_used;
    }
  }
  return res;
}

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

BigInt parse_big(const std::string& s) {
  const auto caret = s.find('^');
  if (caret != std::string::npos) {
    const BigInt base(s.substr(0, caret));
    return ipow(base, std::stoul(s.substr(caret + 1)));
  }
  const auto e = s.find_first_of("eE");
  std::string mant = s.substr(0, e);
  long exponent = e == std::string::npos ? 0 : std::stol(s.substr(e + 1));
  const auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exponent -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  BigRational v{BigInt(mant)};
  if (exponent >= 0) {
    v *= pow10(static_cast<unsigned long>(exponent));
  } else {
    v /= pow10(static_cast<unsigned long>(-exponent));
  }
  v.canonicalize();
  if (v.get_den() != 1) throw DomainError("not an integer: " + s);
  return v.get_num();
}

}  // namespace kpell

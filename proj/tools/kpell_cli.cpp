// Command-line front end: one subcommand per pipeline stage.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "kpell/algebraic.hpp"
#include "kpell/audit.hpp"
#include "kpell/bounds.hpp"
#include "kpell/dependence.hpp"
#include "kpell/errors.hpp"
#include "kpell/reduction.hpp"
#include "kpell/sequences.hpp"

using nlohmann::json;
using namespace kpell;

namespace {

json ivj(const Interval& x, int digits = 25) {
  return {{"lo", x.lo().to_string(digits, MPFR_RNDD)}, {"hi", x.hi().to_string(digits, MPFR_RNDU)}};
}

json outcome_json(const ReductionOutcome& o) {
  json j = {{"k", o.k},
            {"method", o.method},
            {"M", to_decimal(o.M)},
            {"offset", o.offset},
            {"ok", o.ok},
            {"q", to_decimal(o.q_used)},
            {"norm_q_tau", ivj(o.small_norm, 12)},
            {"bits", o.bits_used},
            {"cf_depth", o.cf_depth}};
  if (o.ok) {
    j["real_bound"] = ivj(o.real_bound, 12);
    j["n_bound"] = o.new_n_bound;
  }
  if (o.epsilon) j["epsilon"] = ivj(*o.epsilon, 12);
  if (o.norm_mu_q) j["norm_mu_q"] = ivj(*o.norm_mu_q, 12);
  if (!o.note.empty()) j["note"] = o.note;
  return j;
}

json identity_json(const IdentityCheck& c) {
  return {{"identity", c.identity}, {"k", c.k},           {"n", c.n},
          {"lhs", to_decimal(c.lhs)}, {"rhs", to_decimal(c.rhs)}, {"residual", to_decimal(c.residual)},
          {"pass", c.pass}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-generalized Pell toolkit"};
  app.require_subcommand(1);

  // seq
  auto* seq = app.add_subcommand("seq", "exact terms, or an identity check per term");
  int seq_k = 2;
  long seq_r = 2, seq_from = 0, seq_to = 20;
  std::string identity;
  bool seq_json = false;
  seq->add_option("-k,--k", seq_k, "order k >= 2")->required();
  seq->add_option("-n,--n", [&](const CLI::results_t& v) {
        seq_from = seq_to = std::stol(v[0]);
        return true;
      }, "a single index");
  seq->add_option("-r,--r", seq_r, "multiplier: 2 for Pell, 1 for Fibonacci");
  seq->add_option("--from", seq_from, "first index (default 0, clipped to 2-k)");
  seq->add_option("--to", seq_to, "last index");
  seq->add_option("--identity", identity, "kilic | kilic-tail | pow2 | cooper-howard")
      ->check(CLI::IsMember({"kilic", "kilic-tail", "pow2", "cooper-howard"}));
  seq->add_flag("--json", seq_json, "one JSON object per term");

  // root
  auto* root = app.add_subcommand("root", "dominant root, g_k(alpha) and tau_k");
  int root_k = 2;
  long root_bits = kDefaultBits;
  bool root_conj = false;
  root->add_option("-k,--k", root_k)->required();
  root->add_option("--bits", root_bits);
  root->add_flag("--conjugates", root_conj, "also isolate all complex roots");
  root->add_flag("--json", "output is always JSON");

  // heights
  auto* heights = app.add_subcommand("heights", "minimal polynomial and height of g_k(alpha)");
  int h_kmin = 2, h_kmax = 2;
  heights->add_option("-k,--k", [&](const CLI::results_t& v) {
        h_kmin = h_kmax = std::stoi(v[0]);
        return true;
      }, "a single k");
  heights->add_option("--k-min", h_kmin);
  heights->add_option("--k-max", h_kmax);

  // matveev
  auto* matveev = app.add_subcommand("matveev", "lower bound for a linear form in logarithms");
  long mv_t = 2, mv_D = 1;
  std::string mv_B = "1";
  std::vector<std::string> mv_A;
  matveev->add_option("-t,--t", mv_t);
  matveev->add_option("-D,--D", mv_D);
  matveev->add_option("-B,--B", mv_B);
  matveev->add_option("-A,--A", mv_A, "one value per logarithm, repeated or comma separated")->delimiter(',');

  // bound1
  auto* b1 = app.add_subcommand("bound1", "initial bound on n and the constant table");
  int b1_k = 850;
  b1->add_option("-k,--k", b1_k);
  b1->add_flag("--json", "output is always JSON");

  // reduce
  auto* red = app.add_subcommand("reduce", "continued-fraction reduction of the bound");
  int red_k = 3, red_kmin = 2, red_kmax = 0;
  std::string red_M = "1e63", red_method = "both", red_mu = "assumed-half";
  long red_offset = 5;
  unsigned red_threads = 0;
  bool red_sweep = false;
  red->add_option("-k,--k", red_k);
  red->add_option("-M,--M", red_M);
  red->add_option("--method", red_method)->check(CLI::IsMember({"homogeneous", "dujella-petho", "both"}));
  red->add_option("--mu", red_mu)->check(CLI::IsMember({"assumed-half", "literal"}));
  red->add_option("--offset", red_offset);
  red->add_flag("--sweep", red_sweep, "all k in [k-min, k-max], JSONL on stdout");
  red->add_option("--k-min", red_kmin);
  red->add_option("--k-max", red_kmax);
  red->add_option("--threads", red_threads);
  red->add_flag("--json", "output is always JSON");

  // search
  auto* srch = app.add_subcommand("search", "exhaustive dependence search, JSONL");
  SearchBox box;
  std::string s_def = "strict", s_out, s_oracle = "0";
  long s_mmin = 0;
  bool s_has_mmin = false;
  srch->add_option("--k-min", box.k_min);
  srch->add_option("--k-max", box.k_max);
  srch->add_option("--n-max", box.n_max);
  srch->add_option("--m-min", s_mmin)->each([&](const std::string&) { s_has_mmin = true; });
  srch->add_option("--x-max", box.x_max, "also solve a^x = b^y directly up to this exponent");
  srch->add_option("--definition", s_def)->check(CLI::IsMember({"strict", "lattice", "both"}));
  srch->add_option("--oracle-below", s_oracle, "factorization cross-check below this value");
  srch->add_option("--threads", box.threads);
  srch->add_option("--out", s_out, "write records here instead of stdout");

  // audit
  auto* aud = app.add_subcommand("audit", "evaluate every audited claim");
  std::string a_claims, a_json, a_config;
  int a_kmax = 0;
  bool a_list = false;
  aud->add_option("--claims", a_claims, "comma separated claim ids");
  aud->add_option("--k-max", a_kmax, "cap for the per-root, reduction and search grids");
  aud->add_option("--json", a_json, "write the JSON report here");
  aud->add_option("--config", a_config, "key = value file with grid bounds");
  aud->add_flag("--list", a_list, "print the claim manifest and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*seq) {
      const SequenceSpec spec{seq_k, seq_r, 0, 1};
      spec.validate();
      for (long n = std::max(seq_from, spec.first_index()); n <= seq_to; ++n) {
        if (identity.empty()) {
          if (seq_json) std::cout << json{{"k", seq_k}, {"n", n}, {"term", to_decimal(term(spec, n))}}.dump() << "\n";
          else std::cout << n << " " << to_decimal(term(spec, n)) << "\n";
          continue;
        }
        IdentityCheck c;
        try {
          if (identity == "kilic") c = check_kilic_segment(seq_k, n);
          else if (identity == "kilic-tail") c = check_kilic_tail(seq_k, n);
          else if (identity == "pow2") c = check_power_of_two_segment(seq_k, n);
          else c = check_cooper_howard(seq_k, n);
        } catch (const DomainError&) {
          continue;  // index outside the identity's range
        }
        std::cout << identity_json(c).dump() << "\n";
      }
    } else if (*root) {
      const auto ctx = cached_context(root_k, root_bits, root_conj);
      json j = {{"k", root_k},
                {"bits", ctx->bits},
                {"alpha", ivj(ctx->alpha)},
                {"log_alpha", ivj(ctx->log_alpha)},
                {"g_alpha", ivj(ctx->g_alpha)},
                {"tau", ivj(ctx->tau)},
                {"bracket", {ivj(ctx->bracket_lo), ivj(ctx->bracket_hi)}},
                {"alpha_in_bracket", ctx->alpha_in_bracket}};
      if (ctx->has_conjugates()) {
        j["max_conjugate_modulus"] = ivj(ctx->max_conjugate_modulus(), 12);
        j["max_conjugate_g"] = ivj(ctx->max_conjugate_g(), 12);
        j["conjugates_inside_unit_circle"] = ctx->conjugates_inside_unit_circle;
        j["vieta_consistent"] = ctx->vieta_consistent;
      }
      std::cout << j.dump(2) << "\n";
    } else if (*heights) {
      for (int k = h_kmin; k <= std::max(h_kmin, h_kmax); ++k) {
        const auto c = minpoly_via_resultant(k);
        json coeffs = json::array();
        for (const auto& a : c.minpoly.coeffs()) coeffs.push_back(to_decimal(a));
        std::cout << json{{"k", k},
                          {"degree", c.degree},
                          {"minpoly_ascending", coeffs},
                          {"height", ivj(c.height, 15)},
                          {"bound_4_log_k", ivj(c.bound, 15)},
                          {"below_bound", c.below_bound},
                          {"irreducible_by_degree", c.irreducible_by_degree}}
                         .dump()
                  << "\n";
      }
    } else if (*matveev) {
      MatveevInstance inst;
      inst.t = mv_t;
      inst.D = mv_D;
      inst.B = Interval::decimal(mv_B, 192);
      for (const auto& a : mv_A) inst.A.push_back(Interval::decimal(a, 192));
      const auto lb = matveev_lower_bound(inst);
      std::cout << json{{"constant", ivj(matveev_constant(mv_t), 15)}, {"log_lambda_lower", ivj(lb, 15)}}.dump(2)
                << "\n";
    } else if (*b1) {
      const auto r = bound1(b1_k);
      json rows = json::array();
      for (const auto& c : r.constants)
        rows.push_back({{"id", c.id},
                        {"printed", c.printed},
                        {"recomputed", ivj(c.recomputed, 8)},
                        {"relation", c.relation},
                        {"rel_deviation", c.rel_deviation},
                        {"consistent", c.consistent},
                        {"note", c.note}});
      std::cout << json{{"k", b1_k},
                        {"case1_m_bound", ivj(r.case1_m_bound, 8)},
                        {"case1_n_bound", ivj(r.case1_n_bound, 8)},
                        {"case2_n_bound", ivj(r.case2_n_bound, 8)},
                        {"final_n_bound", ivj(r.final_n_bound, 8)},
                        {"case2_dominates", r.case2_dominates},
                        {"c1_recomputed", ivj(r.c1_recomputed, 8)},
                        {"constants", rows}}
                       .dump(2)
                << "\n";
    } else if (*red) {
      const BigInt M = parse_big(red_M);
      MuChoice mu;
      if (red_mu == "literal") mu.kind = MuChoice::Kind::Literal;
      const auto one = [&](int k) {
        json j = {{"k", k}};
        if (red_method != "dujella-petho") j["homogeneous"] = outcome_json(reduce_homogeneous(k, M, red_offset));
        if (red_method != "homogeneous") j["dujella_petho"] = outcome_json(reduce_dujella_petho(k, M, mu, red_offset));
        return j;
      };
      if (red_sweep) {
        const int kmax = red_kmax > 0 ? red_kmax : red_kmin;
        const auto s = reduce_all_k(red_kmin, kmax, M, red_offset, red_threads);
        for (const auto& row : s.rows) {
          json j = {{"k", row.k}};
          if (!row.error.empty()) j["error"] = row.error;
          else {
            j["homogeneous"] = outcome_json(row.homogeneous);
            j["dujella_petho"] = outcome_json(row.dujella_petho);
          }
          std::cout << j.dump() << "\n";
        }
        std::cout << json{{"summary", {{"max_bound", s.max_bound}, {"failures", s.failures},
                                       {"max_q_dujella_petho", to_decimal(s.max_q_dujella_petho)}}}}
                         .dump()
                  << "\n";
      } else {
        std::cout << one(red_k).dump(2) << "\n";
      }
    } else if (*srch) {
      if (s_has_mmin) box.m_min = s_mmin;
      if (s_def == "both") box.definitions = {Definition::Strict, Definition::Lattice};
      else box.definitions = {parse_definition(s_def)};
      box.oracle_below = parse_big(s_oracle);
      std::ofstream file;
      if (!s_out.empty()) {
        file.open(s_out);
        if (!file) throw DomainError("cannot write " + s_out);
      }
      std::ostream& out = s_out.empty() ? std::cout : file;
      const auto summary = search(box, [&](const SearchRecord& r) { out << to_jsonl(r) << "\n"; });
      std::cout << summary_json(box, summary) << "\n";
    } else if (*aud) {
      if (a_list) {
        for (const auto& e : claim_manifest()) std::cout << e.claim_id << "\t" << e.anchor << "\n";
        return 0;
      }
      AuditConfig cfg;
      if (!a_config.empty()) cfg.load_file(a_config);
      cfg.apply_environment();
      if (a_kmax > 0) {
        cfg.k_root_max = a_kmax;
        cfg.k_binet_max = std::min(cfg.k_binet_max, a_kmax);
        cfg.k_height_max = std::min(cfg.k_height_max, a_kmax);
        cfg.k_reduction_max = a_kmax;
        cfg.k_search_max = a_kmax;
      }
      if (!a_claims.empty()) {
        std::stringstream ss(a_claims);
        std::string id;
        while (std::getline(ss, id, ','))
          if (!id.empty()) cfg.claims.push_back(id);
      }
      const auto report = run_audit(cfg);
      std::cout << report.table();
      if (!a_json.empty()) {
        std::ofstream f(a_json);
        if (!f) throw DomainError("cannot write " + a_json);
        f << report.to_json().dump(2) << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

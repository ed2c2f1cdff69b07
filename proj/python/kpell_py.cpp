// Python bindings for the main operations. Big integers cross as Python
// ints, intervals as (lo, hi) float pairs.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kpell/algebraic.hpp"
#include "kpell/audit.hpp"
#include "kpell/bounds.hpp"
#include "kpell/dependence.hpp"
#include "kpell/reduction.hpp"
#include "kpell/sequences.hpp"

namespace py = pybind11;
using namespace kpell;

namespace {

py::int_ pyint(const BigInt& v) { return py::int_(py::str(to_decimal(v))); }

BigInt bigint(const py::int_& v) { return BigInt(py::str(v).cast<std::string>()); }

py::tuple iv(const Interval& x) { return py::make_tuple(x.lo_double(), x.hi_double()); }

py::dict identity_dict(const IdentityCheck& c) {
  py::dict d;
  d["identity"] = c.identity;
  d["k"] = c.k;
  d["n"] = c.n;
  d["lhs"] = pyint(c.lhs);
  d["rhs"] = pyint(c.rhs);
  d["residual"] = pyint(c.residual);
  d["pass"] = c.pass;
  return d;
}

py::dict outcome_dict(const ReductionOutcome& o) {
  py::dict d;
  d["k"] = o.k;
  d["method"] = o.method;
  d["ok"] = o.ok;
  d["q"] = pyint(o.q_used);
  d["norm_q_tau"] = iv(o.small_norm);
  if (o.ok) {
    d["real_bound"] = iv(o.real_bound);
    d["n_bound"] = o.new_n_bound;
  }
  if (!o.note.empty()) d["note"] = o.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_kpell, m) {
  m.doc() = "Generalized Pell sequences: terms, roots, bounds, reduction, dependence, audit";

  m.def(
      "term",
      [](int k, long n, long r, long a, long b) { return pyint(term(SequenceSpec{k, r, a, b}, n)); },
      py::arg("k"), py::arg("n"), py::arg("r") = 2, py::arg("a") = 0, py::arg("b") = 1);

  m.def(
      "check_identity",
      [](const std::string& name, int k, long n) {
        if (name == "kilic") return identity_dict(check_kilic_segment(k, n));
        if (name == "kilic-tail") return identity_dict(check_kilic_tail(k, n));
        if (name == "pow2") return identity_dict(check_power_of_two_segment(k, n));
        if (name == "cooper-howard") return identity_dict(check_cooper_howard(k, n));
        throw py::value_error("unknown identity " + name);
      },
      py::arg("name"), py::arg("k"), py::arg("n"));

  m.def(
      "root",
      [](int k, long bits) {
        const auto ctx = cached_context(k, bits, false);
        py::dict d;
        d["k"] = k;
        d["alpha"] = iv(ctx->alpha);
        d["log_alpha"] = iv(ctx->log_alpha);
        d["g_alpha"] = iv(ctx->g_alpha);
        d["tau"] = iv(ctx->tau);
        return d;
      },
      py::arg("k"), py::arg("bits") = 320);

  m.def(
      "height",
      [](int k) {
        const auto c = minpoly_via_resultant(k);
        py::list coeffs;
        for (const auto& v : c.minpoly.coeffs()) coeffs.append(pyint(v));
        py::dict d;
        d["minpoly_ascending"] = coeffs;
        d["height"] = iv(c.height);
        d["below_bound"] = c.below_bound;
        return d;
      },
      py::arg("k"));

  m.def("matveev_constant", [](long t) { return iv(matveev_constant(t)); }, py::arg("t"));

  m.def(
      "bound1",
      [](int k) {
        const auto b = bound1(k);
        py::dict d;
        d["k"] = k;
        d["case1_n_bound"] = iv(b.case1_n_bound);
        d["case2_n_bound"] = iv(b.case2_n_bound);
        d["final_n_bound"] = iv(b.final_n_bound);
        d["case2_dominates"] = b.case2_dominates;
        d["c1_recomputed"] = iv(b.c1_recomputed);
        return d;
      },
      py::arg("k"));

  m.def(
      "eval_Mk",
      [](int k) {
        const auto e = eval_Mk(k);
        py::dict d;
        d["k"] = k;
        d["log10_value"] = iv(e.log10_value);
        d["below_one"] = e.below_one;
        return d;
      },
      py::arg("k"));
  m.def("Mk_crossover", &Mk_crossover);

  m.def(
      "reduce",
      [](int k, const std::string& M, long offset) {
        return outcome_dict(reduce_homogeneous(k, parse_big(M), offset));
      },
      py::arg("k"), py::arg("M") = "1e63", py::arg("offset") = 5);

  m.def(
      "mul_dep",
      [](const py::int_& a, const py::int_& b, const std::string& definition) {
        const auto v = mul_dep(bigint(a), bigint(b), parse_definition(definition));
        py::dict d;
        d["dependent"] = v.dependent;
        d["degenerate"] = v.degenerate;
        if (!v.reason.empty()) d["reason"] = v.reason;
        if (v.witness) d["witness"] = py::make_tuple(pyint(v.witness->c), v.witness->s, v.witness->t);
        if (v.exponents) d["exponents"] = py::make_tuple(v.exponents->first, v.exponents->second);
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("definition") = "strict");

  m.def(
      "audit_json",
      [](const std::vector<std::string>& claims, unsigned threads) {
        AuditConfig cfg;
        cfg.apply_environment();
        cfg.claims = claims;
        cfg.threads = threads;
        py::gil_scoped_release release;
        return run_audit(cfg).to_json().dump();
      },
      py::arg("claims") = std::vector<std::string>{}, py::arg("threads") = 0);
  m.def("claim_ids", [] {
    std::vector<std::string> ids;
    for (const auto& e : claim_manifest()) ids.push_back(e.claim_id);
    return ids;
  });
}

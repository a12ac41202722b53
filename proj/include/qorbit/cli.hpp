#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qorbit/error.hpp"
#include "qorbit/ncalg/ideal.hpp"
#include "qorbit/orbits.hpp"
#include "qorbit/qtrace.hpp"
#include "qorbit/quantorbit.hpp"
#include "qorbit/rmatrix.hpp"
#include "qorbit/scalars/parse.hpp"
#include "qorbit/twist.hpp"

namespace qorbit::cli {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, inconclusive, error };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
    default: return "error";
  }
}

inline int exit_code(Status s) {
  switch (s) {
    case Status::pass: return 0;
    case Status::fail: return 1;
    case Status::inconclusive: return 2;
    default: return 3;
  }
}

struct Report {
  std::string command;
  Status status = Status::error;
  Json details = Json::object();
  std::string summary;

  Json to_json() const {
    Json j;
    j["schema"] = 1;
    j["command"] = command;
    j["status"] = status_name(status);
    for (const auto& [k, v] : details.items()) j[k] = v;
    return j;
  }
};

/// Bad input data; input names the flag, pointer is a JSON pointer into the document.
class InputError : public Error {
 public:
  InputError(std::string input, std::string pointer, const std::string& message)
      : Error(message), input(std::move(input)), pointer(std::move(pointer)) {}
  std::string input, pointer;
};

/// Interns the parameter names in a fixed order so canonical forms do not depend on input order.
inline void intern_alphabet() {
  for (const char* s : {"q", "t", "w", "a", "alpha", "beta"}) var(s);
  for (int i = 1; i <= 9; ++i) var("l" + std::to_string(i));
  for (int i = 1; i <= 2; ++i) var("m" + std::to_string(i));
  for (int i = 1; i <= 9; ++i) var("nu" + std::to_string(i));
  for (int i = 1; i <= 9; ++i) var("c" + std::to_string(i));
  for (std::size_t k = 0; k < 6; ++k)
    for (std::size_t l = k + 1; l < 6; ++l) var(twist_symbol(k, l));
  var("qm2");
}

inline std::string str(const RF& f) { return f.to_string(); }

inline Json poly_json(const RFPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(str(c));
  return a;
}

inline Json matrix_json(const RFMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(str(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json orbit_json(const OrbitData& o) {
  Json j;
  j["eigenvalues"] = Json::array();
  for (const auto& e : o.eigenvalues) j["eigenvalues"].push_back(str(e));
  j["multiplicities"] = o.multiplicities;
  if (!o.assumptions.empty()) j["assumptions"] = o.assumptions;
  return j;
}

inline RF parse_flag_expression(const std::string& input, const std::string& text) {
  try {
    return parse_expression(text);
  } catch (const ParseError& e) {
    throw InputError(input, "", e.what());
  }
}

/// Inline JSON when the argument starts with '{' or '[', otherwise a file name.
inline Json load_document(const std::string& input, const std::string& arg) {
  std::string text;
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw InputError(input, "", "cannot read file '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(input, "", std::string("malformed JSON: ") + e.what());
  }
}

inline OrbitData parse_orbit(const Json& j, const std::string& input) {
  if (!j.is_object()) throw InputError(input, "", "orbit must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (k != "eigenvalues" && k != "multiplicities")
      throw InputError(input, "/" + k, "unknown field '" + k + "'");
  if (!j.contains("eigenvalues") || !j["eigenvalues"].is_array())
    throw InputError(input, "/eigenvalues", "eigenvalues must be an array");
  if (!j.contains("multiplicities") || !j["multiplicities"].is_array())
    throw InputError(input, "/multiplicities", "multiplicities must be an array");
  const Json& ev = j["eigenvalues"];
  const Json& mu = j["multiplicities"];
  if (ev.empty()) throw InputError(input, "/eigenvalues", "at least one eigenvalue is required");
  std::vector<RF> e;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    std::string ptr = "/eigenvalues/" + std::to_string(i);
    if (ev[i].is_string()) {
      try {
        e.push_back(parse_expression(ev[i].get<std::string>()));
      } catch (const Error& err) {
        throw InputError(input, ptr, err.what());
      }
    } else if (ev[i].is_number_integer()) {
      e.emplace_back(ev[i].get<long>());
    } else {
      throw InputError(input, ptr, "eigenvalue must be a string expression or an integer");
    }
    for (std::size_t k = 0; k < i; ++k)
      if ((e[k] - e[i]).is_zero())
        throw InputError(input, ptr, "eigenvalue coincides with /eigenvalues/" + std::to_string(k));
  }
  std::vector<unsigned> m;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::string ptr = "/multiplicities/" + std::to_string(i);
    if (!mu[i].is_number_integer() || mu[i].get<long long>() < 1 || mu[i].get<long long>() > 64)
      throw InputError(input, ptr, "multiplicity must be an integer between 1 and 64");
    m.push_back(mu[i].get<unsigned>());
  }
  if (m.size() != e.size())
    throw InputError(input, "/multiplicities", "expected " + std::to_string(e.size()) + " multiplicities, got " +
                                                   std::to_string(m.size()));
  return make_orbit(std::move(e), std::move(m));
}

inline OrbitData load_orbit(const std::string& input, const std::string& arg) {
  return parse_orbit(load_document(input, arg), input);
}

// ---------------------------------------------------------------- subcommands

inline Report run_axioms(std::size_t n) {
  Report r{"axioms"};
  RMatrix rm = standard_r_matrix(n);
  AxiomReport ax = verify_rmatrix_axioms(rm);
  DMatrix d = compute_d_matrix(rm);
  RF tr = d.trace();
  bool normalized = tr == q_integer(static_cast<unsigned>(n));
  r.details["n"] = n;
  r.details["ybe"] = ax.ybe;
  r.details["hecke"] = ax.hecke;
  if (ax.ybe_first_nonzero) r.details["ybe_first_nonzero"] = *ax.ybe_first_nonzero;
  if (ax.hecke_first_nonzero) r.details["hecke_first_nonzero"] = *ax.hecke_first_nonzero;
  r.details["trace_of_D"] = str(tr);
  r.details["trace_normalized"] = normalized;
  r.details["D"] = matrix_json(d.entries);
  r.details["normalization"] = str(d.nu);
  r.status = ax.ybe && ax.hecke && normalized ? Status::pass : Status::fail;
  r.summary = "axioms n=" + std::to_string(n) + ": ybe " + (ax.ybe ? "ok" : "FAILED") + ", hecke " +
              (ax.hecke ? "ok" : "FAILED") + ", tr D = " + str(tr);
  return r;
}

inline Json graph_json(const BundleGraph& g) {
  Json j;
  Json e = Json::array();
  for (std::size_t x : g.edge) e.push_back(x + 1);
  j["edges"] = e;
  j["lower"] = g.lower;
  return j;
}

inline Json quadruple_json(const Quadruple& q) {
  Json a = Json::array();
  for (std::size_t x : q) a.push_back(x + 1);
  return a;
}

inline Json bracket_solution_json(const BracketSolution& s) {
  Json j;
  j["consistent"] = s.consistent;
  j["a"] = s.a ? Json(str(*s.a)) : Json(nullptr);
  Json w = Json::array();
  for (const auto& eq : s.witness) {
    Json x;
    x["indices"] = quadruple_json(eq.indices);
    x["solution"] = eq.solution ? Json(str(*eq.solution)) : Json(nullptr);
    w.push_back(std::move(x));
  }
  j["witness"] = w;
  if (!s.explanation.empty()) j["explanation"] = s.explanation;
  return j;
}

inline Json configuration_json(const BundleConfiguration& c) {
  Json j;
  j["source_index"] = c.source_index + 1;
  j["target_index"] = c.target_index + 1;
  j["a_source"] = str(c.a_source);
  j["a_target"] = str(c.a_target);
  j["p"] = poly_json(c.p);
  j["graph"] = graph_json(c.graph);
  j["projectable"] = c.projectability.projectable;
  j["projectability_witness"] =
      c.projectability.witness ? quadruple_json(*c.projectability.witness) : Json(nullptr);
  j["bracket_system"] = bracket_solution_json(c.solved);
  j["distinguished_coefficients_minus_one"] = c.distinguished_coefficients_minus_one;
  j["target_coefficient"] = str(c.target_coefficient);
  j["target_coefficient_matches"] = c.target_coefficient_matches;
  j["passes"] = c.passes();
  return j;
}

inline Report run_classify(const OrbitData& source, const OrbitData& target) {
  Report r{"classify"};
  BundleVerdict v = classify_poisson_bundle(source, target);
  r.details["source"] = orbit_json(source);
  r.details["target"] = orbit_json(target);
  r.details["is_poisson"] = v.is_poisson;
  r.details["failure_reason"] = v.failure_reason ? Json(*v.failure_reason) : Json(nullptr);
  Json cs = Json::array();
  for (const auto& c : v.configurations) cs.push_back(configuration_json(c));
  r.details["configurations"] = cs;
  Json ws = Json::array();
  for (const auto& w : v.witnesses) {
    Json x;
    x["graph"] = graph_json(w.graph);
    x["bracket_system"] = bracket_solution_json(w.solution);
    ws.push_back(std::move(x));
  }
  r.details["witnesses"] = ws;
  r.details["assumptions"] = v.assumptions;
  r.status = v.is_poisson ? Status::pass : Status::fail;
  r.summary = v.is_poisson ? "classify: Poisson bundle, " + std::to_string(v.configurations.size()) +
                                 " configuration(s)"
                           : "classify: rejected (" + v.failure_reason.value_or("") + ")";
  return r;
}

namespace detail {

// config is one-based; 0 picks the first configuration that passes.
inline const BundleConfiguration* pick_configuration(const BundleVerdict& v, std::size_t config) {
  if (config > 0) {
    if (config > v.configurations.size())
      throw InputError("config", "", "configuration " + std::to_string(config) + " does not exist (" +
                                         std::to_string(v.configurations.size()) + " available)");
    return &v.configurations[config - 1];
  }
  for (const auto& c : v.configurations)
    if (c.passes()) return &c;
  return nullptr;
}

}  // namespace detail

inline Report run_bundle_poly(const OrbitData& source, const OrbitData& target, std::size_t config) {
  Report r{"bundle-poly"};
  BundleVerdict v = classify_poisson_bundle(source, target);
  const BundleConfiguration* c = detail::pick_configuration(v, config);
  if (!c) {
    r.details["failure_reason"] = v.failure_reason.value_or("no configuration");
    r.status = Status::fail;
    r.summary = "bundle-poly: no valid configuration";
    return r;
  }
  r.details["source_index"] = c->source_index + 1;
  r.details["target_index"] = c->target_index + 1;
  r.details["p"] = poly_json(c->p);
  r.details["passes"] = c->passes();
  r.status = c->passes() ? Status::pass : Status::fail;
  r.summary = "bundle-poly: P(x) = " + c->p.to_string();
  return r;
}

inline Report run_theta(unsigned rr, const OrbitData& orbit, const RF& t) {
  Report r{"theta"};
  ThetaReport th = theta_report(rr, orbit, t);
  std::map<VarId, RF> lim{{var("w"), RF(0)}, {var("t"), RF(0)}};
  bool limit_applies = specialize(t, lim).is_zero();
  r.details["r"] = rr;
  r.details["orbit"] = orbit_json(orbit);
  r.details["t"] = str(t);
  r.details["omega"] = "w";
  r.details["value"] = str(th.value);
  r.details["polynomial_in_omega_t"] = th.polynomial_in_omega_t;
  r.details["polynomial_in_q_inverse_squared"] = th.polynomial_in_q_inverse_squared;
  r.details["classical_trace"] = str(classical_trace(rr, orbit));
  r.details["classical_limit"] = limit_applies ? Json(th.classical_limit) : Json(nullptr);
  bool ok = th.polynomial_in_omega_t && th.polynomial_in_q_inverse_squared && (!limit_applies || th.classical_limit);
  r.status = ok ? Status::pass : Status::fail;
  r.summary = "theta_" + std::to_string(rr) + " = " + str(th.value);
  return r;
}

namespace detail {

inline Json identity_json(const SumIdentityReport& s) {
  Json j;
  j["main_identity"] = s.main_identity;
  j["permutation_invariance"] = s.symmetric;
  j["reduction_a"] = s.reduction_a;
  j["reduction_b"] = s.reduction_b;
  j["reduction_c"] = s.reduction_c;
  return j;
}

// A nonzero rational with small numerator and denominator, drawn from raw generator output.
inline RF small_rational(std::mt19937& g) {
  long num = static_cast<long>(g() % 41) - 20, den = static_cast<long>(g() % 9) + 1;
  if (num == 0) num = 21;
  return RF(Rational(num, den));
}

}  // namespace detail

inline constexpr std::size_t symbolic_identity_limit = 5;

inline Report run_identities(std::size_t l, std::size_t samples, std::uint32_t seed) {
  Report r{"identities"};
  if (l > symbolic_identity_limit && samples == 0)
    throw InputError("samples", "", "l > " + std::to_string(symbolic_identity_limit) +
                                        " is checked on random samples only; pass --samples");
  std::vector<unsigned> mult;
  for (std::size_t i = 1; i <= l; ++i) mult.push_back(static_cast<unsigned>(i));
  r.details["l"] = l;
  r.details["multiplicities"] = mult;
  bool ok = true;
  if (l <= symbolic_identity_limit) {
    std::vector<RF> lam, nu;
    for (std::size_t i = 1; i <= l; ++i) {
      lam.push_back(RF::variable("l" + std::to_string(i)));
      nu.push_back(RF::variable("nu" + std::to_string(i)));
    }
    SumIdentityReport s = sum_identity_check(lam, nu, param_omega(), mult);
    r.details["symbolic"] = detail::identity_json(s);
    ok = ok && s.all();
  } else {
    r.details["symbolic"] = nullptr;
  }
  if (samples > 0) {
    std::mt19937 g(seed);
    std::map<std::string, std::size_t> passed{{"main_identity", 0}, {"permutation_invariance", 0},
                                              {"reduction_a", 0},   {"reduction_b", 0},
                                              {"reduction_c", 0}};
    for (std::size_t k = 0; k < samples; ++k) {
      std::vector<RF> lam, nu;
      while (lam.size() < l) {
        RF x = detail::small_rational(g);
        if (std::find(lam.begin(), lam.end(), x) == lam.end()) lam.push_back(x);
      }
      for (std::size_t i = 0; i < l; ++i) nu.push_back(detail::small_rational(g));
      RF omega = detail::small_rational(g);
      SumIdentityReport s = sum_identity_check(lam, nu, omega, mult);
      passed["main_identity"] += s.main_identity;
      passed["permutation_invariance"] += s.symmetric;
      passed["reduction_a"] += s.reduction_a;
      passed["reduction_b"] += s.reduction_b;
      passed["reduction_c"] += s.reduction_c;
      ok = ok && s.all();
    }
    Json sj;
    sj["count"] = samples;
    sj["seed"] = seed;
    Json pj;
    for (const char* k : {"main_identity", "permutation_invariance", "reduction_a", "reduction_b", "reduction_c"})
      pj[k] = passed[k];
    sj["passed"] = pj;
    r.details["samples"] = sj;
  } else {
    r.details["samples"] = nullptr;
  }
  r.status = ok ? Status::pass : Status::fail;
  r.summary = "identities l=" + std::to_string(l) + ": " + (ok ? "all hold" : "FAILED");
  return r;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

inline Report run_flatness(std::size_t n, std::size_t degree, const RF& t) {
  Report r{"flatness"};
  MREAlgebra alg = mre_relations(n, t);
  std::size_t dim = quotient_dimension(alg.alphabet, alg.relations, degree);
  std::size_t classical = binomial(n * n + degree, degree);
  r.details["n"] = n;
  r.details["degree"] = degree;
  r.details["t"] = str(t);
  r.details["relations"] = alg.relations.size();
  r.details["dimension"] = dim;
  r.details["classical_dimension"] = classical;
  r.status = dim == classical ? Status::pass : Status::fail;
  r.summary = "flatness n=" + std::to_string(n) + " degree<=" + std::to_string(degree) + ": " + std::to_string(dim) +
              " (commutative " + std::to_string(classical) + ")";
  return r;
}

inline RFPoly parse_coefficients(const std::string& input, const std::string& text) {
  std::vector<std::string> parts;
  auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    Json j = load_document(input, text);
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_string())
        parts.push_back(j[i].get<std::string>());
      else if (j[i].is_number_integer())
        parts.push_back(std::to_string(j[i].get<long>()));
      else
        throw InputError(input, "/" + std::to_string(i), "coefficient must be a string or an integer");
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
  }
  if (parts.empty()) throw InputError(input, "", "no coefficients given");
  std::vector<RF> c;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      c.push_back(parse_expression(parts[i]));
    } catch (const ParseError& e) {
      throw InputError(input, "/" + std::to_string(i), e.what());
    }
  }
  return RFPoly(c);
}

inline Json membership_json(const HeckeMembership& h) {
  Json j;
  j["target"] = h.target.to_string();
  j["degree_bound"] = h.result.degree_bound;
  j["certificate_size"] =
      h.result.certificate ? Json(h.result.certificate->combination.size()) : Json(nullptr);
  j["spanning_elements"] = h.result.spanning_elements;
  j["rank"] = h.result.rank;
  j["verified"] = h.verified;
  return j;
}

inline Report run_hecke(const RFPoly& q, const RF& alpha, const RF& beta, std::optional<std::size_t> bound) {
  Report r{"hecke"};
  HeckeMembership h = hecke_membership(q, alpha, beta, bound);
  r.details["qpoly"] = poly_json(q);
  r.details["alpha"] = str(alpha);
  r.details["beta"] = str(beta);
  Json m = membership_json(h);
  for (const auto& [k, v] : m.items()) r.details[k] = v;
  if (!h.conclusive()) {
    r.status = Status::inconclusive;
    r.summary = "hecke: no certificate up to degree " + std::to_string(h.result.degree_bound);
  } else {
    r.status = h.verified ? Status::pass : Status::fail;
    r.summary = "hecke: certificate with " + std::to_string(h.result.certificate->combination.size()) + " terms" +
                (h.verified ? "" : " FAILED re-expansion");
  }
  return r;
}

inline Report run_verify_bundle(const OrbitData& source, const OrbitData& target, std::size_t config,
                                const BundleQuantizationOptions& opt) {
  Report r{"verify-bundle"};
  BundleVerdict v = classify_poisson_bundle(source, target);
  r.details["source"] = orbit_json(source);
  r.details["target"] = orbit_json(target);
  const BundleConfiguration* c = detail::pick_configuration(v, config);
  if (!c) {
    r.details["failure_reason"] = v.failure_reason.value_or("no configuration");
    r.status = Status::fail;
    r.summary = "verify-bundle: not a Poisson bundle";
    return r;
  }
  BundleQuantizationReport q = verify_bundle_quantization(source, target, *c, opt);
  r.details["source_index"] = c->source_index + 1;
  r.details["target_index"] = c->target_index + 1;
  r.details["p"] = poly_json(q.p);
  r.details["lambda1"] = str(q.lambda1);
  r.details["mu1"] = str(q.mu1);
  r.details["mu2"] = str(q.mu2);
  Json checks;
  checks["poisson_configuration"] = c->passes();
  checks["c_hypothesis"] = q.c_hypothesis;
  checks["curve_reduction"] = q.curve_reduction;
  checks["step1_hecke_membership"] = q.step1_inconclusive ? Json(nullptr) : Json(q.step1);
  checks["step2_divisibility"] = q.step2;
  checks["step3_trace_identity"] = q.step3;
  if (q.direct) checks["direct_membership"] = *q.direct;
  r.details["checks"] = checks;
  r.details["hecke"] = membership_json(q.hecke);
  bool failed = !c->passes() || !q.c_hypothesis || !q.curve_reduction || !q.step2 || !q.step3 ||
                !q.direct.value_or(true) || (!q.step1 && !q.step1_inconclusive);
  r.status = failed ? Status::fail : q.step1_inconclusive ? Status::inconclusive : Status::pass;
  r.summary = std::string("verify-bundle: ") + status_name(r.status) + ", P(x) = " + q.p.to_string();
  return r;
}

/// Keys qu12 or qu1_2 (one-based k < l), values expressions.
inline std::map<std::pair<std::size_t, std::size_t>, RF> parse_twist_params(std::size_t n, const std::string& text) {
  auto params = symbolic_twist_params(n);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("params", "", "expected name=value, got '" + item + "'");
    std::string name = item.substr(0, eq), value = item.substr(eq + 1);
    std::optional<std::pair<std::size_t, std::size_t>> key;
    for (const auto& [kl, v] : params)
      if (twist_symbol(kl.first, kl.second) == name) key = kl;
    if (!key) throw InputError("params", "/" + name, "unknown twist parameter '" + name + "'");
    try {
      params[*key] = parse_expression(value);
    } catch (const ParseError& e) {
      throw InputError("params", "/" + name, e.what());
    }
    if (params[*key].is_zero()) throw InputError("params", "/" + name, "twist parameter must be invertible");
  }
  return params;
}

inline Report run_twist(std::size_t n, const std::map<std::pair<std::size_t, std::size_t>, RF>& params, const RF& t) {
  Report r{"twist"};
  AbelianCocycleRep f = abelian_cocycle_rep(n, params);
  TwistReport tw = verify_twist_correspondence(standard_r_matrix(n), f, t);
  r.details["n"] = n;
  r.details["t"] = str(t);
  Json pj = Json::object();
  for (const auto& [kl, v] : f.params) pj[twist_symbol(kl.first, kl.second)] = str(v);
  r.details["params"] = pj;
  r.details["trace_of_D_tilde"] = str(tw.twisted.d_tilde.trace());
  Json checks;
  checks["twisted_ybe"] = tw.twisted.axioms.ybe;
  checks["twisted_hecke"] = tw.twisted.axioms.hecke;
  checks["twisted_trace_normalized"] = tw.twisted.trace_normalized;
  checks["cocycle_identity"] = tw.cocycle.cocycle_identity;
  checks["cocycle_counit"] = tw.cocycle.counit;
  checks["unit_identity"] = tw.cocycle.unit_identity;
  checks["contraction_identity"] = tw.cocycle.contraction_identity;
  checks["phi_invertible"] = tw.phi_invertible;
  checks["phi_inverse_zeta_inverse"] = tw.phi_inverse_zeta_inverse;
  checks["phi_inverse_twisted_zeta"] = tw.phi_inverse_twisted_zeta;
  checks["trivial_twist_neutral"] = tw.trivial_twist_neutral;
  checks["d_invariant"] = tw.d_invariant;
  checks["trace_element_identity"] = tw.trace_element_identity;
  checks["relation_spans_match"] = tw.relation_spans_match;
  checks["qtraces_preserved"] = tw.qtraces_preserved;
  checks["polynomial_images"] = tw.polynomial_images;
  r.details["checks"] = checks;
  Json ranks;
  ranks["standard"] = tw.rank_standard;
  ranks["twisted_image"] = tw.rank_twisted_image;
  ranks["union"] = tw.rank_union;
  r.details["ranks"] = ranks;
  r.status = tw.all() ? Status::pass : Status::fail;
  r.summary = "twist n=" + std::to_string(n) + ": " + (tw.all() ? "all checks hold" : "FAILED");
  return r;
}

// ---------------------------------------------------------------- dispatch

namespace detail {

inline Report error_report(const std::string& command, const std::string& kind, const std::string& message,
                           const std::string& input = "", const std::string& pointer = "") {
  Report r{command, Status::error};
  Json e;
  e["kind"] = kind;
  e["message"] = message;
  if (!input.empty()) e["input"] = input;
  if (!input.empty() || !pointer.empty()) e["pointer"] = pointer;
  r.details["error"] = e;
  r.summary = command.empty() ? message : command + ": " + message;
  if (!pointer.empty()) r.summary += " (at " + input + ":" + pointer + ")";
  return r;
}

}  // namespace detail

/// Parses argv, runs one subcommand, writes the JSON report to out and a summary line to err.
inline int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  intern_alphabet();
  CLI::App app{"Exact verification of quantized orbit bundles", "qorbit"};
  app.require_subcommand(1);

  std::size_t n = 0, degree = 0, config = 0, samples = 0, l = 0;
  unsigned rpow = 0;
  std::uint32_t seed = 1;
  std::optional<std::size_t> bound;
  std::string source, target, orbit, tflag = "t", qpoly, alpha = "alpha", beta = "beta", params;
  bool direct = false;

  auto* axioms = app.add_subcommand("axioms", "Check YBE, Hecke and the D normalization for the standard R-matrix");
  axioms->add_option("--n", n, "matrix size")->required()->check(CLI::Range(1, 6));

  auto* classify = app.add_subcommand("classify", "Classify the orbit map source -> target");
  classify->add_option("--source", source, "source orbit (file or inline JSON)")->required();
  classify->add_option("--target", target, "target orbit (file or inline JSON)")->required();

  auto* bpoly = app.add_subcommand("bundle-poly", "Print the polynomial P of a configuration");
  bpoly->add_option("--source", source)->required();
  bpoly->add_option("--target", target)->required();
  bpoly->add_option("--config", config, "one-based configuration index")->check(CLI::PositiveNumber);

  auto* theta_cmd = app.add_subcommand("theta", "Compute the character theta_r of an orbit");
  theta_cmd->add_option("--r", rpow)->required()->check(CLI::Range(0, 32));
  theta_cmd->add_option("--orbit", orbit)->required();
  theta_cmd->add_option("--t", tflag, "expression for t")->capture_default_str();

  auto* ident = app.add_subcommand("identities", "Check the identities for the sums of the C_i");
  ident->add_option("--l", l)->required()->check(CLI::Range(1, 12));
  ident->add_option("--samples", samples, "random rational samples")->check(CLI::Range(0, 100000));
  ident->add_option("--seed", seed)->capture_default_str();

  auto* flat = app.add_subcommand("flatness", "Compare the mRE quotient dimension with the commutative one");
  flat->add_option("--n", n)->required()->check(CLI::Range(1, 4));
  flat->add_option("--degree", degree)->required()->check(CLI::Range(0, 8));
  flat->add_option("--t", tflag)->capture_default_str();

  auto* hecke = app.add_subcommand("hecke", "Search a membership certificate for [S Q(L) S, Q(L)]");
  hecke->add_option("--qpoly", qpoly, "coefficients of Q, lowest degree first, comma separated")->required();
  hecke->add_option("--bound", bound, "degree bound");
  hecke->add_option("--alpha", alpha)->capture_default_str();
  hecke->add_option("--beta", beta)->capture_default_str();

  auto* vb = app.add_subcommand("verify-bundle", "Verify the quantization of an orbit bundle");
  vb->add_option("--source", source)->required();
  vb->add_option("--target", target)->required();
  vb->add_option("--config", config)->check(CLI::PositiveNumber);
  vb->add_option("--bound", bound);
  vb->add_flag("--direct", direct, "also check membership in the full quantized orbit ideal (n = 2, l = 2)");

  auto* tw = app.add_subcommand("twist", "Check the twist correspondence for an abelian twist");
  tw->add_option("--n", n)->required()->check(CLI::Range(1, 4));
  tw->add_option("--params", params, "name=value,... for the symbols qu12, qu13, ...");
  tw->add_option("--t", tflag)->capture_default_str();

  std::string command;
  Report rep;
  try {
    app.parse(argc, argv);
    auto subs = app.get_subcommands();
    command = subs.empty() ? "" : subs.front()->get_name();
    if (command == "axioms") {
      rep = run_axioms(n);
    } else if (command == "classify") {
      rep = run_classify(load_orbit("source", source), load_orbit("target", target));
    } else if (command == "bundle-poly") {
      rep = run_bundle_poly(load_orbit("source", source), load_orbit("target", target), config);
    } else if (command == "theta") {
      OrbitData o = load_orbit("orbit", orbit);
      rep = run_theta(rpow, o, parse_flag_expression("t", tflag));
    } else if (command == "identities") {
      rep = run_identities(l, samples, seed);
    } else if (command == "flatness") {
      rep = run_flatness(n, degree, parse_flag_expression("t", tflag));
    } else if (command == "hecke") {
      RFPoly q = parse_coefficients("qpoly", qpoly);
      rep = run_hecke(q, parse_flag_expression("alpha", alpha), parse_flag_expression("beta", beta), bound);
    } else if (command == "verify-bundle") {
      OrbitData s = load_orbit("source", source), t = load_orbit("target", target);
      BundleQuantizationOptions opt;
      opt.bound = bound;
      opt.direct = direct;
      rep = run_verify_bundle(s, t, config, opt);
    } else if (command == "twist") {
      rep = run_twist(n, parse_twist_params(n, params), parse_flag_expression("t", tflag));
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    auto subs = app.get_subcommands();
    rep = detail::error_report(subs.empty() ? "" : subs.front()->get_name(), "usage", e.what());
  } catch (const InputError& e) {
    rep = detail::error_report(command, "data", e.what(), e.input, e.pointer);
  } catch (const Error& e) {
    rep = detail::error_report(command, "data", e.what());
  }
  out << rep.to_json().dump(2) << '\n';
  err << rep.summary << '\n';
  return exit_code(rep.status);
}

struct Outcome {
  int exit_code = 0;
  std::string out, err;
};

/// dispatch on an argument list (without the program name), capturing both streams.
inline Outcome run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"qorbit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace qorbit::cli

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qorbit/error.hpp"
#include "qorbit/scalars/rational_function.hpp"
#include "qorbit/scalars/upoly.hpp"

namespace qorbit {

using RFPoly = UPoly<RF>;

/// Semisimple orbit: distinct eigenvalues with multiplicities.
struct OrbitData {
  std::vector<RF> eigenvalues;
  std::vector<unsigned> multiplicities;
  std::vector<std::string> assumptions;  // generic distinctness of symbolic eigenvalues

  std::size_t l() const { return eigenvalues.size(); }
  unsigned n() const {
    unsigned s = 0;
    for (unsigned m : multiplicities) s += m;
    return s;
  }
  bool symbolic() const {
    for (const auto& e : eigenvalues)
      if (!e.is_constant()) return true;
    return false;
  }
};

inline OrbitData make_orbit(std::vector<RF> eigenvalues, std::vector<unsigned> multiplicities) {
  if (eigenvalues.empty()) throw DomainError("an orbit needs at least one eigenvalue");
  if (eigenvalues.size() != multiplicities.size())
    throw DomainError("eigenvalues and multiplicities have different lengths");
  OrbitData o{std::move(eigenvalues), std::move(multiplicities), {}};
  for (std::size_t i = 0; i < o.l(); ++i) {
    if (o.multiplicities[i] == 0) throw DomainError("multiplicity " + std::to_string(i + 1) + " is not positive");
    for (std::size_t j = i + 1; j < o.l(); ++j) {
      RF d = o.eigenvalues[i] - o.eigenvalues[j];
      if (d.is_zero())
        throw DomainError("duplicate eigenvalue " + o.eigenvalues[i].to_string() + " at positions " +
                          std::to_string(i + 1) + " and " + std::to_string(j + 1));
      if (!d.is_constant()) o.assumptions.push_back(d.to_string() + " != 0");
    }
  }
  return o;
}

/// Bipartite graph of an orbit map: upper node i goes to lower node edge[i].
struct BundleGraph {
  std::vector<std::size_t> edge;
  std::size_t lower = 0;

  std::vector<std::vector<std::size_t>> components() const {
    std::vector<std::vector<std::size_t>> c(lower);
    for (std::size_t i = 0; i < edge.size(); ++i) c.at(edge[i]).push_back(i);
    return c;
  }

  bool valid() const {
    std::vector<bool> hit(lower, false);
    for (std::size_t e : edge) {
      if (e >= lower) return false;
      hit[e] = true;
    }
    for (bool h : hit)
      if (!h) return false;
    return true;
  }
};

/// c_ij = (λ_i + λ_j + a)/(λ_i - λ_j), antisymmetric in (i, j).
struct BracketCoefficients {
  std::vector<RF> lambda;
  RF a;

  RF operator()(std::size_t i, std::size_t j) const {
    if (i == j) throw DomainError("bracket coefficient needs distinct indices");
    return (lambda[i] + lambda[j] + a) / (lambda[i] - lambda[j]);
  }
};

/// Indices (i, j, p, s): i, j in one component, p, s in another.
using Quadruple = std::array<std::size_t, 4>;

struct ProjectabilityResult {
  bool projectable = true;
  std::optional<Quadruple> witness;  // c_ip != c_js
};

namespace detail {

template <class F>
bool for_each_quadruple(const BundleGraph& g, F&& f) {
  auto comps = g.components();
  for (std::size_t al = 0; al < comps.size(); ++al)
    for (std::size_t be = 0; be < comps.size(); ++be) {
      if (al == be) continue;
      for (std::size_t i : comps[al])
        for (std::size_t j : comps[al])
          for (std::size_t p : comps[be])
            for (std::size_t s : comps[be])
              if ((i != j || p != s) && !f(Quadruple{i, j, p, s})) return false;
    }
  return true;
}

}  // namespace detail

/// c_ip = c_js whenever i, j share a lower component and p, s share another.
inline ProjectabilityResult check_coefficient_projectability(const BundleGraph& g, const BracketCoefficients& c) {
  if (g.edge.size() != c.lambda.size()) throw DomainError("graph and coefficients have different sizes");
  ProjectabilityResult r;
  detail::for_each_quadruple(g, [&](const Quadruple& q) {
    if (c(q[0], q[2]) == c(q[1], q[3])) return true;
    r.projectable = false;
    r.witness = q;
    return false;
  });
  return r;
}

/// One equation c_ip = c_js, solved for a.
struct BracketEquation {
  Quadruple indices{};
  std::optional<RF> solution;  // nullopt: no a satisfies it
};

/// Outcome of solving the projectability system for the bracket parameter a.
struct BracketSolution {
  bool consistent = true;
  std::optional<RF> a;                      // forced value, if any equation constrains a
  std::vector<BracketEquation> witness;     // one unsolvable equation, or two with different solutions
  std::string explanation;
};

/// Treats a as unknown and solves every projectability equation of the graph.
inline BracketSolution solve_bracket_parameter(const BundleGraph& g, const std::vector<RF>& lambda) {
  VarId av = var("a");
  for (const auto& l : lambda)
    if (l.depends_on(av)) throw DomainError("eigenvalues must not involve the bracket parameter a");
  BracketCoefficients c{lambda, RF::variable(av)};
  BracketSolution out;
  std::optional<BracketEquation> first;
  detail::for_each_quadruple(g, [&](const Quadruple& q) {
    RF diff = c(q[0], q[2]) - c(q[1], q[3]);
    if (diff.is_zero()) return true;
    auto coeffs = diff.numerator().coefficients_in(av);  // linear in a
    RF a1 = coeffs.size() > 1 ? RF(coeffs[1]) : RF(0);
    RF a0 = RF(coeffs[0]);
    BracketEquation eq{q, std::nullopt};
    if (!a1.is_zero()) eq.solution = -a0 / a1;
    if (!eq.solution) {
      out.consistent = false;
      out.witness = {eq};
      out.explanation = "equation has no solution in a";
      return false;
    }
    if (!first) {
      first = eq;
      out.a = eq.solution;
      return true;
    }
    if (*first->solution == *eq.solution) return true;
    out.consistent = false;
    out.a.reset();
    out.witness = {*first, eq};
    out.explanation = "a = " + first->solution->to_string() + " and a = " + eq.solution->to_string();
    return false;
  });
  if (out.consistent && !out.a) out.explanation = "no equation constrains a";
  return out;
}

/// P(x) = (μ₁ - μ₂) Π_{i≠d} (x - λ_i)/(λ_d - λ_i) + μ₂ with λ_d ↦ μ₁ (the distinguished
/// target eigenvalue) and every other λ_i ↦ μ₂. Indices are zero-based.
inline RFPoly interpolation_poly(const OrbitData& source, const OrbitData& target, std::size_t ds, std::size_t dt) {
  if (target.l() != 2) throw DomainError("target orbit is not symmetric (needs exactly two eigenvalues)");
  if (ds >= source.l() || dt >= 2) throw DomainError("distinguished index out of range");
  const RF& mu1 = target.eigenvalues[dt];
  const RF& mu2 = target.eigenvalues[1 - dt];
  const RF& l1 = source.eigenvalues[ds];
  RFPoly prod = RFPoly::constant(mu1 - mu2);
  for (std::size_t i = 0; i < source.l(); ++i) {
    if (i == ds) continue;
    prod = (l1 - source.eigenvalues[i]).inverse() * (prod * RFPoly::linear_root(source.eigenvalues[i]));
  }
  RFPoly p = prod + RFPoly::constant(mu2);
  for (std::size_t i = 0; i < source.l(); ++i)
    if (p(source.eigenvalues[i]) != (i == ds ? mu1 : mu2)) throw Error("internal: interpolation check failed");
  return p;
}

struct BundleConfiguration {
  std::size_t source_index = 0;  // distinguished source eigenvalue (zero-based)
  std::size_t target_index = 0;  // its image among the two target eigenvalues
  RF a_source;
  RF a_target;
  RFPoly p;
  BundleGraph graph;
  ProjectabilityResult projectability;
  BracketSolution solved;             // a as forced by the projectability system
  bool distinguished_coefficients_minus_one = false;  // c_{d,j} = -1 for all j
  RF target_coefficient;              // c'_{αβ} for the target bracket with a_target
  bool target_coefficient_matches = false;
  bool passes() const { return projectability.projectable && distinguished_coefficients_minus_one && target_coefficient_matches; }
};

/// Why a target with three or more eigenvalues cannot carry a Poisson bundle:
/// for one compatible graph, the inconsistent system in a.
struct RejectionWitness {
  BundleGraph graph;
  BracketSolution solution;
};

struct BundleVerdict {
  bool is_poisson = false;
  std::vector<BundleConfiguration> configurations;
  std::optional<std::string> failure_reason;
  std::vector<RejectionWitness> witnesses;
  std::vector<std::string> assumptions;
};

namespace detail {

// Every map of upper nodes onto lower nodes whose fibres carry the right multiplicity.
inline std::vector<BundleGraph> compatible_graphs(const OrbitData& source, const OrbitData& target,
                                                  std::size_t limit = 64) {
  std::vector<BundleGraph> out;
  BundleGraph g{std::vector<std::size_t>(source.l(), 0), target.l()};
  std::vector<unsigned> load(target.l(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (out.size() >= limit) return;
    if (i == source.l()) {
      if (load == target.multiplicities) out.push_back(g);
      return;
    }
    for (std::size_t al = 0; al < target.l(); ++al) {
      if (load[al] + source.multiplicities[i] > target.multiplicities[al]) continue;
      g.edge[i] = al;
      load[al] += source.multiplicities[i];
      rec(i + 1);
      load[al] -= source.multiplicities[i];
    }
  };
  rec(0);
  return out;
}

}  // namespace detail

/// Classification of Poisson orbit bundles source → target.
inline BundleVerdict classify_poisson_bundle(const OrbitData& source, const OrbitData& target) {
  BundleVerdict v;
  v.assumptions = source.assumptions;
  v.assumptions.insert(v.assumptions.end(), target.assumptions.begin(), target.assumptions.end());
  if (source.n() != target.n()) {
    v.failure_reason = "orbits live in different matrix sizes (" + std::to_string(source.n()) + " vs " +
                       std::to_string(target.n()) + ")";
    return v;
  }
  if (source.l() < 2) {
    v.failure_reason = "not a bundle instance: the source orbit has a single eigenvalue";
    return v;
  }
  if (target.l() != 2) {
    v.failure_reason = "target not symmetric";
    if (target.l() > 2) {
      for (const auto& g : detail::compatible_graphs(source, target)) {
        BracketSolution s = solve_bracket_parameter(g, source.eigenvalues);
        if (!s.consistent) v.witnesses.push_back({g, std::move(s)});
      }
    }
    return v;
  }
  for (std::size_t i = 0; i < source.l(); ++i)
    for (std::size_t al = 0; al < 2; ++al) {
      unsigned rest = source.n() - source.multiplicities[i];
      if (source.multiplicities[i] != target.multiplicities[al] || rest != target.multiplicities[1 - al]) continue;
      BundleConfiguration c;
      c.source_index = i;
      c.target_index = al;
      c.a_source = RF(-2) * source.eigenvalues[i];
      c.a_target = RF(-2) * target.eigenvalues[al];
      c.p = interpolation_poly(source, target, i, al);
      c.graph.lower = 2;
      c.graph.edge.assign(source.l(), 1 - al);
      c.graph.edge[i] = al;
      BracketCoefficients coeffs{source.eigenvalues, c.a_source};
      c.projectability = check_coefficient_projectability(c.graph, coeffs);
      c.solved = solve_bracket_parameter(c.graph, source.eigenvalues);
      c.distinguished_coefficients_minus_one = true;
      for (std::size_t j = 0; j < source.l(); ++j)
        if (j != i && coeffs(i, j) != RF(-1)) c.distinguished_coefficients_minus_one = false;
      BracketCoefficients tc{target.eigenvalues, c.a_target};
      c.target_coefficient = tc(al, 1 - al);
      std::size_t other = i == 0 ? 1 : 0;
      c.target_coefficient_matches = c.target_coefficient == coeffs(i, other);
      v.configurations.push_back(std::move(c));
    }
  for (const auto& c : v.configurations)
    if (c.passes()) v.is_poisson = true;
  if (v.configurations.empty())
    v.failure_reason = "no source eigenvalue has the multiplicity of a target eigenvalue with the rest matching the other";
  else if (!v.is_poisson)
    v.failure_reason = "no configuration is projectable";
  return v;
}

}  // namespace qorbit

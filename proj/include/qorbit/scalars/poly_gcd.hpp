#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "qorbit/scalars/polynomial.hpp"

namespace qorbit {

Polynomial gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

// Dense univariate polynomial over Q, index = degree, no trailing zeros.
using DenseQ = std::vector<Rational>;

inline void trim(DenseQ& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::size_t dense_gcd_degree(DenseQ a, DenseQ b) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    // a <- a mod b
    Rational inv = 1 / b.back();
    while (a.size() >= b.size()) {
      Rational f = a.back() * inv;
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Evaluates p at point for every variable except x; returns coefficients in x.
inline DenseQ specialize_except(const Polynomial& p, VarId x, const std::map<VarId, Rational>& point) {
  DenseQ out(p.degree_in(x) + 1);
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    std::uint32_t ex = 0;
    for (const auto& f : t.mono.factors()) {
      if (f.var == x) ex = f.exp;
      else c *= qorbit::pow(point.at(f.var), f.exp);
    }
    out[ex] += c;
  }
  return out;
}

// Returns true when a and b are certainly coprime, i.e. for every shared variable some
// specialization of the others leaves a constant univariate gcd while preserving the
// degree of one of the inputs. A false answer is inconclusive.
inline bool certainly_coprime(const Polynomial& a, const Polynomial& b, const std::vector<VarId>& vars) {
  std::mt19937 rng(0x5eed);
  std::uniform_int_distribution<int> dist(-97, 97);
  for (VarId x : vars) {
    bool settled = false;
    for (int attempt = 0; attempt < 4 && !settled; ++attempt) {
      std::map<VarId, Rational> point;
      for (VarId v : vars)
        if (v != x) point[v] = Rational(dist(rng) * 7 + 3 + attempt);
      DenseQ sa = specialize_except(a, x, point), sb = specialize_except(b, x, point);
      bool a_kept = !sa.empty() && sa.back() != 0;
      bool b_kept = !sb.empty() && sb.back() != 0;
      if (!a_kept && !b_kept) continue;
      if (dense_gcd_degree(sa, sb) != 0) return false;
      settled = true;
    }
    if (!settled) return false;
  }
  return true;
}

using Dense = std::vector<Polynomial>;  // coefficients in the main variable

inline void trim(Dense& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Polynomial content(const Dense& p) {
  Polynomial g;
  for (const auto& c : p) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

inline Dense primitive_part(const Dense& p, const Polynomial& cont) {
  if (cont.is_constant()) {
    Rational inv = 1 / cont.constant_value();
    Dense out = p;
    for (auto& c : out) c = inv * c;
    return out;
  }
  Dense out;
  out.reserve(p.size());
  for (const auto& c : p) {
    auto q = c.divide_exact(cont);
    if (!q) throw Error("internal: content does not divide coefficient");
    out.push_back(std::move(*q));
  }
  return out;
}

// Pseudo-remainder of a by b (up to a nonzero factor from the coefficient ring).
inline Dense pseudo_remainder(Dense a, const Dense& b) {
  const Polynomial& lb = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    Polynomial la = a.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = lb * a[i];
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

}  // namespace detail

/// Greatest common divisor over Q, normalized to leading coefficient 1.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  using namespace detail;
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.is_monomial()) return Polynomial::monomial(Monomial::gcd(a.leading().mono, b.monomial_content()), 1);
  if (b.is_monomial()) return Polynomial::monomial(Monomial::gcd(b.leading().mono, a.monomial_content()), 1);

  Monomial ma = a.monomial_content(), mb = b.monomial_content();
  Polynomial mono_part = Polynomial::monomial(Monomial::gcd(ma, mb), 1);
  Polynomial pa = ma.is_one() ? a : *a.divide_exact(Polynomial::monomial(ma, 1));
  Polynomial pb = mb.is_one() ? b : *b.divide_exact(Polynomial::monomial(mb, 1));
  if (pa.is_constant() || pb.is_constant()) return mono_part;

  if (pa == pb) return mono_part * pa.monic();
  if (pa.total_degree() <= pb.total_degree() && pa.size() <= pb.size()) {
    if (pb.divide_exact(pa)) return mono_part * pa.monic();
  } else if (pb.total_degree() <= pa.total_degree() && pb.size() <= pa.size()) {
    if (pa.divide_exact(pb)) return mono_part * pb.monic();
  }

  auto va = pa.variables(), vb = pb.variables();
  // a variable present in only one argument can only live in that argument's content
  for (int side = 0; side < 2; ++side) {
    const Polynomial& p = side == 0 ? pa : pb;
    const Polynomial& other = side == 0 ? pb : pa;
    const auto& own = side == 0 ? va : vb;
    const auto& theirs = side == 0 ? vb : va;
    for (VarId x : own) {
      if (std::binary_search(theirs.begin(), theirs.end(), x)) continue;
      Polynomial g = other;
      for (const auto& c : p.coefficients_in(x)) {
        if (c.is_zero()) continue;
        g = gcd(c, g);
        if (g.is_constant()) return mono_part;
      }
      return mono_part * g;
    }
  }

  if (certainly_coprime(pa, pb, va)) return mono_part;

  VarId x = va.front();
  std::uint32_t best = UINT32_MAX;
  for (VarId v : va) {
    std::uint32_t d = std::max(pa.degree_in(v), pb.degree_in(v));
    if (d < best) {
      best = d;
      x = v;
    }
  }

  Dense da = pa.coefficients_in(x), db = pb.coefficients_in(x);
  Polynomial ca = content(da), cb = content(db);
  Polynomial cont = gcd(ca, cb);
  da = primitive_part(da, ca);
  db = primitive_part(db, cb);
  if (da.size() < db.size()) std::swap(da, db);
  Dense g;
  while (true) {
    Dense r = pseudo_remainder(da, db);
    if (r.empty()) {
      g = db;
      break;
    }
    if (r.size() == 1) {
      g = Dense{Polynomial(1)};
      break;
    }
    da = std::move(db);
    db = primitive_part(r, content(r));
  }
  g = primitive_part(g, content(g));
  return (mono_part * cont * Polynomial::from_coefficients(x, g)).monic();
}

}  // namespace qorbit

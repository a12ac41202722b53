#pragma once

#include <algorithm>
#include <initializer_list>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qorbit/error.hpp"
#include "qorbit/scalars/poly_gcd.hpp"
#include "qorbit/scalars/polynomial.hpp"

namespace qorbit {

/// Quotient of two polynomials in canonical form: coprime, denominator with
/// integer coefficients of content 1 and positive leading coefficient, zero as 0/1.
/// Two rational functions are equal iff their canonical forms coincide.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c) : num_(c), den_(1) {}   // NOLINT(google-explicit-constructor)
  RationalFunction(long c) : num_(c), den_(1) {}              // NOLINT(google-explicit-constructor)

  RationalFunction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    Polynomial g = gcd(num, den);
    if (!g.is_constant()) {
      num = *num.divide_exact(g);
      den = *den.divide_exact(g);
    }
    num_ = std::move(num);
    den_ = std::move(den);
    normalize_scale();
  }

  static RationalFunction variable(std::string_view name) { return Polynomial::variable(name); }
  static RationalFunction variable(VarId v) { return Polynomial::variable(v); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_one() const { return is_constant() && num_.constant_value() == 1; }

  Rational constant_value() const {
    if (!is_constant()) throw DomainError("rational function is not constant: " + to_string());
    return num_.constant_value() / den_.constant_value();
  }

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) { return add(a, b, false); }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return add(a, b, true); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_constant() && b.den_.is_constant()) return from_canonical(a.num_ * b.num_, 1);
    if (a.is_constant()) return scale(b, a.constant_value());
    if (b.is_constant()) return scale(a, b.constant_value());
    Polynomial g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    Polynomial n1 = g1.is_constant() ? a.num_ : *a.num_.divide_exact(g1);
    Polynomial d2 = g1.is_constant() ? b.den_ : *b.den_.divide_exact(g1);
    Polynomial n2 = g2.is_constant() ? b.num_ : *b.num_.divide_exact(g2);
    Polynomial d1 = g2.is_constant() ? a.den_ : *a.den_.divide_exact(g2);
    return from_canonical(n1 * n2, d1 * d2);
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  RationalFunction inverse() const {
    if (is_zero()) throw DivisionByZero("division by the zero rational function");
    return from_canonical(den_, num_);
  }

  /// Integer power; negative exponents invert.
  RationalFunction pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RationalFunction r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    r.normalize_scale();
    return r;
  }

  /// Variables occurring in numerator or denominator, ascending id order.
  std::vector<VarId> variables() const {
    auto a = num_.variables(), b = den_.variables();
    std::vector<VarId> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  bool depends_on(VarId v) const { return num_.depends_on(v) || den_.depends_on(v); }

  /// Canonical printed form, e.g. "(q^2 - 1)/q".
  std::string to_string() const {
    if (den_.is_constant()) {
      // denominator of a polynomial is exactly 1 in canonical form
      return num_.to_string();
    }
    std::string n = num_.to_string(), d = den_.to_string();
    if (num_.size() > 1) n = "(" + n + ")";
    if (den_.size() > 1) d = "(" + d + ")";
    return n + "/" + d;
  }

 private:
  // Coprimality is known; only the scale needs fixing.
  static RationalFunction from_canonical(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw DivisionByZero("division by the zero rational function");
    RationalFunction r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.normalize_scale();
    return r;
  }

  static RationalFunction scale(const RationalFunction& f, const Rational& c) {
    RationalFunction r = f;
    r.num_ = c * r.num_;
    return r;
  }

  void normalize_scale() {
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    Rational f = den_.make_primitive();
    if (f != 1) num_ = f * num_;
  }

  static RationalFunction add(const RationalFunction& a, const RationalFunction& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    if (a.den_ == b.den_) {
      Polynomial n = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
      if (a.den_.is_constant()) return from_canonical(std::move(n), a.den_);
      return RationalFunction(std::move(n), a.den_);
    }
    if (a.den_.is_constant() || b.den_.is_constant()) {
      // one side is a polynomial: a/d1 + p = (a + p d1)/d1 stays coprime
      const RationalFunction& frac = a.den_.is_constant() ? b : a;
      const RationalFunction& poly = a.den_.is_constant() ? a : b;
      Polynomial p = (1 / poly.den_.constant_value()) * poly.num_;
      Polynomial n;
      if (&frac == &a) n = subtract ? a.num_ - p * a.den_ : a.num_ + p * a.den_;
      else n = subtract ? p * b.den_ - b.num_ : p * b.den_ + b.num_;
      return from_canonical(std::move(n), frac.den_);
    }
    Polynomial g = gcd(a.den_, b.den_);
    if (g.is_constant()) {
      Polynomial n = subtract ? a.num_ * b.den_ - b.num_ * a.den_ : a.num_ * b.den_ + b.num_ * a.den_;
      return from_canonical(std::move(n), a.den_ * b.den_);
    }
    Polynomial da = *a.den_.divide_exact(g), db = *b.den_.divide_exact(g);
    Polynomial n = subtract ? a.num_ * db - b.num_ * da : a.num_ * db + b.num_ * da;
    if (n.is_zero()) return {};
    Polynomial h = gcd(n, g);
    if (!h.is_constant()) {
      n = *n.divide_exact(h);
      g = *g.divide_exact(h);
    }
    return from_canonical(std::move(n), da * db * g);
  }

  Polynomial num_;
  Polynomial den_;
};

using RF = RationalFunction;

inline RationalFunction pow(const RationalFunction& f, int e) { return f.pow(e); }

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.to_string(); }

/// True iff the canonical denominator involves none of the given variables.
inline bool is_polynomial_in(const RationalFunction& f, const std::vector<VarId>& vars) {
  for (VarId v : vars)
    if (f.denominator().depends_on(v)) return false;
  return true;
}

/// Simultaneous substitution of rational functions for parameters.
/// Throws IllegalSpecialization when the denominator vanishes identically.
class Specializer {
 public:
  explicit Specializer(std::map<VarId, RationalFunction> bindings) : bindings_(std::move(bindings)) {}

  RationalFunction operator()(const RationalFunction& f) const {
    auto [nn, nd] = apply(f.numerator());
    auto [dn, dd] = apply(f.denominator());
    if (dn.is_zero()) throw IllegalSpecialization("specialization makes a denominator vanish identically");
    // (nn/nd) / (dn/dd) = nn*dd / (nd*dn)
    return RationalFunction(nn, nd) * RationalFunction(dd, dn);
  }

 private:
  // Returns (numerator, denominator) of p under the bindings, with the common
  // denominator collected as a product of powers of the binding denominators.
  std::pair<Polynomial, Polynomial> apply(const Polynomial& p) const {
    std::map<VarId, std::uint32_t> max_deg;
    for (const auto& t : p.terms())
      for (const auto& fct : t.mono.factors())
        if (bindings_.count(fct.var)) max_deg[fct.var] = std::max(max_deg[fct.var], fct.exp);
    if (max_deg.empty()) return {p, Polynomial(1)};

    std::map<VarId, std::vector<Polynomial>> num_pow, den_pow;
    auto power = [](std::vector<Polynomial>& cache, const Polynomial& base, std::uint32_t e) -> const Polynomial& {
      if (cache.empty()) cache.push_back(Polynomial(1));
      while (cache.size() <= e) cache.push_back(cache.back() * base);
      return cache[e];
    };
    Polynomial out;
    for (const auto& t : p.terms()) {
      Polynomial term = Polynomial::monomial(Monomial{}, t.coeff);
      Monomial rest;
      for (const auto& fct : t.mono.factors()) {
        auto it = bindings_.find(fct.var);
        if (it == bindings_.end()) {
          rest = rest * Monomial::of(fct.var, fct.exp);
          continue;
        }
        const auto& value = it->second;
        term *= power(num_pow[fct.var], value.numerator(), fct.exp);
        if (!value.denominator().is_constant())
          term *= power(den_pow[fct.var], value.denominator(), max_deg[fct.var] - fct.exp);
        else
          term = qorbit::pow(Rational(1 / value.denominator().constant_value()), fct.exp) * term;
      }
      // bound variables absent from this term still need the full denominator power
      for (const auto& [v, d] : max_deg) {
        if (t.mono.exponent(v) > 0) continue;
        const auto& value = bindings_.at(v);
        if (!value.denominator().is_constant()) term *= power(den_pow[v], value.denominator(), d);
      }
      if (!rest.is_one()) term = term.times_term(rest, 1);
      out += term;
    }
    Polynomial den(1);
    for (const auto& [v, d] : max_deg) {
      const auto& value = bindings_.at(v);
      if (!value.denominator().is_constant()) den *= value.denominator().pow(d);
    }
    return {out, den};
  }

  std::map<VarId, RationalFunction> bindings_;
};

/// Substitutes values for parameters (partial bindings allowed).
inline RationalFunction specialize(const RationalFunction& f, const std::map<VarId, RationalFunction>& bindings) {
  return Specializer(bindings)(f);
}

inline RationalFunction specialize(const RationalFunction& f,
                                   std::initializer_list<std::pair<std::string_view, RationalFunction>> bindings) {
  std::map<VarId, RationalFunction> m;
  for (const auto& [name, value] : bindings) m.emplace(var(name), value);
  return specialize(f, m);
}

}  // namespace qorbit

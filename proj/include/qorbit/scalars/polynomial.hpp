#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qorbit/error.hpp"
#include "qorbit/scalars/rational.hpp"
#include "qorbit/scalars/variables.hpp"

namespace qorbit {

/// Power product of formal parameters, stored sparsely and sorted by variable id.
class Monomial {
 public:
  struct Factor {
    VarId var;
    std::uint32_t exp;
    bool operator==(const Factor&) const = default;
  };

  Monomial() = default;

  static Monomial of(VarId v, std::uint32_t e = 1) {
    Monomial m;
    if (e > 0) {
      m.factors_.push_back({v, e});
      m.degree_ = e;
    }
    return m;
  }

  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  const std::vector<Factor>& factors() const { return factors_; }

  std::uint32_t exponent(VarId v) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                               [](const Factor& f, VarId x) { return f.var < x; });
    return (it != factors_.end() && it->var == v) ? it->exp : 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
      if (j == b.factors_.end() || (i != a.factors_.end() && i->var < j->var)) {
        out.factors_.push_back(*i++);
      } else if (i == a.factors_.end() || j->var < i->var) {
        out.factors_.push_back(*j++);
      } else {
        out.factors_.push_back({i->var, i->exp + j->exp});
        ++i;
        ++j;
      }
    }
    out.degree_ = a.degree_ + b.degree_;
    return out;
  }

  bool divides(const Monomial& other) const {
    if (degree_ > other.degree_) return false;
    auto j = other.factors_.begin();
    for (const auto& f : factors_) {
      while (j != other.factors_.end() && j->var < f.var) ++j;
      if (j == other.factors_.end() || j->var != f.var || j->exp < f.exp) return false;
    }
    return true;
  }

  /// this / divisor; requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const {
    Monomial out;
    auto j = divisor.factors_.begin();
    for (const auto& f : factors_) {
      std::uint32_t e = f.exp;
      if (j != divisor.factors_.end() && j->var == f.var) e -= (j++)->exp;
      if (e > 0) out.factors_.push_back({f.var, e});
    }
    out.degree_ = degree_ - divisor.degree_;
    return out;
  }

  Monomial without(VarId v) const {
    Monomial out;
    for (const auto& f : factors_) {
      if (f.var == v) continue;
      out.factors_.push_back(f);
      out.degree_ += f.exp;
    }
    return out;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial out;
    auto j = b.factors_.begin();
    for (const auto& f : a.factors_) {
      while (j != b.factors_.end() && j->var < f.var) ++j;
      if (j != b.factors_.end() && j->var == f.var) {
        auto e = std::min(f.exp, j->exp);
        out.factors_.push_back({f.var, e});
        out.degree_ += e;
      }
    }
    return out;
  }

  /// Graded lexicographic comparison; lower variable ids are more significant.
  friend int compare(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
      if (i->var != j->var) return i->var < j->var ? 1 : -1;
      if (i->exp != j->exp) return i->exp < j->exp ? -1 : 1;
      ++i;
      ++j;
    }
    if (i != a.factors_.end()) return 1;
    if (j != b.factors_.end()) return -1;
    return 0;
  }

  bool operator==(const Monomial& o) const { return degree_ == o.degree_ && factors_ == o.factors_; }

  std::string to_string() const {
    std::string out;
    for (const auto& f : factors_) {
      if (!out.empty()) out += '*';
      out += var_name(f.var);
      if (f.exp != 1) out += '^' + std::to_string(f.exp);
    }
    return out.empty() ? "1" : out;
  }

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse multivariate polynomial with rational coefficients.
/// Terms are kept strictly decreasing in the graded-lex order, with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) {
      terms_.push_back({Monomial{}, c});
      terms_.back().coeff.canonicalize();
    }
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial variable(VarId v, std::uint32_t e = 1) { return monomial(Monomial::of(v, e), 1); }
  static Polynomial variable(std::string_view name) { return variable(var(name)); }

  static Polynomial monomial(Monomial m, Rational c) {
    Polynomial p;
    c.canonicalize();
    if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }

  /// Adopts terms that are already sorted and free of zeros.
  static Polynomial from_sorted_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  Rational constant_value() const {
    if (!is_constant()) throw DomainError("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
  }

  const Term& leading() const { return terms_.front(); }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  std::uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

  std::uint32_t degree_in(VarId v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
    return d;
  }

  /// Variables with a positive exponent somewhere, in ascending id order.
  std::vector<VarId> variables() const {
    std::vector<VarId> vs;
    for (const auto& t : terms_)
      for (const auto& f : t.mono.factors()) vs.push_back(f.var);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  bool depends_on(VarId v) const {
    for (const auto& t : terms_)
      if (t.mono.exponent(v) > 0) return true;
    return false;
  }

  bool operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
  }

  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const Polynomial& small = a.terms_.size() <= b.terms_.size() ? a : b;
    const Polynomial& large = a.terms_.size() <= b.terms_.size() ? b : a;
    std::vector<Polynomial> rows;
    rows.reserve(small.terms_.size());
    for (const auto& t : small.terms_) rows.push_back(large.times_term(t.mono, t.coeff));
    // pairwise merge keeps the cost at O(nm log n)
    while (rows.size() > 1) {
      std::vector<Polynomial> next;
      next.reserve((rows.size() + 1) / 2);
      for (std::size_t i = 0; i + 1 < rows.size(); i += 2) next.push_back(rows[i] + rows[i + 1]);
      if (rows.size() % 2) next.push_back(std::move(rows.back()));
      rows = std::move(next);
    }
    return std::move(rows.front());
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator*(const Rational& c, const Polynomial& p) {
    if (c == 0) return {};
    Polynomial out = p;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
  }

  Polynomial times_term(const Monomial& m, const Rational& c) const {
    Polynomial out;
    if (c == 0) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.mono * m, t.coeff * c});
    return out;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result(1), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  /// Coefficients with respect to v: result[k] multiplies v^k.
  std::vector<Polynomial> coefficients_in(VarId v) const {
    std::vector<Polynomial> out(degree_in(v) + 1);
    // removing v from every term keeps each bucket sorted
    for (const auto& t : terms_) out[t.mono.exponent(v)].terms_.push_back({t.mono.without(v), t.coeff});
    return out;
  }

  static Polynomial from_coefficients(VarId v, std::span<const Polynomial> coeffs) {
    Polynomial out;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (!coeffs[k].is_zero()) out += coeffs[k].times_term(Monomial::of(v, static_cast<std::uint32_t>(k)), 1);
    return out;
  }

  /// Exact quotient this / d, or nullopt when d does not divide this.
  std::optional<Polynomial> divide_exact(const Polynomial& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (is_zero()) return Polynomial{};
    if (d.is_constant()) return Rational(1 / d.constant_value()) * *this;
    const Term& lead = d.leading();
    Rational inv_lc = 1 / lead.coeff;
    if (d.is_monomial()) {
      Polynomial q;
      for (const auto& t : terms_) {
        if (!lead.mono.divides(t.mono)) return std::nullopt;
        q.terms_.push_back({t.mono.quotient(lead.mono), t.coeff * inv_lc});
      }
      return q;
    }
    Polynomial rem = *this;
    std::vector<Term> quot;
    while (!rem.is_zero()) {
      const Term& lt = rem.leading();
      if (!lead.mono.divides(lt.mono)) return std::nullopt;
      Term qt{lt.mono.quotient(lead.mono), lt.coeff * inv_lc};
      rem -= d.times_term(qt.mono, qt.coeff);
      quot.push_back(std::move(qt));
    }
    return from_sorted_terms(std::move(quot));
  }

  /// Substitutes rational values for some variables; others stay symbolic.
  Polynomial evaluate(const std::map<VarId, Rational>& values) const {
    Polynomial out;
    for (const auto& t : terms_) {
      Rational c = t.coeff;
      Monomial rest;
      for (const auto& f : t.mono.factors()) {
        if (auto it = values.find(f.var); it != values.end()) c *= qorbit::pow(it->second, f.exp);
        else rest = rest * Monomial::of(f.var, f.exp);
      }
      out += monomial(std::move(rest), c);
    }
    return out;
  }

  /// Largest monomial dividing every term (coefficient ignored).
  Monomial monomial_content() const {
    if (terms_.empty()) return {};
    Monomial g = terms_.front().mono;
    for (const auto& t : terms_) {
      if (g.is_one()) break;
      g = Monomial::gcd(g, t.mono);
    }
    return g;
  }

  /// Rescales so that the leading coefficient is 1.
  Polynomial monic() const {
    if (is_zero()) return {};
    return Rational(1 / leading_coeff()) * *this;
  }

  /// Rescales to integer coefficients with gcd 1 and positive leading coefficient.
  /// Returns the factor used.
  Rational make_primitive() {
    if (is_zero()) return 1;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& t : terms_) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    }
    Rational factor(den_lcm, num_gcd);
    factor.canonicalize();
    if (leading_coeff() < 0) factor = -factor;
    if (factor != 1)
      for (auto& t : terms_) t.coeff *= factor;
    return factor;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      Rational c = t.coeff;
      if (first) {
        if (c < 0) {
          out += "-";
          c = -c;
        }
      } else {
        out += c < 0 ? " - " : " + ";
        if (c < 0) c = -c;
      }
      first = false;
      if (t.mono.is_one()) {
        out += c.get_str();
      } else {
        if (c != 1) out += c.get_str() + "*";
        out += t.mono.to_string();
      }
    }
    return out;
  }

 private:
  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() && j != b.terms_.end()) {
      int c = compare(i->mono, j->mono);
      if (c > 0) {
        out.terms_.push_back(*i++);
      } else if (c < 0) {
        out.terms_.push_back({j->mono, subtract ? Rational(-j->coeff) : j->coeff});
        ++j;
      } else {
        Rational s = subtract ? Rational(i->coeff - j->coeff) : Rational(i->coeff + j->coeff);
        if (s != 0) out.terms_.push_back({i->mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    for (; i != a.terms_.end(); ++i) out.terms_.push_back(*i);
    for (; j != b.terms_.end(); ++j) out.terms_.push_back({j->mono, subtract ? Rational(-j->coeff) : j->coeff});
    return out;
  }

  std::vector<Term> terms_;
};

}  // namespace qorbit

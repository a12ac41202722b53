#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qorbit/error.hpp"

namespace qorbit {

/// Dense univariate polynomial over a field T; coeffs()[k] multiplies x^k.
template <class T>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly constant(const T& c) { return UPoly(std::vector<T>{c}); }
  static UPoly x() { return UPoly(std::vector<T>{T(0), T(1)}); }
  /// x - r
  static UPoly linear_root(const T& r) { return UPoly(std::vector<T>{-r, T(1)}); }

  const std::vector<T>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const T& leading() const { return c_.back(); }

  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<T> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) + b.coeff(k);
    return UPoly(std::move(out));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<T> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) - b.coeff(k);
    return UPoly(std::move(out));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(out));
  }
  friend UPoly operator*(const T& s, const UPoly& p) {
    std::vector<T> out = p.c_;
    for (auto& x : out) x = s * x;
    return UPoly(std::move(out));
  }

  /// Horner evaluation.
  T operator()(const T& x) const {
    T acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  /// Quotient and remainder; the divisor must be nonzero.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    std::vector<T> r = c_;
    if (r.size() < d.c_.size()) return {UPoly(), *this};
    std::vector<T> q(r.size() - d.c_.size() + 1);
    T inv = T(1) / d.leading();
    for (std::size_t k = q.size(); k-- > 0;) {
      T f = r[k + d.c_.size() - 1] * inv;
      q[k] = f;
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] = r[k + j] - f * d.c_[j];
    }
    r.resize(d.c_.size() - 1);
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  bool divisible_by(const UPoly& d) const { return divmod(d).second.is_zero(); }

  /// p(q(x)).
  UPoly compose(const UPoly& inner) const {
    UPoly acc;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * inner + constant(c_[k]);
    return acc;
  }

  /// p(x + s).
  UPoly shift(const T& s) const { return compose(UPoly(std::vector<T>{s, T(1)})); }

  /// e.g. "3*x^2 + (a - 1)*x + 2" with coefficient strings from to_string().
  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k].is_zero()) continue;
      std::string cs = c_[k].to_string();
      if (!out.empty()) out += " + ";
      std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
      if (mono.empty()) out += cs;
      else if (cs == "1") out += mono;
      else out += "(" + cs + ")*" + mono;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<T> c_;
};

}  // namespace qorbit

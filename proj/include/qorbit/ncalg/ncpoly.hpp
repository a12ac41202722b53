#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qorbit/error.hpp"
#include "qorbit/linalg/matrix.hpp"
#include "qorbit/scalars/rational_function.hpp"

namespace qorbit {

/// Ordered generator names of a free algebra.
struct Alphabet {
  std::vector<std::string> names;

  std::size_t size() const { return names.size(); }
  std::uint16_t index(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<std::uint16_t>(i);
    throw DomainError("unknown generator '" + std::string(name) + "'");
  }
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline AlphabetPtr make_alphabet(std::vector<std::string> names) {
  return std::make_shared<const Alphabet>(Alphabet{std::move(names)});
}

using Word = std::vector<std::uint16_t>;

/// Degree first, then lexicographic in generator index.
struct DegLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

inline Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

inline std::string word_to_string(const Word& w, const Alphabet& alpha) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += "*";
    out += alpha.names.at(w[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

/// Element of the free associative algebra over RF on a fixed alphabet.
/// A default-constructed NCPoly is zero and adopts the alphabet of whatever
/// it is combined with.
class NCPoly {
 public:
  using TermMap = std::map<Word, RF, DegLex>;

  NCPoly() = default;
  explicit NCPoly(AlphabetPtr alpha) : alpha_(std::move(alpha)) {}

  static NCPoly constant(AlphabetPtr alpha, const RF& c) { return monomial(std::move(alpha), {}, c); }
  static NCPoly generator(AlphabetPtr alpha, std::uint16_t g) { return monomial(std::move(alpha), {g}, RF(1)); }
  static NCPoly generator(AlphabetPtr alpha, std::string_view name) {
    auto g = alpha->index(name);
    return generator(std::move(alpha), g);
  }
  static NCPoly monomial(AlphabetPtr alpha, Word w, const RF& c) {
    NCPoly p(std::move(alpha));
    if (!c.is_zero()) p.terms_.emplace(std::move(w), c);
    return p;
  }

  const AlphabetPtr& alphabet() const { return alpha_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

  /// Largest word in deg-lex order and its coefficient.
  const std::pair<const Word, RF>& leading() const {
    if (terms_.empty()) throw DomainError("leading term of zero");
    return *terms_.rbegin();
  }

  RF coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? RF(0) : it->second;
  }

  bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }

  NCPoly operator-() const {
    NCPoly out = *this;
    for (auto& [w, c] : out.terms_) c = -c;
    return out;
  }

  NCPoly& add_term(const Word& w, const RF& c) {
    if (c.is_zero()) return *this;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
  }

  /// this += c · left · other · right
  NCPoly& add_scaled(const NCPoly& other, const RF& c, const Word& left = {}, const Word& right = {}) {
    adopt(other);
    if (c.is_zero()) return *this;
    for (const auto& [w, d] : other.terms_) add_term(concat(concat(left, w), right), c.is_one() ? d : c * d);
    return *this;
  }

  NCPoly& operator+=(const NCPoly& o) { return add_scaled(o, RF(1)); }
  NCPoly& operator-=(const NCPoly& o) { return add_scaled(o, RF(-1)); }

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }

  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly out(a.alpha_ ? a.alpha_ : b.alpha_);
    out.adopt(b);
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) out.add_term(concat(wa, wb), ca * cb);
    return out;
  }

  friend NCPoly operator*(const RF& c, const NCPoly& p) {
    NCPoly out(p.alpha_);
    if (c.is_zero()) return out;
    out.terms_ = p.terms_;
    if (!c.is_one())
      for (auto& [w, d] : out.terms_) d *= c;
    return out;
  }
  friend NCPoly operator*(const NCPoly& p, const RF& c) { return c * p; }

  /// Terms of exactly degree d.
  NCPoly homogeneous_part(std::size_t d) const {
    NCPoly out(alpha_);
    for (const auto& [w, c] : terms_)
      if (w.size() == d) out.terms_.emplace(w, c);
    return out;
  }

  template <class F>
  NCPoly map_coefficients(F&& f) const {
    NCPoly out(alpha_);
    for (const auto& [w, c] : terms_) out.add_term(w, f(c));
    return out;
  }

  /// Highest-degree-first printed form, e.g. "L11*L22 - (q - 1/q)*L12".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [w, c] = *it;
      std::string cs = c.to_string();
      bool neg = false;
      bool simple = c.is_constant() || (c.is_polynomial() && c.numerator().size() == 1);
      if (simple && cs[0] == '-') {
        neg = true;
        cs = cs.substr(1);
      }
      if (!simple) cs = "(" + cs + ")";
      out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      first = false;
      if (w.empty()) out += cs;
      else if (cs == "1") out += word_to_string(w, *alpha_);
      else out += cs + "*" + word_to_string(w, *alpha_);
    }
    return out;
  }

 private:
  void adopt(const NCPoly& other) {
    if (!alpha_) {
      alpha_ = other.alpha_;
      return;
    }
    if (other.alpha_ && other.alpha_ != alpha_ && other.alpha_->names != alpha_->names)
      throw DomainError("noncommutative polynomials over different alphabets");
  }

  AlphabetPtr alpha_;
  TermMap terms_;
};

inline NCPoly commutator(const NCPoly& a, const NCPoly& b) { return a * b - b * a; }

using NCMatrix = Matrix<NCPoly>;

template <class A, class B>
auto commutator(const Matrix<A>& a, const Matrix<B>& b) {
  return multiply(a, b) - multiply(b, a);
}

/// n×n matrix of generators; alphabet names must be listed row-major.
inline NCMatrix generator_matrix(const AlphabetPtr& alpha, std::size_t n, std::size_t offset = 0) {
  NCMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = NCPoly::generator(alpha, static_cast<std::uint16_t>(offset + i * n + j));
  return m;
}

/// Alphabet L11, L12, ..., Lnn.
inline AlphabetPtr matrix_alphabet(std::size_t n, const std::string& prefix = "L") {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) names.push_back(prefix + std::to_string(i) + std::to_string(j));
  return make_alphabet(std::move(names));
}

/// Scalar matrix lifted to constants of the free algebra.
inline NCMatrix lift(const Matrix<RF>& m, const AlphabetPtr& alpha) {
  return m.map([&](const RF& x) { return NCPoly::constant(alpha, x); });
}

/// Nonzero entries of lhs - rhs, keeping one representative per line RF·p.
inline std::vector<NCPoly> matrix_relation_entries(const NCMatrix& lhs, const NCMatrix& rhs) {
  lhs.check_same_shape(rhs);
  std::vector<NCPoly> out;
  std::vector<NCPoly> normalized;  // monic copies, for duplicate detection
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
      NCPoly d = lhs(i, j) - rhs(i, j);
      if (d.is_zero()) continue;
      NCPoly m = d.leading().second.inverse() * d;
      bool seen = false;
      for (const auto& e : normalized)
        if (e == m) {
          seen = true;
          break;
        }
      if (seen) continue;
      normalized.push_back(std::move(m));
      out.push_back(std::move(d));
    }
  return out;
}

}  // namespace qorbit

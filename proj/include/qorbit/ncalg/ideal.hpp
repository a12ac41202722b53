#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qorbit/ncalg/ncpoly.hpp"

namespace qorbit {

/// Incremental row echelon form of a set of NCPoly vectors, keyed by leading
/// word. Optionally records how each pivot row was obtained so that a
/// membership proof can be rebuilt in terms of the inserted vectors.
class LinearSpan {
 public:
  explicit LinearSpan(bool track = false) : track_(track) {}

  using Steps = std::vector<std::pair<std::size_t, RF>>;  // (pivot row, coefficient)

  std::size_t rank() const { return rows_.size(); }

  /// Inserts v (tagged by origin); returns true if the span grew.
  bool insert(const NCPoly& v, std::size_t origin = 0) {
    Steps steps;
    NCPoly r = reduce(v, track_ ? &steps : nullptr);
    if (r.is_zero()) return false;
    RF inv = r.leading().second.inverse();
    Row row{inv * r, inv, origin, std::move(steps)};
    pivot_.emplace(row.vec.leading().first, rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }

  bool contains(const NCPoly& v) const { return reduce(v, nullptr).is_zero(); }

  /// Expresses v as Σ coefficient·(inserted vector with that origin), or nullopt.
  std::optional<std::map<std::size_t, RF>> express(const NCPoly& v) const {
    if (!track_) throw DomainError("LinearSpan was built without provenance tracking");
    Steps steps;
    if (!reduce(v, &steps).is_zero()) return std::nullopt;
    // v = Σ steps; each row_k = inv_k·(origin_k - Σ c_j row_j)
    std::vector<RF> acc(rows_.size());
    for (const auto& [k, c] : steps) acc[k] += c;
    std::map<std::size_t, RF> out;
    for (std::size_t k = rows_.size(); k-- > 0;) {
      if (acc[k].is_zero()) continue;
      const Row& row = rows_[k];
      RF a = acc[k] * row.inv_lc;
      auto& slot = out[row.origin];
      slot += a;
      for (const auto& [j, c] : row.steps) acc[j] -= a * c;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }

 private:
  struct Row {
    NCPoly vec;  // monic
    RF inv_lc;
    std::size_t origin;
    Steps steps;
  };

  // Top-reduces v; records subtracted multiples of pivot rows.
  NCPoly reduce(NCPoly v, Steps* steps) const {
    while (!v.is_zero()) {
      const auto& [w, c] = v.leading();
      auto it = pivot_.find(w);
      if (it == pivot_.end()) break;
      RF coef = c;
      if (steps) steps->emplace_back(it->second, coef);
      v.add_scaled(rows_[it->second].vec, -coef);
    }
    return v;
  }

  bool track_;
  std::vector<Row> rows_;
  std::map<Word, std::size_t, DegLex> pivot_;
};

struct CertificateTerm {
  Word left;
  std::size_t generator = 0;
  Word right;
  RF coefficient;
};

/// Σ coefficient·left·generator·right = target.
struct MembershipCertificate {
  NCPoly target;
  std::vector<CertificateTerm> combination;
  std::size_t degree_bound = 0;
};

struct MembershipResult {
  std::optional<MembershipCertificate> certificate;  // nullopt: none up to the bound (inconclusive)
  std::size_t degree_bound = 0;
  std::size_t spanning_elements = 0;
  std::size_t rank = 0;
};

namespace detail {

// Calls f(word) for every word of the given length, in lexicographic order.
inline void for_each_word(std::size_t alphabet_size, std::size_t length, const std::function<void(const Word&)>& f) {
  Word w(length, 0);
  if (alphabet_size == 0) {
    if (length == 0) f(w);
    return;
  }
  while (true) {
    f(w);
    std::size_t i = length;
    while (i > 0 && w[i - 1] + 1u == alphabet_size) w[--i] = 0;
    if (i == 0) return;
    ++w[i - 1];
  }
}

// Enumerates left·g·right with total degree exactly s, in a fixed order.
inline void for_each_multiple(const std::vector<NCPoly>& gens, std::size_t alphabet_size, std::size_t s,
                              const std::function<void(const Word&, std::size_t, const Word&)>& f) {
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::size_t dg = gens[g].degree();
    if (gens[g].is_zero() || dg > s) continue;
    std::size_t k = s - dg;
    for (std::size_t a = 0; a <= k; ++a)
      for_each_word(alphabet_size, a, [&](const Word& left) {
        for_each_word(alphabet_size, k - a, [&](const Word& right) { f(left, g, right); });
      });
  }
}

inline NCPoly sandwich(const Word& left, const NCPoly& g, const Word& right) {
  NCPoly out(g.alphabet());
  return out.add_scaled(g, RF(1), left, right);
}

}  // namespace detail

/// Expands a certificate independently of the solver.
inline NCPoly expand_certificate(const std::vector<NCPoly>& generators, const MembershipCertificate& cert) {
  NCPoly sum(cert.target.alphabet());
  for (const auto& t : cert.combination) {
    if (t.generator >= generators.size()) throw DomainError("certificate refers to an unknown generator");
    sum.add_scaled(generators[t.generator], t.coefficient, t.left, t.right);
  }
  return sum;
}

inline bool verify_certificate(const std::vector<NCPoly>& generators, const MembershipCertificate& cert) {
  return expand_certificate(generators, cert) == cert.target;
}

/// Searches for target in the two-sided ideal generated by generators, using the
/// spanning set {w·g·v : deg ≤ bound}. Returns as soon as a certificate exists at
/// the current degree layer.
inline MembershipResult ideal_membership(const std::vector<NCPoly>& generators, const NCPoly& target,
                                         std::size_t degree_bound) {
  if (target.degree() > degree_bound)
    throw DomainError("degree bound " + std::to_string(degree_bound) + " is below the target degree " +
                      std::to_string(target.degree()));
  MembershipResult res;
  res.degree_bound = degree_bound;
  const AlphabetPtr& alpha = target.alphabet() ? target.alphabet() : generators.at(0).alphabet();
  std::size_t asize = alpha ? alpha->size() : 0;

  MembershipCertificate cert;
  cert.target = target;
  cert.degree_bound = degree_bound;
  if (target.is_zero()) {
    res.certificate = cert;
    return res;
  }

  LinearSpan span(true);
  std::vector<std::tuple<Word, std::size_t, Word>> origins;
  std::size_t min_gen = SIZE_MAX;
  for (const auto& g : generators)
    if (!g.is_zero()) min_gen = std::min(min_gen, g.degree());

  for (std::size_t s = 0; s <= degree_bound; ++s) {
    detail::for_each_multiple(generators, asize, s, [&](const Word& l, std::size_t g, const Word& r) {
      origins.emplace_back(l, g, r);
      span.insert(detail::sandwich(l, generators[g], r), origins.size() - 1);
    });
    if (s < target.degree() || s < min_gen) continue;
    if (auto combo = span.express(target)) {
      for (const auto& [o, c] : *combo) {
        const auto& [l, g, r] = origins[o];
        cert.combination.push_back({l, g, r, c});
      }
      res.certificate = std::move(cert);
      break;
    }
  }
  res.spanning_elements = origins.size();
  res.rank = span.rank();
  return res;
}

/// dim of (free algebra in degree ≤ bound) / span{w·g·v : deg ≤ bound}.
inline std::size_t quotient_dimension(const AlphabetPtr& alpha, const std::vector<NCPoly>& generators,
                                      std::size_t degree_bound) {
  std::size_t asize = alpha->size(), total = 0, power = 1;
  for (std::size_t k = 0; k <= degree_bound; ++k, power *= asize) total += power;
  LinearSpan span(false);
  for (std::size_t s = 0; s <= degree_bound; ++s)
    detail::for_each_multiple(generators, asize, s, [&](const Word& l, std::size_t g, const Word& r) {
      span.insert(detail::sandwich(l, generators[g], r));
    });
  return total - span.rank();
}

}  // namespace qorbit

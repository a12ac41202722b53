#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qorbit/error.hpp"
#include "qorbit/ncalg/ideal.hpp"
#include "qorbit/orbits.hpp"
#include "qorbit/quantorbit.hpp"
#include "qorbit/rmatrix.hpp"

namespace qorbit {

/// Abelian twist F = q^{Σ_{k<l} u_kl (h_k⊗h_l - h_l⊗h_k)}. params holds the
/// formal value of q^{u_kl} for k < l (zero-based); missing pairs are 1.
struct AbelianCocycleRep {
  std::size_t n = 0;
  std::map<std::pair<std::size_t, std::size_t>, RF> params;
  RFMatrix f_rep;  // on e_i⊗e_j: q^{B_ij}

  RF param(std::size_t k, std::size_t l) const {
    auto it = params.find({k, l});
    return it == params.end() ? RF(1) : it->second;
  }

  /// q^{B(x, y)} for integer weights x, y, with B antisymmetric, B_kl = u_kl for k < l.
  RF q_pow_b(const std::vector<long>& x, const std::vector<long>& y) const {
    RF out(1);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = k + 1; l < n; ++l) {
        long e = x[k] * y[l] - x[l] * y[k];
        if (e != 0) out *= param(k, l).pow(static_cast<int>(e));
      }
    return out;
  }

  std::vector<long> unit(std::size_t i) const {
    std::vector<long> e(n, 0);
    e[i] = 1;
    return e;
  }

  /// q^{B_ij}.
  RF b_entry(std::size_t i, std::size_t j) const { return q_pow_b(unit(i), unit(j)); }

  bool is_trivial() const {
    for (const auto& [kl, v] : params)
      if (!v.is_one()) return false;
    return true;
  }
};

/// Name of the formal symbol standing for q^{u_kl}, one-based: qu12, qu13, ...
inline std::string twist_symbol(std::size_t k, std::size_t l) {
  return "qu" + std::to_string(k + 1) + (k + 1 >= 10 || l + 1 >= 10 ? "_" : "") + std::to_string(l + 1);
}

inline std::map<std::pair<std::size_t, std::size_t>, RF> symbolic_twist_params(std::size_t n) {
  std::map<std::pair<std::size_t, std::size_t>, RF> out;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) out[{k, l}] = RF::variable(twist_symbol(k, l));
  return out;
}

inline AbelianCocycleRep abelian_cocycle_rep(std::size_t n, std::map<std::pair<std::size_t, std::size_t>, RF> params) {
  if (n == 0) throw DomainError("twist rank must be positive");
  AbelianCocycleRep f{n, {}, RFMatrix(n * n, n * n)};
  for (auto& [kl, v] : params) {
    if (kl.first >= kl.second || kl.second >= n)
      throw DomainError("twist parameter (" + std::to_string(kl.first + 1) + "," + std::to_string(kl.second + 1) +
                        ") is not a pair k < l <= n");
    if (v.is_zero()) throw DomainError("twist parameter " + twist_symbol(kl.first, kl.second) + " must be invertible");
    f.params[kl] = v;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f.f_rep(i * n + j, i * n + j) = f.b_entry(i, j);
  return f;
}

/// Element q^{Σ c·B(x·h, y·h)} of the Cartan part of H^{⊗slots}, where x·h = Σ_s x_s h^{(s)}.
/// Coproduct, antipode, counit and multiplication act on the slot coefficients.
struct CartanExp {
  struct Term {
    long coeff;
    std::vector<long> x, y;
  };
  std::size_t slots = 0;
  std::vector<Term> terms;

  /// F itself: B(h⊗1, 1⊗h).
  static CartanExp cocycle() { return {2, {{1, {1, 0}, {0, 1}}}}; }
  static CartanExp one(std::size_t slots) { return {slots, {}}; }

  CartanExp inverse() const {
    CartanExp out = *this;
    for (auto& t : out.terms) t.coeff = -t.coeff;
    return out;
  }
  CartanExp operator*(const CartanExp& o) const {
    if (o.slots != slots) throw DomainError("multiplying elements of different tensor powers");
    CartanExp out = *this;
    out.terms.insert(out.terms.end(), o.terms.begin(), o.terms.end());
    return out;
  }
  /// Δ on slot s: h^{(s)} ↦ h^{(s)} + h^{(s+1)}.
  CartanExp coproduct(std::size_t s) const {
    return remap([&](const std::vector<long>& v) {
      std::vector<long> w(v.begin(), v.end());
      w.insert(w.begin() + static_cast<long>(s) + 1, v[s]);
      return w;
    }, slots + 1);
  }
  /// γ on slot s: h ↦ -h.
  CartanExp antipode(std::size_t s) const {
    return remap([&](std::vector<long> v) {
      v[s] = -v[s];
      return v;
    }, slots);
  }
  /// ε on slot s: h ↦ 0, slot removed.
  CartanExp counit(std::size_t s) const {
    return remap([&](std::vector<long> v) {
      v.erase(v.begin() + static_cast<long>(s));
      return v;
    }, slots - 1);
  }
  /// Multiplies slot b into slot a (Cartan elements commute) and removes b.
  CartanExp merge(std::size_t a, std::size_t b) const {
    return remap([&](std::vector<long> v) {
      v[a] += v[b];
      v.erase(v.begin() + static_cast<long>(b));
      return v;
    }, slots - 1);
  }
  /// Places the slots of this element at the given positions of a larger tensor power.
  CartanExp embed(const std::vector<std::size_t>& positions, std::size_t total) const {
    return remap([&](const std::vector<long>& v) {
      std::vector<long> w(total, 0);
      for (std::size_t s = 0; s < v.size(); ++s) w[positions[s]] += v[s];
      return w;
    }, total);
  }

  /// Value on weight vectors (one per slot).
  RF evaluate(const AbelianCocycleRep& f, const std::vector<std::vector<long>>& weights) const {
    RF out(1);
    for (const auto& t : terms) {
      std::vector<long> x(f.n, 0), y(f.n, 0);
      for (std::size_t s = 0; s < slots; ++s)
        for (std::size_t k = 0; k < f.n; ++k) {
          x[k] += t.x[s] * weights[s][k];
          y[k] += t.y[s] * weights[s][k];
        }
      RF v = f.q_pow_b(x, y);
      out *= v.pow(static_cast<int>(t.coeff));
    }
    return out;
  }

  /// Diagonal of the image in V^{⊗slots}, basis tuples in lexicographic order.
  std::vector<RF> rep_diagonal(const AbelianCocycleRep& f) const {
    std::vector<RF> out;
    std::vector<std::size_t> idx(slots, 0);
    while (true) {
      std::vector<std::vector<long>> w;
      for (auto i : idx) w.push_back(f.unit(i));
      out.push_back(evaluate(f, w));
      std::size_t k = slots;
      while (k > 0 && idx[k - 1] + 1 == f.n) idx[--k] = 0;
      if (k == 0) break;
      ++idx[k - 1];
    }
    return out;
  }

 private:
  template <class Fn>
  CartanExp remap(Fn&& fn, std::size_t new_slots) const {
    CartanExp out{new_slots, {}};
    for (const auto& t : terms) out.terms.push_back({t.coeff, fn(t.x), fn(t.y)});
    return out;
  }
};

/// ζ = F₂⁻¹ γ⁻¹(F₁⁻¹).
inline CartanExp twist_zeta(const CartanExp& f = CartanExp::cocycle()) { return f.inverse().antipode(0).merge(1, 0); }

/// Linear operator on n×n matrices; Φ(E_ij) = diag[i·n + j]·E_ij (all abelian-twist operators are diagonal).
struct PhiOperator {
  std::size_t n = 0;
  std::vector<RF> diag;

  RFMatrix matrix() const {
    RFMatrix m(n * n, n * n);
    for (std::size_t k = 0; k < n * n; ++k) m(k, k) = diag[k];
    return m;
  }
  RFMatrix apply(const RFMatrix& x) const {
    RFMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = diag[i * n + j] * x(i, j);
    return out;
  }
  PhiOperator compose(const PhiOperator& o) const {
    PhiOperator out{n, diag};
    for (std::size_t k = 0; k < diag.size(); ++k) out.diag[k] *= o.diag[k];
    return out;
  }
  bool is_identity() const {
    for (const auto& d : diag)
      if (!d.is_one()) return false;
    return true;
  }
  bool invertible() const {
    for (const auto& d : diag)
      if (d.is_zero()) return false;
    return true;
  }
  PhiOperator inverse() const {
    PhiOperator out{n, diag};
    for (auto& d : out.diag) d = d.inverse();
    return out;
  }
};

namespace detail {

// X ↦ ρ(a₁) X ρ(a₂) for a two-slot Cartan element a.
inline PhiOperator sandwich_operator(const AbelianCocycleRep& f, const CartanExp& a) {
  PhiOperator op{f.n, {}};
  for (std::size_t i = 0; i < f.n; ++i)
    for (std::size_t j = 0; j < f.n; ++j) op.diag.push_back(a.evaluate(f, {f.unit(i), f.unit(j)}));
  return op;
}

}  // namespace detail

/// Φ(X) = ρ(γ(F₁ζ)) X ρ(F₂).
inline PhiOperator phi_operator(const AbelianCocycleRep& f) {
  CartanExp a = (CartanExp::cocycle() * twist_zeta().embed({0}, 2)).antipode(0);
  return detail::sandwich_operator(f, a);
}

/// Back from the twisted algebra with the inverse cocycle F̄ = F⁻¹ and ζ⁻¹:
/// X ↦ ρ(γ(F̄₁ζ⁻¹)) X ρ(F̄₂).
inline PhiOperator phi_inverse_via_zeta_inverse(const AbelianCocycleRep& f) {
  CartanExp a = (CartanExp::cocycle().inverse() * twist_zeta().inverse().embed({0}, 2)).antipode(0);
  return detail::sandwich_operator(f, a);
}

/// Same, with the twisted antipode's own ζ̃ = F̄₂⁻¹ γ̃⁻¹(F̄₁⁻¹); γ̃ = γ∘Ad ζ⁻¹ is γ on the Cartan part.
inline PhiOperator phi_inverse_via_twisted_zeta(const AbelianCocycleRep& f) {
  CartanExp fbar = CartanExp::cocycle().inverse();
  CartanExp a = (fbar * twist_zeta(fbar).embed({0}, 2)).antipode(0);
  return detail::sandwich_operator(f, a);
}

struct CocycleReport {
  bool cocycle_identity = false;  // (Δ⊗id)(F) F₁₂ = (id⊗Δ)(F) F₂₃ on V⊗3
  bool counit = false;            // (ε⊗id)(F) = (id⊗ε)(F) = 1
  bool unit_identity = false;     // γ(ζ)γ(F₁)F₂ = 1 on V
  bool contraction_identity = false;         // m₂₃γ₃((Δ⊗Δ)(F)(F⊗F)(ζ⊗1⊗ζ⊗1)) = F₁ζ⊗1⊗F₂ on V⊗3
  bool all() const { return cocycle_identity && counit && unit_identity && contraction_identity; }
};

inline CocycleReport check_cocycle(const AbelianCocycleRep& f) {
  CocycleReport rep;
  const CartanExp F = CartanExp::cocycle();
  CartanExp lhs = F.coproduct(0) * F.embed({0, 1}, 3);
  CartanExp rhs = F.coproduct(1) * F.embed({1, 2}, 3);
  rep.cocycle_identity = lhs.rep_diagonal(f) == rhs.rep_diagonal(f);

  std::vector<RF> ones(f.n, RF(1));
  rep.counit = F.counit(0).rep_diagonal(f) == ones && F.counit(1).rep_diagonal(f) == ones;

  CartanExp zeta = twist_zeta(F);
  CartanExp unit = zeta.antipode(0) * F.antipode(0).merge(0, 1);
  rep.unit_identity = unit.rep_diagonal(f) == ones;

  CartanExp dd = F.coproduct(1).coproduct(0);  // slots (1,2) | (3,4) of the text, zero-based 0..3
  CartanExp prod = dd * F.embed({0, 1}, 4) * F.embed({2, 3}, 4) * zeta.embed({0}, 4) * zeta.embed({2}, 4);
  CartanExp left = prod.antipode(2).merge(1, 2);
  CartanExp right = F.embed({0, 2}, 3) * zeta.embed({0}, 3);
  rep.contraction_identity = left.rep_diagonal(f) == right.rep_diagonal(f);
  return rep;
}

/// R̃ = F₂₁⁻¹ R F.
inline RMatrix twisted_r_matrix(const RMatrix& r, const AbelianCocycleRep& f) {
  if (r.n != f.n) throw DomainError("R-matrix and twist have different ranks");
  RFMatrix f21 = flip(f.n) * f.f_rep * flip(f.n);
  auto inv = inverse(f21, RF(1));
  if (!inv) throw DomainError("twist is not invertible");
  return {r.n, *inv * r.entries * f.f_rep};
}

struct TwistedStructures {
  RMatrix r_tilde;
  RFMatrix s_tilde;
  DMatrix d_tilde;
  AxiomReport axioms;
  bool trace_normalized = false;  // tr D̃ = (1 - q^{-2n})/(1 - q^{-2})
};

inline TwistedStructures twisted_structures(const RMatrix& r, const AbelianCocycleRep& f) {
  TwistedStructures out;
  out.r_tilde = twisted_r_matrix(r, f);
  out.s_tilde = quantum_permutation(out.r_tilde);
  out.d_tilde = compute_d_matrix(out.r_tilde);
  out.axioms = verify_rmatrix_axioms(out.r_tilde);
  out.trace_normalized = out.d_tilde.trace() == q_integer(static_cast<unsigned>(r.n));
  return out;
}

/// φ on monomials of the twisted algebra: φ(L̃_{a₁b₁}⋯L̃_{a_kb_k}) is
/// Π q^{-B_{a b}} · Π_{x<y} q^{B(w_x, w_y)} · L_{a₁b₁}⋯L_{a_kb_k}, w = e_b - e_a;
/// the second product is the twisted multiplication (F₁▷·)(F₂▷·).
inline NCPoly phi_map(const NCPoly& p, const AbelianCocycleRep& f, const PhiOperator& phi) {
  const std::size_t n = f.n;
  NCPoly out(p.alphabet());
  for (const auto& [w, c] : p.terms()) {
    RF factor(1);
    std::vector<std::vector<long>> weights;
    for (auto g : w) {
      std::size_t a = g / n, b = g % n;
      factor *= phi.diag[a * n + b];
      std::vector<long> wt(n, 0);
      wt[b] += 1;
      wt[a] -= 1;
      weights.push_back(std::move(wt));
    }
    for (std::size_t x = 0; x < weights.size(); ++x)
      for (std::size_t y = x + 1; y < weights.size(); ++y) factor *= f.q_pow_b(weights[x], weights[y]);
    out.add_term(w, c * factor);
  }
  return out;
}

struct TwistReport {
  TwistedStructures twisted;
  CocycleReport cocycle;
  bool phi_invertible = false;
  bool phi_inverse_zeta_inverse = false;  // Φ∘Φ⁻¹ = id for the ζ⁻¹ composition
  bool phi_inverse_twisted_zeta = false;  // and for the ζ̃ composition
  bool trivial_twist_neutral = false;     // trivial F: Φ = id, R̃ = R
  bool d_invariant = false;               // D̃ = D
  bool trace_element_identity = false;                // ρ(F₂ R̃₁γ̃(R̃₂) γ(F₁ζ)) = ρ(R₁γ(R₂))
  bool relation_spans_match = false;              // span φ(mRE(R̃, t)) = span mRE(R, t)
  std::size_t rank_standard = 0, rank_twisted_image = 0, rank_union = 0;
  bool qtraces_preserved = false;         // (tr_q⊗φ)(L̃^m) = tr_q(L^m), m ≤ 3
  bool polynomial_images = false;         // (id⊗φ)(P(L̃)) = (Φ⊗id)(P(L))
  bool all() const {
    return twisted.axioms.ybe && twisted.axioms.hecke && twisted.trace_normalized && cocycle.all() && phi_invertible &&
           phi_inverse_zeta_inverse && phi_inverse_twisted_zeta && trivial_twist_neutral && d_invariant && trace_element_identity &&
           relation_spans_match && qtraces_preserved && polynomial_images;
  }
};

namespace detail {

// (R₁γ(R₂)) in the fundamental representation, unnormalized: the leg product of R*.
inline RFMatrix u_element(const RMatrix& r) {
  const std::size_t n = r.n;
  RFMatrix rs = r_star(r), u(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t j = 0; j < n; ++j) u(i, m) += rs(i * n + j, j * n + m);
  return u;
}

inline std::size_t span_rank(const std::vector<NCPoly>& v) {
  LinearSpan s;
  for (const auto& p : v) s.insert(p);
  return s.rank();
}

// Entries of Φ applied to each entry position of M (an NC matrix): Φ(E_ij) scales entry (i,j).
inline NCMatrix phi_tensor(const PhiOperator& phi, const NCMatrix& m) {
  NCMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = phi.diag[i * m.cols() + j] * m(i, j);
  return out;
}

}  // namespace detail

/// Checks the twist correspondence for R and the abelian twist F. P defaults to
/// the minimal polynomial of orbit when one is given; powers L^m, m ≤ 3, are always checked.
inline TwistReport verify_twist_correspondence(const RMatrix& r, const AbelianCocycleRep& f, const RF& t,
                                               const std::optional<OrbitData>& orbit = {}) {
  const std::size_t n = r.n;
  TwistReport rep;
  rep.twisted = twisted_structures(r, f);
  rep.cocycle = check_cocycle(f);

  PhiOperator phi = phi_operator(f);
  rep.phi_invertible = phi.invertible();
  rep.phi_inverse_zeta_inverse = phi.compose(phi_inverse_via_zeta_inverse(f)).is_identity();
  rep.phi_inverse_twisted_zeta = phi.compose(phi_inverse_via_twisted_zeta(f)).is_identity();
  {
    AbelianCocycleRep trivial = abelian_cocycle_rep(n, {});
    rep.trivial_twist_neutral =
        phi_operator(trivial).is_identity() && twisted_r_matrix(r, trivial).entries == r.entries;
  }

  DMatrix d = compute_d_matrix(r);
  rep.d_invariant = rep.twisted.d_tilde.entries == d.entries;

  // F₂ · ũ · γ(F₁ζ) with the sums over F collapsed on weight spaces.
  {
    CartanExp legs = (CartanExp::cocycle() * twist_zeta().embed({0}, 2)).antipode(0);  // γ(F₁ζ) ⊗ F₂
    RFMatrix ut = detail::u_element(rep.twisted.r_tilde), u = detail::u_element(r), lhs(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        // ρ(F₂) on the left picks weight b of slot 2, ρ(γ(F₁ζ)) on the right picks weight a of slot 1
        RF c = legs.evaluate(f, {f.unit(b), f.unit(a)});
        lhs(a, b) = c * ut(a, b);
      }
    rep.trace_element_identity = lhs == u;
  }

  MREAlgebra standard = mre_algebra(r, t);
  MREAlgebra twisted = mre_algebra(rep.twisted.r_tilde, t);
  {
    std::vector<NCPoly> image;
    for (const auto& p : twisted.relations) image.push_back(phi_map(p, f, phi));
    rep.rank_standard = detail::span_rank(standard.relations);
    rep.rank_twisted_image = detail::span_rank(image);
    std::vector<NCPoly> both = standard.relations;
    both.insert(both.end(), image.begin(), image.end());
    rep.rank_union = detail::span_rank(both);
    rep.relation_spans_match = rep.rank_standard == rep.rank_twisted_image && rep.rank_union == rep.rank_standard;
  }

  const AlphabetPtr& alpha = standard.alphabet;
  NCMatrix l = standard.l;
  NCMatrix power = lift(RFMatrix::identity(n, RF(1)), alpha);
  rep.qtraces_preserved = true;
  rep.polynomial_images = true;
  for (std::size_t m = 0; m <= 3; ++m) {
    NCPoly lhs(alpha), rhs(alpha);
    for (std::size_t i = 0; i < n; ++i) {
      lhs += rep.twisted.d_tilde.entries(i, i) * phi_map(power(i, i), f, phi);
      rhs += d.entries(i, i) * power(i, i);
    }
    if (!(lhs == rhs)) rep.qtraces_preserved = false;
    NCMatrix image = power.map([&](const NCPoly& x) { return phi_map(x, f, phi); });
    if (!(image == detail::phi_tensor(phi, power))) rep.polynomial_images = false;
    power = power * l;
  }
  if (orbit) {
    NCMatrix p = evaluate_matrix_poly(minimal_polynomial(*orbit), l, alpha);
    NCMatrix image = p.map([&](const NCPoly& x) { return phi_map(x, f, phi); });
    if (!(image == detail::phi_tensor(phi, p))) rep.polynomial_images = false;
  }
  return rep;
}

}  // namespace qorbit

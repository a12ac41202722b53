#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qorbit/ncalg/ideal.hpp"
#include "qorbit/ncalg/ncpoly.hpp"
#include "qorbit/orbits.hpp"
#include "qorbit/qtrace.hpp"
#include "qorbit/rmatrix.hpp"

namespace qorbit {

/// Modified reflection equation algebra: generators L_ij modulo the entries of
/// [S L₂ S, L₂] + q t [S, L₂], L₂ = 1⊗L.
struct MREAlgebra {
  std::size_t n = 0;
  RFMatrix s;
  RF t;
  AlphabetPtr alphabet;
  NCMatrix l;  // generator matrix
  std::vector<NCPoly> relations;
};

/// 1⊗L as an n²×n² matrix: entry ((i,k),(i,l)) = L_kl.
inline NCMatrix second_leg(const NCMatrix& l) { return kron(RFMatrix::identity(l.rows(), RF(1)), l); }

inline MREAlgebra mre_algebra(const RMatrix& r, const RF& t) {
  MREAlgebra alg;
  alg.n = r.n;
  alg.s = quantum_permutation(r);
  alg.t = t;
  alg.alphabet = matrix_alphabet(r.n);
  alg.l = generator_matrix(alg.alphabet, r.n);
  NCMatrix l2 = second_leg(alg.l);
  NCMatrix sl2s = multiply(multiply(alg.s, l2), alg.s);
  NCMatrix lhs = commutator(sl2s, l2);
  NCMatrix rhs = commutator(alg.s, l2).map([&](const NCPoly& x) { return -(param_q() * t) * x; });
  alg.relations = matrix_relation_entries(lhs, rhs);
  return alg;
}

inline MREAlgebra mre_relations(std::size_t n, const RF& t) { return mre_algebra(standard_r_matrix(n), t); }

/// τ_m = tr(D L^m).
inline NCPoly q_trace_of_power(std::size_t m, const MREAlgebra& alg, const DMatrix& d) {
  NCMatrix p = lift(RFMatrix::identity(alg.n, RF(1)), alg.alphabet);
  for (std::size_t k = 0; k < m; ++k) p = p * alg.l;
  NCPoly tr = multiply(d.entries, p).trace();
  return tr;
}

/// ω = 1 - q^{-2}.
inline RF omega_of_q() { return RF(1) - param_q().pow(-2); }

/// The point on the t-line used for bundle quantization: t = -λ₁ω.
inline RF curve_t(const RF& lambda1) { return -lambda1 * omega_of_q(); }

/// p(M) for a square NC matrix M.
inline NCMatrix evaluate_matrix_poly(const RFPoly& p, const NCMatrix& m, const AlphabetPtr& alpha) {
  NCMatrix id = lift(RFMatrix::identity(m.rows(), RF(1)), alpha);
  NCMatrix acc = lift(RFMatrix(m.rows(), m.cols()), alpha);
  for (std::size_t k = p.coeffs().size(); k-- > 0;)
    acc = acc * m + id.map([&](const NCPoly& x) { return p.coeffs()[k] * x; });
  return acc;
}

/// Quantized orbit: mRE relations, the minimal polynomial of L, and the
/// q-trace conditions τ_r = ϑ_r (ω = 1 - q^{-2}).
struct QuantumOrbitIdeal {
  MREAlgebra base;
  OrbitData orbit;
  DMatrix d;
  std::vector<NCPoly> minimal_poly_relations;
  std::vector<NCPoly> trace_relations;  // index r-1 holds τ_r - ϑ_r

  std::vector<NCPoly> all_relations() const {
    std::vector<NCPoly> out = base.relations;
    out.insert(out.end(), minimal_poly_relations.begin(), minimal_poly_relations.end());
    out.insert(out.end(), trace_relations.begin(), trace_relations.end());
    return out;
  }
};

/// Π (x - λ_i) over the distinct eigenvalues.
inline RFPoly minimal_polynomial(const OrbitData& orbit) {
  RFPoly p = RFPoly::constant(RF(1));
  for (const auto& e : orbit.eigenvalues) p = p * RFPoly::linear_root(e);
  return p;
}

inline QuantumOrbitIdeal orbit_ideal(const OrbitData& orbit, const RF& t, std::optional<std::size_t> n = {}) {
  if (n && *n != orbit.n())
    throw DomainError("multiplicities add up to " + std::to_string(orbit.n()) + ", not " + std::to_string(*n));
  QuantumOrbitIdeal ideal{mre_relations(orbit.n(), t), orbit, compute_d_matrix(standard_r_matrix(orbit.n())), {}, {}};
  const auto& alpha = ideal.base.alphabet;
  NCMatrix m = evaluate_matrix_poly(minimal_polynomial(orbit), ideal.base.l, alpha);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) ideal.minimal_poly_relations.push_back(m(i, j));
  for (std::size_t r = 1; r < orbit.l(); ++r) {
    RF th = theta(static_cast<unsigned>(r), orbit, t, omega_of_q());
    ideal.trace_relations.push_back(q_trace_of_power(r, ideal.base, ideal.d) - NCPoly::constant(alpha, th));
  }
  return ideal;
}

/// Coefficientwise t → 0, then q → 1.
inline NCPoly classical_specialization(const NCPoly& p) {
  return p.map_coefficients([](const RF& c) { return specialize(specialize(c, {{"t", RF(0)}}), {{"q", RF(1)}}); });
}

/// Generators of the classical orbit ideal: entries of Π(L - λ_i) and
/// tr L^r - Σ n_i λ_i^r for r = 1..l-1.
inline std::vector<NCPoly> classical_orbit_relations(const OrbitData& orbit, const AlphabetPtr& alpha) {
  const std::size_t n = orbit.n();
  NCMatrix l = generator_matrix(alpha, n);
  std::vector<NCPoly> out;
  NCMatrix m = evaluate_matrix_poly(minimal_polynomial(orbit), l, alpha);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!m(i, j).is_zero()) out.push_back(m(i, j));
  NCMatrix p = lift(RFMatrix::identity(n, RF(1)), alpha);
  for (std::size_t r = 1; r < orbit.l(); ++r) {
    p = p * l;
    out.push_back(p.trace() - NCPoly::constant(alpha, classical_trace(static_cast<unsigned>(r), orbit)));
  }
  return out;
}

/// True when the q → 1, t → 0 images of the orbit relations are the classical ones.
inline bool classical_limit_matches(const QuantumOrbitIdeal& ideal) {
  std::vector<NCPoly> got;
  for (const auto& r : ideal.minimal_poly_relations) got.push_back(classical_specialization(r));
  for (const auto& r : ideal.trace_relations) got.push_back(classical_specialization(r));
  return got == classical_orbit_relations(ideal.orbit, ideal.base.alphabet);
}

struct HeckeMembership {
  AlphabetPtr alphabet;
  std::vector<NCPoly> generators;  // [SLS,L], S² - αS - 1, L·Q(L) - βL
  NCPoly target;                   // [S·Q(L)·S, Q(L)]
  MembershipResult result;
  bool verified = false;           // certificate re-expands to the target
  bool conclusive() const { return result.certificate.has_value(); }
};

inline std::size_t default_hecke_bound(const RFPoly& q) { return 2 * static_cast<std::size_t>(std::max(q.degree(), 0)) + 4; }

/// Looks for a certificate that [S Q(L) S, Q(L)] lies in ⟨[SLS,L], S² - αS - 1, L Q(L) - βL⟩
/// in the free algebra on S, L.
inline HeckeMembership hecke_membership(const RFPoly& q, const RF& alpha, const RF& beta,
                                        std::optional<std::size_t> bound = {}) {
  HeckeMembership h;
  h.alphabet = make_alphabet({"S", "L"});
  NCPoly s = NCPoly::generator(h.alphabet, "S"), l = NCPoly::generator(h.alphabet, "L");
  NCPoly one = NCPoly::constant(h.alphabet, RF(1));
  NCPoly ql(h.alphabet), lk = one;
  for (const auto& c : q.coeffs()) {
    ql += c * lk;
    lk = lk * l;
  }
  h.generators = {commutator(s * l * s, l), s * s - alpha * s - one, l * ql - beta * l};
  h.target = commutator(s * ql * s, ql);
  std::size_t b = bound.value_or(default_hecke_bound(q));
  if (b < h.target.degree())
    throw DomainError("degree bound " + std::to_string(b) + " is below the target degree " +
                      std::to_string(h.target.degree()));
  h.result = ideal_membership(h.generators, h.target, b);
  if (h.result.certificate) h.verified = verify_certificate(h.generators, *h.result.certificate);
  return h;
}

struct BundleQuantizationReport {
  RFPoly p;
  RF mu1, mu2, lambda1;
  bool c_hypothesis = false;   // Π(x - λ_i) | (x - λ₁)(P - μ₂)
  bool curve_reduction = false; // on t = -λ₁ω, L - λ₁ satisfies the t = 0 relations
  bool step1 = false;          // certificate found and re-verified
  bool step1_inconclusive = false;
  bool step2 = false;          // Π(x - λ_i) | (P - μ₁)(P - μ₂)
  bool step3 = false;          // reduced q-trace identity
  std::optional<bool> direct;  // membership inside the full quantized orbit ideal
  HeckeMembership hecke;
  bool passes() const { return c_hypothesis && curve_reduction && step1 && step2 && step3 && direct.value_or(true); }
};

struct BundleQuantizationOptions {
  std::optional<std::size_t> bound;
  bool direct = false;
  std::size_t direct_bound = 3;
};

namespace detail {

// Entries of [S M₂ S, M₂] + q t [S, M₂] for an NC matrix M.
inline NCMatrix mre_tensor(const RFMatrix& s, const NCMatrix& m, const RF& t) {
  NCMatrix m2 = second_leg(m);
  NCMatrix lhs = commutator(multiply(multiply(s, m2), s), m2);
  NCMatrix rhs = commutator(s, m2).map([&](const NCPoly& x) { return (param_q() * t) * x; });
  return lhs + rhs;
}

}  // namespace detail

/// Checks the proof obligations for quantizing the bundle given by config.
inline BundleQuantizationReport verify_bundle_quantization(const OrbitData& source, const OrbitData& target,
                                                           const BundleConfiguration& config,
                                                           const BundleQuantizationOptions& opt = {}) {
  if (target.l() != 2 || config.source_index >= source.l() || config.target_index >= 2)
    throw DomainError("configuration does not fit the orbits");
  BundleQuantizationReport rep;
  const std::size_t d = config.source_index;
  rep.p = config.p;
  rep.lambda1 = source.eigenvalues[d];
  rep.mu1 = target.eigenvalues[config.target_index];
  rep.mu2 = target.eigenvalues[1 - config.target_index];
  for (std::size_t i = 0; i < source.l(); ++i)
    if (rep.p(source.eigenvalues[i]) != (i == d ? rep.mu1 : rep.mu2))
      throw DomainError("configuration polynomial does not map the source eigenvalues onto the target");
  if (source.n() != target.n()) throw DomainError("orbits live in different matrix sizes");

  const RFPoly minpoly = minimal_polynomial(source);
  const RFPoly x = RFPoly::x();
  const RFPoly pm1 = rep.p - RFPoly::constant(rep.mu1), pm2 = rep.p - RFPoly::constant(rep.mu2);
  rep.c_hypothesis = (RFPoly::linear_root(rep.lambda1) * pm2).divisible_by(minpoly);
  rep.step2 = (pm1 * pm2).divisible_by(minpoly);

  // Step 1: Q(x) = P(x + λ₁) - μ₁, α = q - q⁻¹, β = μ₂ - μ₁.
  RFPoly qpoly = rep.p.shift(rep.lambda1) - RFPoly::constant(rep.mu1);
  RF alpha = param_q() - param_q().inverse();
  rep.hecke = hecke_membership(qpoly, alpha, rep.mu2 - rep.mu1, opt.bound);
  rep.step1 = rep.hecke.conclusive() && rep.hecke.verified;
  rep.step1_inconclusive = !rep.hecke.conclusive();

  // On the curve, the mRE tensor of L' + λ₁ equals the t = 0 tensor of L'.
  {
    const std::size_t n = source.n();
    AlphabetPtr a = matrix_alphabet(n);
    NCMatrix l = generator_matrix(a, n);
    NCMatrix shifted = l + lift(RFMatrix::identity(n, rep.lambda1), a);
    RFMatrix s = quantum_permutation(standard_r_matrix(n));
    rep.curve_reduction = detail::mre_tensor(s, shifted, curve_t(rep.lambda1)) == detail::mre_tensor(s, l, RF(0));
  }

  // Step 3 in the frame λ₁ = μ₁ = 0, t = 0.
  {
    RF w = param_omega();
    std::vector<RF> lam, nhat;
    unsigned rest = 0;
    for (std::size_t i = 0; i < source.l(); ++i) {
      lam.push_back(source.eigenvalues[i] - rep.lambda1);
      nhat.push_back(q_integer_omega(source.multiplicities[i], w));
      if (i != d) rest += source.multiplicities[i];
    }
    RF lhs(0);
    for (std::size_t i = 0; i < source.l(); ++i)
      if (i != d) lhs += qpoly(lam[i]) * coefficient_c(i, lam, nhat, w);
    rep.step3 = lhs == (rep.mu2 - rep.mu1) * q_integer_omega(rest, w);
  }

  if (opt.direct) {
    if (source.n() != 2 || source.l() != 2) throw DomainError("direct verification is limited to n = 2, l = 2");
    QuantumOrbitIdeal ideal = orbit_ideal(source, curve_t(rep.lambda1));
    const auto& a = ideal.base.alphabet;
    NCMatrix pl = evaluate_matrix_poly(rep.p, ideal.base.l, a);
    NCMatrix tensor = detail::mre_tensor(ideal.base.s, pl, curve_t(rep.mu1));
    std::vector<NCPoly> gens = ideal.all_relations();
    bool ok = true;
    for (std::size_t i = 0; i < tensor.rows() && ok; ++i)
      for (std::size_t j = 0; j < tensor.cols() && ok; ++j) {
        if (tensor(i, j).is_zero()) continue;
        auto res = ideal_membership(gens, tensor(i, j), std::max(opt.direct_bound, tensor(i, j).degree()));
        ok = res.certificate && verify_certificate(gens, *res.certificate);
      }
    rep.direct = ok;
  }
  return rep;
}

}  // namespace qorbit

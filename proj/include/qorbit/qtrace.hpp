#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qorbit/error.hpp"
#include "qorbit/orbits.hpp"
#include "qorbit/rmatrix.hpp"
#include "qorbit/scalars/rational_function.hpp"

namespace qorbit {

enum class CForm { product, expanded };

inline RF param_omega() { return RF::variable("w"); }

/// m̂ written through ω = 1 - q^{-2}: Σ_{k<m} (1 - ω)^k.
inline RF q_integer_omega(unsigned m, const RF& omega) {
  RF s(0), p(1), base = RF(1) - omega;
  for (unsigned k = 0; k < m; ++k, p *= base) s += p;
  return s;
}

namespace detail {

inline void check_distinct(const std::vector<RF>& lambda) {
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j)
      if ((lambda[i] - lambda[j]).is_zero())
        throw DomainError("coincident eigenvalues at positions " + std::to_string(i + 1) + " and " +
                          std::to_string(j + 1));
}

}  // namespace detail

/// C_i(λ, ν, ω) = ν_i Π_{j≠i} (1 + ω ν_j λ_j/(λ_i - λ_j)), or its expansion in powers of ω.
/// i is zero-based.
inline RF coefficient_c(std::size_t i, const std::vector<RF>& lambda, const std::vector<RF>& nu, const RF& omega,
                        CForm form = CForm::product) {
  const std::size_t l = lambda.size();
  if (nu.size() != l) throw DomainError("lambda and nu have different lengths");
  if (i >= l) throw DomainError("coefficient index out of range");
  detail::check_distinct(lambda);
  std::vector<RF> x;  // ν_j λ_j/(λ_i - λ_j), j ≠ i
  for (std::size_t j = 0; j < l; ++j)
    if (j != i) x.push_back(nu[j] * lambda[j] / (lambda[i] - lambda[j]));
  if (form == CForm::product) {
    RF p = nu[i];
    for (const auto& xj : x) p *= RF(1) + omega * xj;
    return p;
  }
  // e_k(x) by the usual recurrence, then ν_i (1 + Σ_k ω^k e_k)
  std::vector<RF> e(x.size() + 1);
  e[0] = RF(1);
  for (const auto& xj : x)
    for (std::size_t k = e.size() - 1; k >= 1; --k) e[k] += e[k - 1] * xj;
  RF s(0), wk(1);
  for (std::size_t k = 0; k < e.size(); ++k, wk *= omega) s += wk * e[k];
  return nu[i] * s;
}

/// S(λ, ν, ω) = Σ_i C_i.
inline RF sum_c(const std::vector<RF>& lambda, const std::vector<RF>& nu, const RF& omega) {
  RF s(0);
  for (std::size_t i = 0; i < lambda.size(); ++i) s += coefficient_c(i, lambda, nu, omega);
  return s;
}

/// 1 - Π(1 - ω ν_i) over the given index range.
inline RF one_minus_product(const std::vector<RF>& nu, const RF& omega, std::size_t from = 0) {
  RF p(1);
  for (std::size_t i = from; i < nu.size(); ++i) p *= RF(1) - omega * nu[i];
  return RF(1) - p;
}

struct SumIdentityReport {
  bool main_identity = false;     // ω S = 1 - Π(1 - ω ν_i)
  bool symmetric = false;         // S invariant under transpositions of λ, ν fixed
  bool reduction_a = false;       // λ₁ = 0: ω Σ_{i≥2} C_i = 1 - Π_{i≥2}(1 - ω ν_i)
  bool reduction_b = false;       // λ₁ = 0: Σ_{i≥2} C_i(λ, ν) = Σ C(λ', ν')
  bool reduction_c = false;       // ν = n̂, ω = 1 - q^{-2}: Σ C_i = n̂
  bool all() const { return main_identity && symmetric && reduction_a && reduction_b && reduction_c; }
};

/// Checks the identities for the sum of the C_i exactly. multiplicities feed the
/// q-integer identity; λ must not involve q there.
inline SumIdentityReport sum_identity_check(const std::vector<RF>& lambda, const std::vector<RF>& nu, const RF& omega,
                                            const std::vector<unsigned>& multiplicities) {
  const std::size_t l = lambda.size();
  SumIdentityReport rep;
  RF s = sum_c(lambda, nu, omega);
  rep.main_identity = omega * s == one_minus_product(nu, omega);

  rep.symmetric = true;
  for (std::size_t i = 0; i < l && rep.symmetric; ++i)
    for (std::size_t j = i + 1; j < l && rep.symmetric; ++j) {
      std::vector<RF> swapped = lambda;
      std::swap(swapped[i], swapped[j]);
      rep.symmetric = sum_c(swapped, nu, omega) == s;
    }

  std::vector<RF> lam0 = lambda;
  lam0[0] = RF(0);
  RF tail(0);
  bool distinct = true;
  for (std::size_t j = 1; j < l; ++j)
    if ((lam0[j]).is_zero()) distinct = false;
  if (distinct) {
    for (std::size_t i = 1; i < l; ++i) tail += coefficient_c(i, lam0, nu, omega);
    rep.reduction_a = omega * tail == one_minus_product(nu, omega, 1);
    std::vector<RF> lam_r(lam0.begin() + 1, lam0.end()), nu_r(nu.begin() + 1, nu.end());
    rep.reduction_b = l == 1 ? tail.is_zero() : tail == sum_c(lam_r, nu_r, omega);
  }

  if (multiplicities.size() != l) throw DomainError("one multiplicity per eigenvalue is required");
  RF q_omega = RF(1) - param_q().pow(-2);
  std::vector<RF> nhat;
  unsigned n = 0;
  for (unsigned m : multiplicities) {
    nhat.push_back(q_integer(m));
    n += m;
  }
  rep.reduction_c = sum_c(lambda, nhat, q_omega) == q_integer(n);
  return rep;
}

enum class ShiftSign { minus, plus };  // λ̃ = λ ∓ t/ω

/// ϑ_r = Σ_i C_i(λ̃, n̂, ω) λ_i^r, with λ̃_i = λ_i - t/ω and n̂_i expressed in ω.
inline RF theta(unsigned r, const OrbitData& orbit, const RF& t, const RF& omega = param_omega(),
                ShiftSign sign = ShiftSign::minus) {
  const std::size_t l = orbit.l();
  std::vector<RF> nhat, shifted;
  RF shift = omega.is_zero() ? RF(0) : t / omega;
  if (omega.is_zero() && !t.is_zero()) throw DomainError("t/omega is undefined at omega = 0");
  for (std::size_t i = 0; i < l; ++i) {
    nhat.push_back(q_integer_omega(orbit.multiplicities[i], omega));
    shifted.push_back(sign == ShiftSign::minus ? orbit.eigenvalues[i] - shift : orbit.eigenvalues[i] + shift);
  }
  RF out(0);
  for (std::size_t i = 0; i < l; ++i)
    out += coefficient_c(i, shifted, nhat, omega) * orbit.eigenvalues[i].pow(static_cast<int>(r));
  return out;
}

/// Σ n_i λ_i^r.
inline RF classical_trace(unsigned r, const OrbitData& orbit) {
  RF s(0);
  for (std::size_t i = 0; i < orbit.l(); ++i)
    s += RF(static_cast<long>(orbit.multiplicities[i])) * orbit.eigenvalues[i].pow(static_cast<int>(r));
  return s;
}

struct ThetaReport {
  RF value;
  bool polynomial_in_omega_t = false;
  bool polynomial_in_q_inverse_squared = false;  // after ω = 1 - q^{-2}
  bool classical_limit = false;                   // ω, t → 0 gives Σ n_i λ_i^r
};

inline ThetaReport theta_report(unsigned r, const OrbitData& orbit, const RF& t) {
  ThetaReport rep;
  rep.value = theta(r, orbit, t);
  VarId w = var("w"), tv = var("t");
  rep.polynomial_in_omega_t = is_polynomial_in(rep.value, {w, tv});
  // q^{-2} enters only through ω; qm2 stands for q^{-2}
  RF in_s = specialize(rep.value, {{"w", RF(1) - RF::variable("qm2")}});
  rep.polynomial_in_q_inverse_squared = is_polynomial_in(in_s, {var("qm2")});
  std::map<VarId, RF> lim{{w, RF(0)}, {tv, RF(0)}};
  if (specialize(t, lim).is_zero()) rep.classical_limit = specialize(rep.value, lim) == classical_trace(r, orbit);
  return rep;
}

}  // namespace qorbit

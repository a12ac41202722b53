#pragma once

#include <optional>
#include <string>

#include "qorbit/linalg/matrix.hpp"
#include "qorbit/scalars/rational_function.hpp"

namespace qorbit {

using RFMatrix = Matrix<RF>;

inline RF param_q() { return RF::variable("q"); }

/// m̂ = (1 - q^{-2m})/(1 - q^{-2}) = 1 + q^{-2} + ... + q^{-2(m-1)}.
inline RF q_integer(unsigned m) {
  RF qm2 = param_q().pow(-2), s(0), p(1);
  for (unsigned k = 0; k < m; ++k, p *= qm2) s += p;
  return s;
}

/// An n²×n² matrix acting on V⊗V, dim V = n; index (i,k) ↦ i·n + k.
struct RMatrix {
  std::size_t n = 0;
  RFMatrix entries;
};

/// E_ij as an n×n matrix.
inline RFMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
  RFMatrix m(n, n);
  m(i, j) = RF(1);
  return m;
}

/// Flip σ(e_i⊗e_k) = e_k⊗e_i.
inline RFMatrix flip(std::size_t n) {
  RFMatrix p(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) p(k * n + i, i * n + k) = RF(1);
  return p;
}

/// R = q Σ E_ii⊗E_ii + Σ_{i≠j} E_ii⊗E_jj + (q - q⁻¹) Σ_{i<j} E_ij⊗E_ji.
inline RMatrix standard_r_matrix(std::size_t n) {
  if (n == 0) throw DomainError("R-matrix rank must be positive");
  RF q = param_q(), diff = q - q.inverse();
  RFMatrix r(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r(i * n + j, i * n + j) = i == j ? q : RF(1);
      if (i < j) r(i * n + j, j * n + i) = diff;
    }
  return {n, r};
}

/// S = σR.
inline RFMatrix quantum_permutation(const RMatrix& r) { return flip(r.n) * r.entries; }

struct AxiomReport {
  bool ybe = false;
  bool hecke = false;
  std::optional<std::string> ybe_first_nonzero;    // "(row,col): value"
  std::optional<std::string> hecke_first_nonzero;
};

namespace detail {

inline std::optional<std::string> describe_nonzero(const RFMatrix& m) {
  auto pos = m.first_nonzero();
  if (!pos) return std::nullopt;
  return "(" + std::to_string(pos->first) + "," + std::to_string(pos->second) + "): " + m(pos->first, pos->second).to_string();
}

}  // namespace detail

/// Exact YBE R12 R13 R23 = R23 R13 R12 on V⊗3 and Hecke S² = (q - q⁻¹)S + 1.
inline AxiomReport verify_rmatrix_axioms(const RMatrix& r) {
  const std::size_t n = r.n;
  if (r.entries.rows() != n * n || r.entries.cols() != n * n) throw DomainError("R-matrix must be n^2 x n^2");
  RFMatrix id = RFMatrix::identity(n, RF(1));
  RFMatrix r12 = kron(r.entries, id), r23 = kron(id, r.entries);
  RFMatrix p23 = kron(id, flip(n));
  RFMatrix r13 = p23 * r12 * p23;
  AxiomReport rep;
  RFMatrix ybe = r12 * r13 * r23 - r23 * r13 * r12;
  rep.ybe_first_nonzero = detail::describe_nonzero(ybe);
  rep.ybe = !rep.ybe_first_nonzero;

  RF q = param_q();
  RFMatrix s = quantum_permutation(r);
  RFMatrix scaled = s.map([&](const RF& x) { return x * (q - q.inverse()); });
  RFMatrix hecke = s * s - scaled - RFMatrix::identity(n * n, RF(1));
  rep.hecke_first_nonzero = detail::describe_nonzero(hecke);
  rep.hecke = !rep.hecke_first_nonzero;
  return rep;
}

struct DMatrix {
  std::size_t n = 0;
  RFMatrix entries;
  RF nu;  // normalization scalar
  RF trace() const { return entries.trace(); }
};

/// R* = ((R^{t₁})⁻¹)^{t₁}.
inline RFMatrix r_star(const RMatrix& r) {
  auto inv = inverse(partial_transpose_first(r.entries, r.n), RF(1));
  if (!inv) throw DomainError("partial transpose of R is singular; R* does not exist");
  return partial_transpose_first(*inv, r.n);
}

/// D = ν·R*₁R*₂ where (R*₁R*₂)_{im} = Σ_j R*_{(i,j),(j,m)}, with ν fixed by
/// tr D = (1 - q^{-2n})/(1 - q^{-2}).
inline DMatrix compute_d_matrix(const RMatrix& r) {
  const std::size_t n = r.n;
  RFMatrix rs = r_star(r);
  RFMatrix legs(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m) {
      RF s;
      for (std::size_t j = 0; j < n; ++j) s += rs(i * n + j, j * n + m);
      legs(i, m) = s;
    }
  RF tr = legs.trace();
  if (tr.is_zero()) throw DomainError("R*1 R*2 has zero trace; cannot normalize D");
  RF nu = q_integer(static_cast<unsigned>(n)) / tr;
  return {n, legs.map([&](const RF& x) { return x * nu; }), nu};
}

}  // namespace qorbit

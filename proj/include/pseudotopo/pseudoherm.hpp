#pragma once

#include "pseudotopo/models.hpp"

namespace pseudotopo {

/// Eigensystem at one momentum, carried in both Hilbert-space bases.
/// vectors_D columns are orthonormal eigenvectors of h in the standard
/// product; vectors_eta = rho^-1 vectors_D are eigenvectors of H,
/// orthonormal only under the eta_plus product.
struct BlochSolution {
  arma::vec momentum;
  arma::vec energies;       // ascending
  ComplexMatrix vectors_D;
  ComplexMatrix vectors_eta;
  int filled_count = 0;     // states with energy < 0
};

/// Max-entry norm of H^+ - eta H eta^-1 (zero certifies pseudo-hermiticity).
inline double check_pseudo_hermiticity(const ComplexMatrix& H,
                                       const ComplexMatrix& eta) {
  require_square(H, "check_pseudo_hermiticity");
  if (eta.n_rows != H.n_rows || eta.n_cols != H.n_cols)
    throw DimensionMismatch("check_pseudo_hermiticity: size mismatch");
  if (arma::rcond(eta) < 1e-14)
    throw SingularMetric("check_pseudo_hermiticity: eta numerically singular");
  const ComplexMatrix rhs = eta * H * arma::inv(eta);
  return arma::abs(H.t() - rhs).max();
}

/// Modified inner product <u| eta |v>.
inline cx eta_inner(const ComplexVector& u, const ComplexVector& v,
                    const ComplexMatrix& eta) {
  if (u.n_elem != v.n_elem || eta.n_rows != u.n_elem)
    throw DimensionMismatch("eta_inner: size mismatch");
  return arma::cdot(u, eta * v);
}

inline double eta_norm(const ComplexVector& u, const ComplexMatrix& eta) {
  return std::sqrt(std::abs(eta_inner(u, u, eta)));
}

/// Similarity map h = rho H rho^-1 and the hermiticity defect of the result.
inline std::pair<ComplexMatrix, double> similarity_map(const ComplexMatrix& H,
                                                       const MetricPair& m) {
  if (m.rho.n_rows != H.n_rows)
    throw DimensionMismatch("similarity_map: size mismatch");
  ComplexMatrix h = m.rho * H * m.rho_inv;
  return {h, herm_defect(h)};
}

enum class MapDirection { ToD, ToEta };

/// Conjugation between observables in the two Hilbert spaces:
/// O_D = rho O_eta rho^-1 (ToD) and O_eta = rho^-1 O_D rho (ToEta).
inline ComplexMatrix map_observable(const ComplexMatrix& o, const MetricPair& m,
                                    MapDirection dir) {
  if (m.rho.n_rows != o.n_rows)
    throw DimensionMismatch("map_observable: size mismatch");
  return dir == MapDirection::ToD ? ComplexMatrix(m.rho * o * m.rho_inv)
                                  : ComplexMatrix(m.rho_inv * o * m.rho);
}

/// Rotate each column so its largest-magnitude component is real positive.
inline void fix_column_phases(ComplexMatrix& v) {
  for (arma::uword j = 0; j < v.n_cols; ++j) {
    const arma::uword i = arma::abs(v.col(j)).index_max();
    const cx z = v(i, j);
    if (std::abs(z) > 0) v.col(j) *= std::conj(z) / std::abs(z);
  }
}

/// Solve the Bloch problem at momentum p: diagonalize h in the standard
/// product, then map the eigenvectors to the eta basis with rho^-1.
inline BlochSolution bloch_solve(const ModelSpec& spec, const arma::vec& p) {
  const ComplexMatrix h = build_h(spec, p);
  const EigenDecomposition d = herm_eig(h);
  const arma::vec e = arma::real(d.values);
  if (arma::abs(e).min() < tols().gap)
    throw GaplessModel("bloch_solve: |E| below gap tolerance at this p");
  BlochSolution s;
  s.momentum = p;
  s.energies = e;
  s.vectors_D = d.vectors;
  fix_column_phases(s.vectors_D);
  const MetricPair m = build_metric(spec);
  s.vectors_eta = m.rho_inv * s.vectors_D;
  s.filled_count = static_cast<int>(arma::sum(e < 0.0));
  return s;
}

/// e^{-i H(p) t} v0. Unitary in the eta_plus norm, not the standard one.
inline ComplexVector evolve(const ModelSpec& spec, const arma::vec& p, double t,
                            const ComplexVector& v0) {
  if (!std::isfinite(t)) throw ValidationError("evolve: non-finite time");
  if (arma::norm(v0) == 0) throw ValidationError("evolve: zero state");
  const ComplexMatrix H = build_H(spec, p);
  if (v0.n_elem != H.n_rows)
    throw DimensionMismatch("evolve: state dimension mismatch");
  return expm(cx(0, -t) * H) * v0;
}

/// Spectral (oblique) projector of A onto its eigenvalues with negative real
/// part, built from right and left eigenvectors. Equals sum |phi><phi| eta
/// when A is eta-pseudo-hermitian with eta-orthonormal filled states.
inline ComplexMatrix filled_spectral_projector(const ComplexMatrix& A) {
  const EigenDecomposition r = gen_eig(A);
  const arma::uvec filled = arma::find(arma::real(r.values) < 0.0);
  if (filled.n_elem == 0 ||
      arma::abs(arma::real(r.values)).min() < tols().gap)
    throw GaplessModel("filled_spectral_projector: no gapped filled set");
  const EigenDecomposition l = gen_eig(ComplexMatrix(A.t()));
  // left eigenvectors of A for eigenvalue E are right eigenvectors of A^+
  // for conj(E); with the fixed sort order the filled blocks line up.
  const arma::uvec lf = arma::find(arma::real(l.values) < 0.0);
  const ComplexMatrix F = r.vectors.cols(filled);
  const ComplexMatrix L = l.vectors.cols(lf);
  const ComplexMatrix overlap = L.t() * F;
  return F * arma::inv(overlap) * L.t();
}

/// Non-normality witnesses: max |[H, H^+]| and the idempotency defect
/// max |Q^2 - I| of Q = 1 - [P + P^+] built from the filled spectral
/// projector of H. Both vanish iff H is normal with hermitian P.
inline std::pair<double, double> normality_check(const ComplexMatrix& H) {
  require_square(H, "normality_check");
  const double comm = arma::abs(H * H.t() - H.t() * H).max();
  const ComplexMatrix P = filled_spectral_projector(H);
  const ComplexMatrix Q =
      arma::eye<arma::cx_mat>(H.n_rows, H.n_cols) - (P + P.t());
  const double defect = arma::abs(Q * Q - arma::eye<arma::cx_mat>(
                                              H.n_rows, H.n_cols)).max();
  return {comm, defect};
}

}  // namespace pseudotopo

#pragma once

#include <algorithm>
#include <armadillo>
#include <complex>
#include <numeric>
#include <vector>

#include "pseudotopo/errors.hpp"

namespace pseudotopo {

using ComplexMatrix = arma::cx_mat;
using ComplexVector = arma::cx_vec;
using cx = arma::cx_double;

/// Central tolerance configuration. All modules read their defaults from
/// here so a single change retunes the whole toolkit.
struct Tolerances {
  double hermiticity = 1e-10;   // max |A - A^+| accepted as hermitian
  double residual = 1e-10;      // eigenpair residual relative to |A|
  double pd_cutoff = 1e-12;     // smallest eigenvalue accepted as positive
  double gap = 1e-8;            // |E| below this counts as gapless
  double condition_cap = 1e12;  // eigenvector condition limit for gen_eig
};

inline const Tolerances& tols() {
  static const Tolerances t{};
  return t;
}

struct EigenDecomposition {
  ComplexVector values;   // sorted (see herm_eig / gen_eig)
  ComplexMatrix vectors;  // columns are unit-norm eigenvectors
};

inline void require_square(const ComplexMatrix& a, const char* who) {
  if (a.n_rows != a.n_cols)
    throw NonSquare(std::string(who) + ": matrix is " +
                    std::to_string(a.n_rows) + "x" + std::to_string(a.n_cols));
}

inline void require_finite(const ComplexMatrix& a, const char* who) {
  if (!a.is_finite()) throw NonFinite(std::string(who) + ": non-finite entry");
}

inline double herm_defect(const ComplexMatrix& a) {
  return arma::abs(a - a.t()).max();
}

/// Matrix exponential (scaling-and-squaring with a Pade core).
inline ComplexMatrix expm(const ComplexMatrix& a) {
  require_square(a, "expm");
  require_finite(a, "expm");
  return arma::expmat(a);
}

/// Eigendecomposition of a hermitian matrix. Values are real, ascending;
/// vectors orthonormal in the standard inner product.
inline EigenDecomposition herm_eig(const ComplexMatrix& a) {
  require_square(a, "herm_eig");
  require_finite(a, "herm_eig");
  const double scale = std::max(1.0, arma::abs(a).max());
  if (herm_defect(a) > tols().hermiticity * scale)
    throw NotHermitian("herm_eig: max |A - A^+| = " +
                       std::to_string(herm_defect(a)));
  arma::vec w;
  arma::cx_mat v;
  if (!arma::eig_sym(w, v, arma::symmatu(a)))
    throw NoConvergence("herm_eig: eig_sym failed");
  const double resid = arma::abs(a * v - v * arma::diagmat(w)).max();
  if (resid > 100 * tols().residual * scale)
    throw NoConvergence("herm_eig: residual " + std::to_string(resid));
  EigenDecomposition d;
  d.values = arma::conv_to<arma::cx_vec>::from(w);
  d.vectors = v;
  return d;
}

/// General (non-hermitian) eigendecomposition with right eigenvectors.
/// Values sorted ascending by real part, ties broken by imaginary part.
inline EigenDecomposition gen_eig(const ComplexMatrix& a) {
  require_square(a, "gen_eig");
  require_finite(a, "gen_eig");
  arma::cx_vec w;
  arma::cx_mat v;
  if (!arma::eig_gen(w, v, a)) throw NoConvergence("gen_eig: eig_gen failed");
  std::vector<arma::uword> idx(w.n_elem);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](arma::uword i, arma::uword j) {
    if (w(i).real() != w(j).real()) return w(i).real() < w(j).real();
    return w(i).imag() < w(j).imag();
  });
  EigenDecomposition d;
  d.values.set_size(w.n_elem);
  d.vectors.set_size(v.n_rows, v.n_cols);
  for (arma::uword k = 0; k < w.n_elem; ++k) {
    d.values(k) = w(idx[k]);
    d.vectors.col(k) = arma::normalise(v.col(idx[k]));
  }
  const double scale = std::max(1.0, arma::abs(a).max());
  const double resid =
      arma::abs(a * d.vectors - d.vectors * arma::diagmat(d.values)).max();
  if (resid > 1e-8 * scale)
    throw NoConvergence("gen_eig: residual " + std::to_string(resid));
  const double cnd = arma::cond(d.vectors);
  if (!(cnd < tols().condition_cap))
    throw IllConditioned("gen_eig: eigenvector condition " +
                         std::to_string(cnd));
  return d;
}

/// Principal square root of a hermitian positive-definite matrix: the
/// unique hermitian PD matrix R with R*R = A.
inline ComplexMatrix principal_sqrt_pd(const ComplexMatrix& a) {
  require_square(a, "principal_sqrt_pd");
  require_finite(a, "principal_sqrt_pd");
  const double scale = std::max(1.0, arma::abs(a).max());
  if (herm_defect(a) > tols().hermiticity * scale)
    throw NotHermitian("principal_sqrt_pd: input not hermitian");
  arma::vec w;
  arma::cx_mat v;
  if (!arma::eig_sym(w, v, arma::symmatu(a)))
    throw NoConvergence("principal_sqrt_pd: eig_sym failed");
  if (w.min() <= tols().pd_cutoff)
    throw NotPositiveDefinite("principal_sqrt_pd: smallest eigenvalue " +
                              std::to_string(w.min()));
  arma::cx_mat r = v * arma::diagmat(arma::sqrt(w)) * v.t();
  return 0.5 * (r + r.t());  // round hermitian
}

/// Max-entry distance between two eigenvalue multisets (sorted pairing).
inline double multiset_distance(arma::cx_vec a, arma::cx_vec b) {
  if (a.n_elem != b.n_elem)
    throw DimensionMismatch("multiset_distance: size mismatch");
  auto key = [](const cx& x, const cx& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  };
  std::sort(a.begin(), a.end(), key);
  std::sort(b.begin(), b.end(), key);
  double d = 0;
  for (arma::uword k = 0; k < a.n_elem; ++k)
    d = std::max(d, std::abs(a(k) - b(k)));
  return d;
}

}  // namespace pseudotopo

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "pseudotopo/pseudoherm.hpp"

namespace pseudotopo {

struct QuadratureSpec {
  int n_points = 2048;
  double cutoff = 50.0;  // momentum cutoff for 2D disc integrals
  enum class Scheme { TrapezoidOnAngle, TrapezoidOnMomentum };
  Scheme scheme = Scheme::TrapezoidOnAngle;

  void validate() const {
    if (n_points < 16) throw ValidationError("quadrature: n_points < 16");
    if (n_points % 2 != 0) throw ValidationError("quadrature: n_points odd");
    if (!(cutoff > 0)) throw ValidationError("quadrature: cutoff <= 0");
  }
};

struct InvariantReport {
  double cs1 = 0;
  double winding = 0;
  double chern_like_filled = 0;  // 2D filled-subspace curvature integral
  double chern_like_empty = 0;
  double equality_residual = 0;  // max |A - a| over quadrature nodes
  QuadratureSpec quadrature;
  double convergence_estimate = 0;
};

/// Orthonormal basis (columns) of the +1 eigenspace of the model's chiral
/// operator. Used as the reference frame of the smooth Bloch gauge: the
/// filled projector never annihilates it, because Q_D(p) anticommutes with
/// gamma_D wherever the model is chiral.
inline ComplexMatrix chiral_reference(const ModelSpec& spec) {
  const ComplexMatrix g = find_chiral_operator(spec);
  const EigenDecomposition d = herm_eig(g);
  const arma::uvec plus = arma::find(arma::real(d.values) > 0.5);
  return d.vectors.cols(plus);
}

/// Filled frame at p in the reference (projected-Loewdin) gauge:
/// F(p) = P(p) X (X^+ P(p) X)^{-1/2}, smooth in p as long as the projected
/// reference keeps full rank.
inline ComplexMatrix filled_frame(const ModelSpec& spec, const arma::vec& p,
                                  const ComplexMatrix& reference) {
  const BlochSolution s = bloch_solve(spec, p);
  const ComplexMatrix V = s.vectors_D.cols(0, s.filled_count - 1);
  if (reference.n_cols != static_cast<arma::uword>(s.filled_count))
    throw DimensionMismatch("filled_frame: reference rank mismatch");
  const ComplexMatrix M = V * (V.t() * reference);
  const ComplexMatrix gram = M.t() * M;
  const EigenDecomposition g = herm_eig(gram);
  const arma::vec w = arma::real(g.values);
  if (w.min() < 1e-12)
    throw IllConditioned("filled_frame: projected reference lost rank");
  const ComplexMatrix inv_sqrt =
      g.vectors * arma::diagmat(1.0 / arma::sqrt(w)) * g.vectors.t();
  return M * inv_sqrt;
}

struct ConnectionSample {
  std::vector<ComplexMatrix> a;  // standard-product connection, one per dp_i
  std::vector<ComplexMatrix> A;  // eta-product connection from mapped states
  double max_difference = 0;
};

/// Berry connection at p for the filled bands, by central differences in the
/// reference gauge. Computed twice: from h-eigenstates with the standard
/// product and from the rho^-1-mapped states with the eta_plus product.
inline ConnectionSample berry_connection_point(
    const ModelSpec& spec, const arma::vec& p, double delta = 1e-4,
    const ComplexMatrix& reference = ComplexMatrix()) {
  if (delta < 1e-8) throw StepTooSmall("berry_connection_point: delta < 1e-8");
  const ComplexMatrix X =
      reference.n_elem ? reference : chiral_reference(spec);
  const MetricPair m = build_metric(spec);
  ConnectionSample out;
  for (int i = 0; i < spec.space_dim(); ++i) {
    arma::vec pp = p, pm = p;
    pp(i) += delta;
    pm(i) -= delta;
    const ComplexMatrix f0 = filled_frame(spec, p, X);
    const ComplexMatrix fp = filled_frame(spec, pp, X);
    const ComplexMatrix fm = filled_frame(spec, pm, X);
    const ComplexMatrix da = f0.t() * (fp - fm) / (2.0 * delta);
    const ComplexMatrix g0 = m.rho_inv * f0;
    const ComplexMatrix gp = m.rho_inv * fp;
    const ComplexMatrix gm = m.rho_inv * fm;
    const ComplexMatrix dA = g0.t() * m.eta_plus * (gp - gm) / (2.0 * delta);
    out.a.push_back(da);
    out.A.push_back(dA);
    out.max_difference = std::max(out.max_difference, arma::abs(dA - da).max());
  }
  return out;
}

namespace detail {

/// CS1 quadrature pass at a fixed node count: angle substitution
/// p = |m| tan(theta) with midpoint nodes, eta-product connection.
inline cx cs1_pass(const ModelSpec& spec, int n, double delta,
                   const ComplexMatrix& X) {
  const double am = std::abs(spec.mass);
  const MetricPair m = build_metric(spec);
  cx total = 0;
  for (int k = 0; k < n; ++k) {
    const double theta = (-0.5 + (k + 0.5) / n) * std::numbers::pi;
    const double p = am * std::tan(theta);
    const double dp = am / (std::cos(theta) * std::cos(theta)) *
                      (std::numbers::pi / n);
    const arma::vec pv = {p};
    const ComplexMatrix f0 = m.rho_inv * filled_frame(spec, pv, X);
    const ComplexMatrix fp = m.rho_inv * filled_frame(spec, {p + delta}, X);
    const ComplexMatrix fm = m.rho_inv * filled_frame(spec, {p - delta}, X);
    const ComplexMatrix A = f0.t() * m.eta_plus * (fp - fm) / (2.0 * delta);
    total += A(0, 0) * dp;
  }
  return total;
}

}  // namespace detail

/// Chern-Simons invariant CS1 = (i/2pi) Int A over the compactified line.
/// Returns the value plus a Richardson-style convergence estimate via the
/// out-parameter; throws NotConverged when the estimate exceeds 1e-6.
inline double cs1(const ModelSpec& spec, const QuadratureSpec& quad,
                  double* convergence = nullptr) {
  if (spec.id != ModelId::Dirac1D) throw WrongModel("cs1: 1D model required");
  spec.validate();
  quad.validate();
  if (std::abs(spec.mass) < tols().gap) throw GaplessModel("cs1: |m| ~ 0");
  const ComplexMatrix X = chiral_reference(spec);
  const double delta = 1e-4;
  const cx full = detail::cs1_pass(spec, quad.n_points, delta, X);
  const cx half = detail::cs1_pass(spec, quad.n_points / 2, delta, X);
  const double value = (cx(0, 1) / (2.0 * std::numbers::pi) * full).real();
  const double est =
      std::abs(full - half) / (2.0 * std::numbers::pi) + delta * delta;
  if (convergence) *convergence = est;
  if (est > 1e-6)
    throw NotConverged("cs1: convergence estimate " + std::to_string(est));
  return value;
}

namespace detail {

/// q at one node of the compactified line, from the block-off-diagonal form
/// (U rho) Q_eta (U rho)^-1. The pair (p, mass) only enters through its
/// direction, so the endpoints p = +-infinity use the unit direction (+-1, 0).
inline cx q_of_direction(double p_hat, double m_hat, const MetricPair& m) {
  const ComplexMatrix h = pauli(2) * p_hat + m_hat * pauli(3);
  const EigenDecomposition d = herm_eig(h);
  const ComplexVector phi = m.rho_inv * d.vectors.col(0);  // filled state
  const ComplexMatrix P = phi * phi.t() * m.eta_plus;
  const ComplexMatrix Q = arma::eye<arma::cx_mat>(2, 2) - 2.0 * P;
  const ComplexMatrix U = expm(cx(0, -std::numbers::pi / 4.0) * pauli(2));
  const ComplexMatrix W = U * m.rho;
  const ComplexMatrix B = W * Q * arma::inv(W);
  return B(0, 1);
}

}  // namespace detail

/// Winding number nu = (i/2pi) Int q^-1 dq of the chiral-basis off-diagonal
/// scalar q(p), via branch-tracked phase accumulation over the compactified
/// line (endpoints included through the direction limit).
inline double winding_number(const ModelSpec& spec, const QuadratureSpec& quad) {
  if (spec.id != ModelId::Dirac1D)
    throw WrongModel("winding_number: 1D model required");
  spec.validate();
  quad.validate();
  if (std::abs(spec.mass) < tols().gap)
    throw GaplessModel("winding_number: |m| ~ 0");
  const MetricPair m = build_metric(spec);
  const int n = quad.n_points;
  double acc = 0, prev = 0;
  for (int k = 0; k <= n; ++k) {
    const double theta = (-0.5 + static_cast<double>(k) / n) * std::numbers::pi;
    double p_hat, m_hat;
    if (k == 0 || k == n) {
      p_hat = (k == 0) ? -1.0 : 1.0;
      m_hat = 0.0;
    } else {
      const double p = std::abs(spec.mass) * std::tan(theta);
      const double lam = std::hypot(p, spec.mass);
      p_hat = p / lam;
      m_hat = spec.mass / lam;
    }
    const double arg = std::arg(detail::q_of_direction(p_hat, m_hat, m));
    if (k > 0) {
      double d = arg - prev;
      while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
      while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
      acc += d;
    }
    prev = arg;
  }
  return -acc / (2.0 * std::numbers::pi);
}

struct QMatrices {
  ComplexMatrix P_eta;   // filled projector, hermitian in H_eta
  ComplexMatrix Q_eta;   // 1 - 2 P_eta
  ComplexMatrix Q_D;     // rho Q_eta rho^-1
  ComplexMatrix offdiag_block;  // upper-right block in the chiral basis
  cx q = 0;              // scalar q for the 1D model
};

/// Projectors and Q matrices at momentum p, in both Hilbert spaces, plus the
/// chiral-basis off-diagonal data.
inline QMatrices q_matrices(const ModelSpec& spec, const arma::vec& p) {
  const BlochSolution s = bloch_solve(spec, p);
  const MetricPair m = build_metric(spec);
  const int nf = s.filled_count;
  const ComplexMatrix phi = s.vectors_eta.cols(0, nf - 1);
  const int d = spec.spinor_dim();
  QMatrices out;
  out.P_eta = phi * phi.t() * m.eta_plus;
  out.Q_eta = arma::eye<arma::cx_mat>(d, d) - 2.0 * out.P_eta;
  out.Q_D = m.rho * out.Q_eta * m.rho_inv;
  if (spec.id == ModelId::Dirac1D) {
    const ComplexMatrix U = expm(cx(0, -std::numbers::pi / 4.0) * pauli(2));
    const ComplexMatrix W = U * m.rho;
    const ComplexMatrix B = W * out.Q_eta * arma::inv(W);
    out.offdiag_block = B.submat(0, 1, 0, 1);
    out.q = B(0, 1);
  } else {
    // basis diagonalizing gamma_D, +1 eigenvectors first
    const ComplexMatrix g = find_chiral_operator(spec);
    const EigenDecomposition gd = herm_eig(g);
    ComplexMatrix Wc(d, d);
    const arma::uvec plus = arma::find(arma::real(gd.values) > 0.5);
    const arma::uvec minus = arma::find(arma::real(gd.values) < -0.5);
    Wc.cols(0, plus.n_elem - 1) = gd.vectors.cols(plus);
    Wc.cols(plus.n_elem, d - 1) = gd.vectors.cols(minus);
    const ComplexMatrix B = Wc.t() * out.Q_D * Wc;
    out.offdiag_block = B.submat(0, plus.n_elem, plus.n_elem - 1, d - 1);
  }
  return out;
}

struct Curvature2DResult {
  double filled_h = 0;   // h-states, standard product
  double filled_H = 0;   // mapped H-states, eta product
  double empty_h = 0;
  double empty_H = 0;
  double difference = 0;  // max |H-route - h-route|
  double convergence_estimate = 0;
  int grid = 0;
};

/// Gauge-invariant curvature integrals of the 2D model over the disc
/// |p| <= cutoff, for the (twofold degenerate) filled and empty subspaces,
/// computed along both routes.
inline Curvature2DResult curvature_2d(const ModelSpec& spec,
                                      const QuadratureSpec& quad,
                                      int grid_override = 0) {
  if (spec.id != ModelId::Dirac2D)
    throw WrongModel("curvature_2d: 2D model required");
  spec.validate();
  quad.validate();
  if (std::abs(spec.mass) < tols().gap) throw GaplessModel("curvature_2d: m ~ 0");
  if (quad.cutoff < 20.0 * std::abs(spec.mass))
    throw ValidationError("curvature_2d: cutoff below 20 |m|");
  const int n = grid_override > 0 ? grid_override
                                  : std::min(quad.n_points, 128);
  const MetricPair m = build_metric(spec);

  auto pass = [&](int nn) {
    const double L = quad.cutoff;
    // frames on the (nn+1)^2 grid vertices
    std::vector<ComplexMatrix> fD((nn + 1) * (nn + 1));
    std::vector<ComplexMatrix> fE((nn + 1) * (nn + 1));
    auto at = [&](int i, int j) { return i * (nn + 1) + j; };
    for (int i = 0; i <= nn; ++i)
      for (int j = 0; j <= nn; ++j) {
        const double px = -L + 2.0 * L * i / nn;
        const double py = -L + 2.0 * L * j / nn;
        const EigenDecomposition d = herm_eig(build_h(spec, {px, py}));
        fD[at(i, j)] = d.vectors;
        fE[at(i, j)] = m.rho_inv * d.vectors;
      }
    auto link = [&](const ComplexMatrix& u, const ComplexMatrix& v,
                    const ComplexMatrix* metric, bool is_filled) {
      const ComplexMatrix a = is_filled ? ComplexMatrix(u.cols(0, 1))
                                        : ComplexMatrix(u.cols(2, 3));
      const ComplexMatrix b = is_filled ? ComplexMatrix(v.cols(0, 1))
                                        : ComplexMatrix(v.cols(2, 3));
      return metric ? arma::det(a.t() * (*metric) * b) : arma::det(a.t() * b);
    };
    std::array<double, 4> sums{};  // filled_h, filled_H, empty_h, empty_H
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j < nn; ++j) {
        const double cxp = -L + 2.0 * L * (i + 0.5) / nn;
        const double cyp = -L + 2.0 * L * (j + 0.5) / nn;
        if (cxp * cxp + cyp * cyp > L * L) continue;
        const int v00 = at(i, j), v10 = at(i + 1, j), v11 = at(i + 1, j + 1),
                  v01 = at(i, j + 1);
        for (int s = 0; s < 4; ++s) {
          const bool is_filled = s < 2;
          const bool eta_route = (s % 2 == 1);
          const auto& f = eta_route ? fE : fD;
          const ComplexMatrix* metric = eta_route ? &m.eta_plus : nullptr;
          const cx loop = link(f[v00], f[v10], metric, is_filled) *
                          link(f[v10], f[v11], metric, is_filled) *
                          link(f[v11], f[v01], metric, is_filled) *
                          link(f[v01], f[v00], metric, is_filled);
          sums[s] += std::arg(loop);
        }
      }
    for (auto& v : sums) v /= 2.0 * std::numbers::pi;
    return sums;
  };

  const auto full = pass(n);
  const auto half = pass(n / 2);
  Curvature2DResult r;
  r.filled_h = full[0];
  r.filled_H = full[1];
  r.empty_h = full[2];
  r.empty_H = full[3];
  r.difference = std::max(std::abs(full[1] - full[0]),
                          std::abs(full[3] - full[2]));
  r.convergence_estimate = std::abs(full[0] - half[0]);
  r.grid = n;
  return r;
}

}  // namespace pseudotopo

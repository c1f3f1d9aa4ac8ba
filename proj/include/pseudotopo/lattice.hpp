#pragma once

#include <cmath>

#include "pseudotopo/pseudoherm.hpp"

namespace pseudotopo {

/// Spatial mass profile m(x) for the 1D model. sign and tanh change sign at
/// x = 0 with asymptotics +-amplitude, which is what binds the zero mode.
struct MassProfile {
  enum class Kind { Constant, Sign, Tanh };
  Kind kind = Kind::Sign;
  double amplitude = 1.0;  // m0 > 0
  double width = 1.0;      // tanh only

  void validate() const {
    if (!(amplitude > 0)) throw ValidationError("MassProfile: amplitude <= 0");
    if (kind == Kind::Tanh && !(width > 0))
      throw ValidationError("MassProfile: width <= 0");
  }

  double operator()(double x) const {
    switch (kind) {
      case Kind::Constant: return amplitude;
      case Kind::Sign: return x >= 0 ? amplitude : -amplitude;
      default: return amplitude * std::tanh(x / width);
    }
  }

  /// Exact antiderivative Int_0^x m(s) ds, used by the analytic zero mode.
  double mass_integral(double x) const {
    switch (kind) {
      case Kind::Constant: return amplitude * x;
      case Kind::Sign: return amplitude * std::abs(x);
      default:
        return amplitude * width * std::log(std::cosh(x / width));
    }
  }
};

/// Real-space discretization of h1 = sigma^2 p + m(x) sigma^3 on n_sites
/// sites with spacing a, Dirichlet boundaries, optional Wilson term.
/// Layout is site-major: index 2j, 2j+1 hold the spinor at site j.
struct LatticeOperator {
  int n_sites = 0;
  double spacing = 0;
  double half_length = 0;  // a * n / 2
  double wilson_r = 1.0;
  MassProfile profile;
  arma::vec sites;         // site positions, wall centered between sites
  ComplexMatrix matrix;    // 2n x 2n, hermitian (in fact real symmetric)
};

inline LatticeOperator discretize_1d(const MassProfile& profile, int n_sites,
                                     double spacing, double wilson_r) {
  profile.validate();
  if (n_sites < 64) throw ValidationError("discretize_1d: n_sites < 64");
  if (!(spacing > 0)) throw ValidationError("discretize_1d: spacing <= 0");
  if (spacing * profile.amplitude > 0.2)
    throw ResolutionTooCoarse("discretize_1d: spacing * m0 > 0.2");
  if (wilson_r < 0 || wilson_r > 1)
    throw ValidationError("discretize_1d: wilson_r outside [0, 1]");

  LatticeOperator op;
  op.n_sites = n_sites;
  op.spacing = spacing;
  op.half_length = spacing * n_sites / 2.0;
  op.wilson_r = wilson_r;
  op.profile = profile;
  op.sites.set_size(n_sites);
  for (int j = 0; j < n_sites; ++j)
    op.sites(j) = (j - (n_sites - 1) / 2.0) * spacing;

  // sigma^2 (-i d/dx) with central differences has purely real blocks
  // [[0, -w], [w, 0]]; the whole operator is real symmetric.
  arma::mat h(2 * n_sites, 2 * n_sites, arma::fill::zeros);
  const double w = 1.0 / (2.0 * spacing);
  const double wil = wilson_r / spacing;
  for (int j = 0; j < n_sites; ++j) {
    const double mj = profile(op.sites(j));
    h(2 * j, 2 * j) += mj + wil;
    h(2 * j + 1, 2 * j + 1) += -(mj + wil);
    for (int dj : {-1, 1}) {
      const int k = j + dj;
      if (k < 0 || k >= n_sites) continue;
      h(2 * j, 2 * k + 1) += -dj * w;
      h(2 * j + 1, 2 * k) += dj * w;
      h(2 * j, 2 * k) += -wil / 2.0;
      h(2 * j + 1, 2 * k + 1) += wil / 2.0;
    }
  }
  op.matrix = arma::conv_to<arma::cx_mat>::from(h);
  return op;
}

/// The closed-form zero mode evaluated on the grid:
/// (1/sqrt(2)) rho^-1 e^{-Int_0^x m} (1, -1)^T, unit eta_plus norm.
inline ComplexVector analytic_zero_mode(const MassProfile& profile,
                                        const arma::vec& grid, double phi) {
  profile.validate();
  if (profile.kind == MassProfile::Kind::Constant)
    throw WrongProfile("analytic_zero_mode: mass does not change sign");
  const int n = static_cast<int>(grid.n_elem);
  ModelSpec ms;
  ms.phi = phi;
  const MetricPair m = build_metric(ms);
  const ComplexVector spinor =
      m.rho_inv * ComplexVector{cx(1, 0) / std::sqrt(2.0),
                                cx(-1, 0) / std::sqrt(2.0)};
  ComplexVector v(2 * n, arma::fill::zeros);
  for (int j = 0; j < n; ++j) {
    const double env = std::exp(-profile.mass_integral(grid(j)));
    v(2 * j) = env * spinor(0);
    v(2 * j + 1) = env * spinor(1);
  }
  // normalize in the site-wise eta norm (I_N kron eta_plus)
  double nrm2 = 0;
  for (int j = 0; j < n; ++j) {
    const ComplexVector s = {v(2 * j), v(2 * j + 1)};
    nrm2 += std::real(eta_inner(s, s, m.eta_plus));
  }
  return v / std::sqrt(nrm2);
}

struct ZeroModeResult {
  double energy = 0;                  // Rayleigh quotient of the wall mode
  double smallest_eigenvalue = 0;     // raw nearest-to-zero eigenvalue
  ComplexVector state_D;              // wall mode in H_D, unit standard norm
  ComplexVector state_eta;            // site-wise rho^-1 state_D, unit eta norm
  double residual = 0;                // |h v - E v|
  double overlap_with_analytic = 0;   // |<analytic| eta |numeric>|^2
};

/// Smallest-|E| midgap eigenpair of the lattice operator, with the wall mode
/// resolved inside the near-degenerate midgap pair by the exact lattice
/// chiral operator I kron sigma^1. A sign-changing mass on an open Wilson
/// lattice carries one boundary mode besides the wall mode; the two hybridize
/// at the e^{-m0 L} scale and are separated by their opposite chirality.
inline ZeroModeResult zero_mode_solve(const LatticeOperator& op, double phi) {
  op.profile.validate();
  if (op.profile.kind == MassProfile::Kind::Constant)
    throw NoGapIsolation("zero_mode_solve: constant mass has no wall mode");
  if (!(op.wilson_r > 0))
    throw ValidationError("zero_mode_solve: wilson_r must be positive");
  const int n = op.n_sites;
  const arma::mat h = arma::real(op.matrix);
  if (arma::abs(arma::imag(op.matrix)).max() > 1e-12)
    throw NotHermitian("zero_mode_solve: unexpected imaginary entries");
  arma::vec ev;
  arma::mat evec;
  if (!arma::eig_sym(ev, evec, h, "dc"))
    throw NoConvergence("zero_mode_solve: eig_sym failed");
  const arma::uvec order = arma::sort_index(arma::abs(ev));
  const double m0 = op.profile.amplitude;
  if (std::abs(ev(order(0))) > m0 / 10.0)
    throw NoGapIsolation("zero_mode_solve: no midgap state (|E| = " +
                         std::to_string(std::abs(ev(order(0)))) + ")");
  // chirality resolution inside the two smallest-|E| states
  arma::mat V(2 * n, 2);
  V.col(0) = evec.col(order(0));
  V.col(1) = evec.col(order(1));
  arma::mat gs(2, 2, arma::fill::zeros);  // projected I kron sigma^1
  for (int c = 0; c < 2; ++c)
    for (int d = 0; d < 2; ++d)
      for (int j = 0; j < n; ++j)
        gs(c, d) += V(2 * j, c) * V(2 * j + 1, d) +
                    V(2 * j + 1, c) * V(2 * j, d);
  arma::vec gw;
  arma::mat gv;
  arma::eig_sym(gw, gv, arma::symmatu(gs));
  // wall-mode chirality is -1 for m(x) -> +m0 at x -> +infinity
  arma::vec v = V * gv.col(0);
  v /= arma::norm(v);
  // isolation: beyond the chirality-paired midgap doublet, the next level
  // must be a bulk state (doublers at wilson_r ~ 0 violate this)
  if (std::abs(ev(order(2))) < m0 / 10.0)
    throw NoGapIsolation("zero_mode_solve: midgap manifold not isolated");

  ZeroModeResult r;
  r.smallest_eigenvalue = ev(order(0));
  r.energy = arma::dot(v, h * v);
  r.residual = arma::norm(h * v - r.energy * v);
  r.state_D = arma::conv_to<arma::cx_vec>::from(v);

  // site-wise map to the eta basis and unit eta normalization
  ModelSpec ms;
  ms.phi = phi;
  const MetricPair mp = build_metric(ms);
  r.state_eta.set_size(2 * n);
  for (int j = 0; j < n; ++j) {
    const ComplexVector s = mp.rho_inv * ComplexVector{r.state_D(2 * j),
                                                       r.state_D(2 * j + 1)};
    r.state_eta(2 * j) = s(0);
    r.state_eta(2 * j + 1) = s(1);
  }
  double nrm2 = 0;
  for (int j = 0; j < n; ++j) {
    const ComplexVector s = {r.state_eta(2 * j), r.state_eta(2 * j + 1)};
    nrm2 += std::real(eta_inner(s, s, mp.eta_plus));
  }
  r.state_eta /= std::sqrt(nrm2);

  const ComplexVector ana = analytic_zero_mode(op.profile, op.sites, phi);
  cx ov = 0;
  for (int j = 0; j < n; ++j) {
    const ComplexVector sa = {ana(2 * j), ana(2 * j + 1)};
    const ComplexVector sn = {r.state_eta(2 * j), r.state_eta(2 * j + 1)};
    ov += eta_inner(sa, sn, mp.eta_plus);
  }
  r.overlap_with_analytic = std::norm(ov);
  return r;
}

/// Site-wise similarity image of the lattice operator: the non-hermitian
/// real-space H with the same spectrum, (I kron rho^-1) h (I kron rho).
inline ComplexMatrix lattice_nonhermitian(const LatticeOperator& op,
                                          double phi) {
  const int n = op.n_sites;
  ModelSpec ms;
  ms.phi = phi;
  const MetricPair m = build_metric(ms);
  const ComplexMatrix big_rho =
      arma::kron(arma::eye<arma::cx_mat>(n, n), m.rho);
  const ComplexMatrix big_rho_inv =
      arma::kron(arma::eye<arma::cx_mat>(n, n), m.rho_inv);
  return big_rho_inv * op.matrix * big_rho;
}

}  // namespace pseudotopo

#pragma once

// Release-gate checks: one entry per criterion, each returning pass/fail and
// a one-line measurement summary. Shared by the acceptance test binary and
// the CLI `report` command.

#include <chrono>
#include <random>

#include "pseudotopo/invariants.hpp"
#include "pseudotopo/lattice.hpp"

namespace pseudotopo {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

namespace acceptance {

inline const std::vector<double>& mass_matrix() {
  static const std::vector<double> m = {-3.0, -1.0, -0.5, 0.5, 1.0, 3.0};
  return m;
}

inline const std::vector<double>& phi_matrix() {
  static const std::vector<double> p = {0.0, 0.5, 1.0, 2.0};
  return p;
}

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// 1. cs1 = sign(m)/4 within 1e-6 across the (m, phi) matrix, < 1 s per case.
inline CriterionResult criterion_cs1() {
  CriterionResult r{1, "cs1 = sign(m)/4 across the (m, phi) matrix"};
  QuadratureSpec quad;
  double worst = 0, slowest = 0;
  for (double m : mass_matrix())
    for (double phi : phi_matrix()) {
      ModelSpec s;
      s.mass = m;
      s.phi = phi;
      const auto t0 = std::chrono::steady_clock::now();
      const double c = cs1(s, quad);
      const auto t1 = std::chrono::steady_clock::now();
      slowest = std::max(slowest,
                         std::chrono::duration<double>(t1 - t0).count());
      worst = std::max(worst, std::abs(c - (m > 0 ? 0.25 : -0.25)));
    }
  r.passed = worst < 1e-6 && slowest < 1.0;
  r.detail = "max |cs1 - sign(m)/4| = " + fmt(worst) +
             ", slowest case " + fmt(slowest) + " s";
  return r;
}

// 2. winding = sign(m)/2 within 1e-8 and |winding - 2 cs1| < 2e-6.
inline CriterionResult criterion_winding() {
  CriterionResult r{2, "winding = sign(m)/2 and winding = 2 cs1"};
  QuadratureSpec quad;
  double worst_nu = 0, worst_rel = 0;
  for (double m : mass_matrix())
    for (double phi : phi_matrix()) {
      ModelSpec s;
      s.mass = m;
      s.phi = phi;
      const double nu = winding_number(s, quad);
      const double c = cs1(s, quad);
      worst_nu = std::max(worst_nu, std::abs(nu - (m > 0 ? 0.5 : -0.5)));
      worst_rel = std::max(worst_rel, std::abs(nu - 2.0 * c));
    }
  r.passed = worst_nu < 1e-8 && worst_rel < 2e-6;
  r.detail = "max |nu - sign(m)/2| = " + fmt(worst_nu) +
             ", max |nu - 2 cs1| = " + fmt(worst_rel);
  return r;
}

inline std::vector<ModelSpec> three_models(double phi) {
  ModelSpec s1, s2, s3;
  s2.id = ModelId::Dirac2D;
  s3.id = ModelId::Dirac3D;
  s1.phi = s2.phi = s3.phi = phi;
  return {s1, s2, s3};
}

inline arma::vec draw_momentum(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  arma::vec p(dim);
  for (int i = 0; i < dim; ++i) p(i) = dist(rng);
  return p;
}

// 3. Isospectrality and spectral reality over 100 random momenta per model.
inline CriterionResult criterion_isospectrality() {
  CriterionResult r{3, "isospectrality and real spectra"};
  std::mt19937_64 rng(20240301);
  double worst_im = 0, worst_dist = 0;
  for (double phi : {0.3, 1.0, 2.0})
    for (const auto& spec : three_models(phi))
      for (int k = 0; k < 100; ++k) {
        const arma::vec p = draw_momentum(rng, spec.space_dim());
        const EigenDecomposition d = gen_eig(build_H(spec, p));
        worst_im = std::max(worst_im, arma::abs(arma::imag(d.values)).max());
        worst_dist = std::max(
            worst_dist,
            multiset_distance(d.values, herm_eig(build_h(spec, p)).values));
      }
  r.passed = worst_im < 1e-9 && worst_dist < 1e-9;
  r.detail = "max |Im E| = " + fmt(worst_im) +
             ", max multiset distance = " + fmt(worst_dist);
  return r;
}

// 4. Similarity and pseudo-hermiticity identities on the same grids.
inline CriterionResult criterion_similarity() {
  CriterionResult r{4, "rho H rho^-1 = h and H^+ = eta H eta^-1"};
  std::mt19937_64 rng(20240302);
  double worst_sim = 0, worst_ph = 0;
  for (double phi : {0.3, 1.0, 2.0})
    for (const auto& spec : three_models(phi)) {
      const MetricPair m = build_metric(spec);
      for (int k = 0; k < 100; ++k) {
        const arma::vec p = draw_momentum(rng, spec.space_dim());
        const ComplexMatrix H = build_H(spec, p);
        worst_sim = std::max(
            worst_sim,
            arma::abs(m.rho * H * m.rho_inv - build_h(spec, p)).max());
        worst_ph = std::max(worst_ph, check_pseudo_hermiticity(H, m.eta_plus));
      }
    }
  r.passed = worst_sim < 1e-10 && worst_ph < 1e-10;
  r.detail = "max similarity residual = " + fmt(worst_sim) +
             ", max pseudo-hermiticity residual = " + fmt(worst_ph);
  return r;
}

// 5. Berry-connection equality at every quadrature node for all models, plus
// the 1D closed form A = -i m / (2 lambda^2).
inline CriterionResult criterion_berry() {
  CriterionResult r{5, "eta-product and standard-product connections agree"};
  const double delta = 1e-4;
  double worst_eq = 0, worst_form = 0;

  ModelSpec s1;
  s1.phi = 1.0;
  const ComplexMatrix X1 = chiral_reference(s1);
  const int n = 256;  // angle-substitution nodes over the compactified line
  for (int k = 0; k < n; ++k) {
    const double theta = (-0.5 + (k + 0.5) / n) * std::numbers::pi;
    const double p = std::tan(theta);
    const ConnectionSample c = berry_connection_point(s1, {p}, delta, X1);
    worst_eq = std::max(worst_eq, c.max_difference);
    const cx closed(0, -1.0 / (2.0 * (p * p + 1.0)));
    worst_form = std::max(worst_form, std::abs(c.A[0](0, 0) - closed));
  }

  ModelSpec s2;
  s2.id = ModelId::Dirac2D;
  s2.phi = 1.0;
  const ComplexMatrix X2 = chiral_reference(s2);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const arma::vec p = {-3.0 + 6.0 * i / 7.0, -3.0 + 6.0 * j / 7.0};
      worst_eq = std::max(
          worst_eq, berry_connection_point(s2, p, delta, X2).max_difference);
    }

  ModelSpec s3;
  s3.id = ModelId::Dirac3D;
  s3.phi = 1.0;
  const ComplexMatrix X3 = chiral_reference(s3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        const arma::vec p = {-2.0 + 4.0 * i / 3.0, -2.0 + 4.0 * j / 3.0,
                             -2.0 + 4.0 * k / 3.0};
        worst_eq = std::max(
            worst_eq, berry_connection_point(s3, p, delta, X3).max_difference);
      }

  r.passed = worst_eq < 1e-8 && worst_form < 100.0 * delta * delta;
  r.detail = "max |A - a| = " + fmt(worst_eq) +
             ", max closed-form deviation = " + fmt(worst_form);
  return r;
}

// 6. Q-matrix structure and the 1D off-diagonal scalar q.
inline CriterionResult criterion_q_matrices() {
  CriterionResult r{6, "projector algebra and the off-diagonal q"};
  double worst_alg = 0, worst_q = 0;
  for (double phi : phi_matrix())
    for (const auto& spec : three_models(phi)) {
      const int d = spec.spinor_dim();
      for (double pval : {-2.0, -0.7, 0.0, 0.7, 2.0}) {
        arma::vec p(spec.space_dim(), arma::fill::value(pval));
        const QMatrices q = q_matrices(spec, p);
        worst_alg = std::max(
            worst_alg, arma::abs(q.P_eta * q.P_eta - q.P_eta).max());
        worst_alg = std::max(
            worst_alg,
            arma::abs(q.Q_eta * q.Q_eta - arma::eye<arma::cx_mat>(d, d)).max());
        if (spec.id == ModelId::Dirac1D) {
          const double lam = std::hypot(pval, spec.mass);
          const cx expect = cx(spec.mass, -pval) / lam;
          worst_q = std::max(worst_q, std::abs(q.q - expect));
          worst_q = std::max(worst_q, std::abs(std::abs(q.q) - 1.0));
        }
      }
    }
  r.passed = worst_alg < 1e-10 && worst_q < 1e-10;
  r.detail = "max projector residual = " + fmt(worst_alg) +
             ", max q deviation = " + fmt(worst_q);
  return r;
}

// 7. eta-unitarity of the evolution; standard norm visibly drifts.
inline CriterionResult criterion_evolution() {
  CriterionResult r{7, "evolution unitary in the eta norm only"};
  std::mt19937_64 rng(20240303);
  std::normal_distribution<double> gauss;
  double worst_eta = 0, best_standard = 0;
  for (const auto& spec : three_models(1.0)) {
    const MetricPair m = build_metric(spec);
    const int d = spec.spinor_dim();
    const arma::vec p(spec.space_dim(), arma::fill::value(0.5));
    for (int k = 0; k < 20; ++k) {
      ComplexVector v0(d);
      for (int i = 0; i < d; ++i) v0(i) = cx(gauss(rng), gauss(rng));
      v0 = arma::normalise(v0);
      const double n0 = eta_norm(v0, m.eta_plus);
      for (double t : {1.0, 5.0, 10.0}) {
        const ComplexVector vt = evolve(spec, p, t, v0);
        worst_eta = std::max(worst_eta,
                             std::abs(eta_norm(vt, m.eta_plus) - n0));
        best_standard = std::max(
            best_standard, std::abs(arma::norm(vt) - arma::norm(v0)));
      }
    }
  }
  r.passed = worst_eta < 1e-8 && best_standard > 1e-3;
  r.detail = "max eta-norm drift = " + fmt(worst_eta) +
             ", max standard-norm drift = " + fmt(best_standard);
  return r;
}

// 8. Lattice zero mode at the reference geometry plus an a -> a/2 refinement.
// The wall mode's energy sits at the wall-boundary hybridization floor (well
// below 1e-6 and independent of a), so the 3x reduction is enforced on the
// overlap error strictly and on the energy only above that floor.
inline CriterionResult criterion_zero_mode() {
  CriterionResult r{8, "domain-wall zero mode and O(a^2) refinement"};
  MassProfile prof;
  const LatticeOperator op = discretize_1d(prof, 800, 0.05, 1.0);
  const ZeroModeResult z = zero_mode_solve(op, 1.0);
  const LatticeOperator op2 = discretize_1d(prof, 1600, 0.025, 1.0);
  const ZeroModeResult z2 = zero_mode_solve(op2, 1.0);
  const double err = 1.0 - z.overlap_with_analytic;
  const double err2 = 1.0 - z2.overlap_with_analytic;
  const bool energy_ok =
      std::abs(z.energy) < 1e-3 &&
      std::abs(z2.energy) < std::max(std::abs(z.energy) / 3.0, 1e-6);
  r.passed = energy_ok && z.overlap_with_analytic > 0.999 &&
             err / err2 >= 3.0;
  r.detail = "|E| = " + fmt(std::abs(z.energy)) + " -> " +
             fmt(std::abs(z2.energy)) + ", 1 - overlap = " + fmt(err) +
             " -> " + fmt(err2);
  return r;
}

// 9. phi-independence of cs1, winding, and the 2D curvature integrals.
inline CriterionResult criterion_phi_independence() {
  CriterionResult r{9, "invariants independent of the deformation"};
  QuadratureSpec quad;
  double worst = 0;
  double cs_ref = 0, nu_ref = 0, curv_ref = 0;
  bool first = true;
  for (double phi : phi_matrix()) {
    ModelSpec s1;
    s1.phi = phi;
    const double c = cs1(s1, quad);
    const double nu = winding_number(s1, quad);
    ModelSpec s2;
    s2.id = ModelId::Dirac2D;
    s2.phi = phi;
    const Curvature2DResult cv = curvature_2d(s2, quad);
    if (first) {
      cs_ref = c;
      nu_ref = nu;
      curv_ref = cv.filled_h;
      first = false;
    } else {
      worst = std::max({worst, std::abs(c - cs_ref), std::abs(nu - nu_ref),
                        std::abs(cv.filled_h - curv_ref)});
    }
  }
  r.passed = worst < 1e-6;
  r.detail = "max variation across phi = " + fmt(worst);
  return r;
}

// 10. 3D discrete-symmetry residuals.
inline CriterionResult criterion_symmetries_3d() {
  CriterionResult r{10, "3D time reversal and deformed parity"};
  ModelSpec s;
  s.id = ModelId::Dirac3D;
  s.phi = 1.0;
  const auto g = symmetry_generators_3d(s);
  double worst_tr = 0, worst_pd = 0, best_std = 0;
  for (double pv : {-1.5, 0.3, 2.0}) {
    const arma::vec p = {pv, 0.5 * pv, -0.25 * pv};
    const ComplexMatrix H = build_H(s, p);
    const ComplexMatrix Hm = build_H(s, arma::vec(-p));
    worst_tr = std::max(
        worst_tr,
        arma::abs(g.time_reversal_unitary * arma::conj(H) *
                      arma::inv(g.time_reversal_unitary) - Hm).max());
    worst_pd = std::max(
        worst_pd,
        arma::abs(g.parity_deformed * Hm * arma::inv(g.parity_deformed) - H)
            .max());
    best_std = std::max(
        best_std,
        arma::abs(g.parity_std * Hm * arma::inv(g.parity_std) - H).max());
  }
  r.passed = worst_tr < 1e-12 && worst_pd < 1e-12 && best_std > 1e-2;
  r.detail = "TR residual = " + fmt(worst_tr) + ", deformed parity = " +
             fmt(worst_pd) + ", standard parity = " + fmt(best_std);
  return r;
}

}  // namespace acceptance

/// Run criteria 1-10; criterion 11 (total wall time < 60 s) is appended from
/// the measured total.
inline std::vector<CriterionResult> run_acceptance() {
  using Fn = CriterionResult (*)();
  const Fn fns[] = {acceptance::criterion_cs1,
                    acceptance::criterion_winding,
                    acceptance::criterion_isospectrality,
                    acceptance::criterion_similarity,
                    acceptance::criterion_berry,
                    acceptance::criterion_q_matrices,
                    acceptance::criterion_evolution,
                    acceptance::criterion_zero_mode,
                    acceptance::criterion_phi_independence,
                    acceptance::criterion_symmetries_3d};
  std::vector<CriterionResult> out;
  double total = 0;
  for (Fn fn : fns) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = fn();
    const auto t1 = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    total += r.seconds;
    out.push_back(std::move(r));
  }
  CriterionResult last{11, "full suite under 60 s"};
  last.passed = total < 60.0;
  last.seconds = total;
  last.detail = "total " + acceptance::fmt(total) + " s";
  out.push_back(last);
  return out;
}

}  // namespace pseudotopo

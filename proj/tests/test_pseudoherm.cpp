#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pseudotopo/pseudoherm.hpp"

using namespace pseudotopo;

namespace {

std::vector<ModelSpec> all_models(double phi) {
  ModelSpec s1, s2, s3;
  s1.id = ModelId::Dirac1D;
  s2.id = ModelId::Dirac2D;
  s3.id = ModelId::Dirac3D;
  s1.mass = 1.0;
  s2.mass = 1.3;
  s3.mass = 0.8;
  s1.phi = s2.phi = s3.phi = phi;
  return {s1, s2, s3};
}

/// The closed-form filled Bloch state of the 1D model:
/// rho^-1 (ip - m + lambda, -(ip - m) + lambda)^T / (2 lambda).
ComplexVector closed_form_filled_1d(double p, double m, double phi) {
  const double lam = std::hypot(p, m);
  const cx z(-m, p);  // ip - m
  ModelSpec s;
  s.phi = phi;
  const MetricPair mp = build_metric(s);
  return mp.rho_inv * ComplexVector{(z + lam) / (2.0 * lam),
                                    (lam - z) / (2.0 * lam)};
}

}  // namespace

TEST_CASE("check_pseudo_hermiticity: hermitian, metric, and mismatched cases") {
  ModelSpec s;
  CHECK(check_pseudo_hermiticity(build_h(s, {0.7}),
                                 arma::eye<arma::cx_mat>(2, 2)) < 1e-14);

  s.mass = 0.7;
  s.phi = 0.9;
  const ComplexMatrix H = build_H(s, {1.3});
  const MetricPair m = build_metric(s);
  CHECK(check_pseudo_hermiticity(H, m.eta_plus) < 1e-12);
  // against the wrong (identity) metric the defect is the anti-hermitian
  // part, 2 m sinh(phi)
  const double defect =
      check_pseudo_hermiticity(H, arma::eye<arma::cx_mat>(2, 2));
  CHECK(defect > 0.1);
  CHECK(defect == doctest::Approx(2.0 * 0.7 * std::sinh(0.9)).epsilon(1e-10));

  CHECK_THROWS_AS(
      check_pseudo_hermiticity(H, ComplexMatrix(arma::zeros<arma::cx_mat>(2, 2))),
      SingularMetric);
  CHECK_THROWS_AS(
      check_pseudo_hermiticity(H, arma::eye<arma::cx_mat>(3, 3)),
      DimensionMismatch);
}

TEST_CASE("eta_inner basics") {
  const ComplexVector e1 = {cx(1, 0), cx(0, 0)};
  CHECK(std::abs(eta_inner(e1, e1, arma::eye<arma::cx_mat>(2, 2)) - cx(1, 0)) <
        1e-15);
  ModelSpec s;
  s.phi = 1.0;
  const MetricPair m = build_metric(s);
  // (1,1) entry of eta_plus is cosh(1)
  CHECK(std::abs(eta_inner(e1, e1, m.eta_plus) - cx(std::cosh(1.0), 0)) <
        1e-12);
  CHECK_THROWS_AS(eta_inner(e1, ComplexVector(3), m.eta_plus),
                  DimensionMismatch);
}

TEST_CASE("similarity_map reproduces the hermitian models") {
  ModelSpec s1;
  s1.mass = 0.6;
  s1.phi = 1.2;
  const auto [h1, r1] = similarity_map(build_H(s1, {0.9}), build_metric(s1));
  CHECK(r1 < 1e-12);
  CHECK(arma::abs(h1 - build_h(s1, {0.9})).max() < 1e-12);

  // identity metric is a no-op
  MetricPair id;
  id.eta_plus = id.rho = id.rho_inv = arma::eye<arma::cx_mat>(2, 2);
  const auto [h0, r0] = similarity_map(build_h(s1, {0.9}), id);
  CHECK(arma::abs(h0 - build_h(s1, {0.9})).max() < 1e-15);
  CHECK(r0 < 1e-14);

  ModelSpec s3;
  s3.id = ModelId::Dirac3D;
  s3.mass = 2.0;
  s3.phi = 0.7;
  const arma::vec p = {0.2, -1.1, 0.5};
  const auto [h3, r3] = similarity_map(build_H(s3, p), build_metric(s3));
  CHECK(r3 < 1e-10);
  CHECK(arma::abs(h3 - build_h(s3, p)).max() < 1e-10);
}

TEST_CASE("map_observable round trip and chiral intertwining") {
  ModelSpec s;
  s.phi = 1.4;
  const MetricPair m = build_metric(s);
  MetricPair id;
  id.eta_plus = id.rho = id.rho_inv = arma::eye<arma::cx_mat>(2, 2);
  CHECK(arma::abs(map_observable(pauli(1), id, MapDirection::ToD) - pauli(1))
            .max() < 1e-15);

  const SymmetrySet sym = chiral_operators(s);
  CHECK(arma::abs(map_observable(sym.gamma_eta, m, MapDirection::ToD) -
                  sym.gamma_D).max() < 1e-12);

  arma::arma_rng::set_seed(11);
  const ComplexMatrix o(2, 2, arma::fill::randn);
  const ComplexMatrix rt = map_observable(
      map_observable(o, m, MapDirection::ToD), m, MapDirection::ToEta);
  CHECK(arma::abs(rt - o).max() < 1e-12);
}

TEST_CASE("expectation-value equality across the two Hilbert spaces") {
  arma::arma_rng::set_seed(42);
  for (auto spec : all_models(1.0)) {
    const MetricPair m = build_metric(spec);
    const int d = spec.spinor_dim();
    for (int trial = 0; trial < 20; ++trial) {
      arma::cx_mat b(d, d, arma::fill::randn);
      const ComplexMatrix o_eta = b + cx(0, 1) * arma::cx_mat(d, d, arma::fill::randn);
      const ComplexMatrix o_d = map_observable(o_eta, m, MapDirection::ToD);
      ComplexVector psi(d, arma::fill::randn);
      psi = arma::normalise(psi);
      const ComplexVector phi = m.rho_inv * psi;
      const cx lhs = arma::cdot(psi, o_d * psi);
      const cx rhs = eta_inner(phi, o_eta * phi, m.eta_plus);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("bloch_solve at the trivial point") {
  ModelSpec s;
  const BlochSolution b = bloch_solve(s, {0.0});
  CHECK(b.energies(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(b.energies(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.filled_count == 1);
  // filled vector is (0, 1)^T with the phase convention
  CHECK(std::abs(b.vectors_D(0, 0)) < 1e-14);
  CHECK(std::abs(b.vectors_D(1, 0) - cx(1, 0)) < 1e-14);
}

TEST_CASE("bloch_solve energies and the closed-form filled state") {
  ModelSpec s;
  s.phi = 1.0;
  const BlochSolution b = bloch_solve(s, {1.0});
  CHECK(b.energies(0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(b.energies(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  const MetricPair m = build_metric(s);
  const ComplexVector ref = closed_form_filled_1d(1.0, 1.0, 1.0);
  const cx overlap = eta_inner(ref, ComplexVector(b.vectors_eta.col(0)),
                               m.eta_plus);
  CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-9);
  // eigenvector of H with eigenvalue -sqrt(2)
  const ComplexMatrix H = build_H(s, {1.0});
  CHECK(arma::abs(H * b.vectors_eta.col(0) +
                  std::sqrt(2.0) * b.vectors_eta.col(0)).max() < 1e-9);
}

TEST_CASE("bloch_solve invariants across models") {
  for (double phi : {0.0, 1.0}) {
    for (auto spec : all_models(phi)) {
      arma::vec p(spec.space_dim(), arma::fill::value(0.6));
      const BlochSolution b = bloch_solve(spec, p);
      const int d = spec.spinor_dim();
      CHECK(b.filled_count == d / 2);
      const MetricPair m = build_metric(spec);
      CHECK(arma::abs(b.vectors_eta - m.rho_inv * b.vectors_D).max() < 1e-12);
      // eta-orthonormality of the mapped vectors
      const ComplexMatrix gram =
          b.vectors_eta.t() * m.eta_plus * b.vectors_eta;
      CHECK(arma::abs(gram - arma::eye<arma::cx_mat>(d, d)).max() < 1e-10);
      // standard orthonormality of vectors_D
      const ComplexMatrix gd = b.vectors_D.t() * b.vectors_D;
      CHECK(arma::abs(gd - arma::eye<arma::cx_mat>(d, d)).max() < 1e-10);
      // vectors_eta is NOT standard-orthonormal once phi != 0
      const ComplexMatrix ge = b.vectors_eta.t() * b.vectors_eta;
      const double defect =
          arma::abs(ge - arma::eye<arma::cx_mat>(d, d)).max();
      if (phi == 0.0)
        CHECK(defect < 1e-10);
      else
        CHECK(defect > 1e-4);
    }
  }
}

TEST_CASE("bloch_solve rejects the gapless point") {
  ModelSpec s;
  s.mass = 0.0;
  CHECK_THROWS_AS(bloch_solve(s, {0.0}), GaplessModel);
}

TEST_CASE("isospectrality over random momenta") {
  arma::arma_rng::set_seed(7);
  for (double phi : {0.3, 1.0, 2.0}) {
    for (auto spec : all_models(phi)) {
      const MetricPair m = build_metric(spec);
      double worst = 0;
      for (int trial = 0; trial < 100; ++trial) {
        arma::vec p(spec.space_dim(), arma::fill::randn);
        p *= 3.0;
        const ComplexMatrix H = build_H(spec, p);
        worst = std::max(worst,
                         multiset_distance(gen_eig(H).values,
                                           herm_eig(build_h(spec, p)).values));
      }
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("evolve: eta-unitary, standard-non-unitary") {
  ModelSpec s;
  s.phi = 1.0;
  const arma::vec p = {0.5};
  arma::arma_rng::set_seed(99);
  ComplexVector v0(2, arma::fill::randn);
  v0 += cx(0, 1) * ComplexVector(2, arma::fill::randn);
  v0 = arma::normalise(v0);

  CHECK(arma::abs(evolve(s, p, 0.0, v0) - v0).max() < 1e-14);

  const MetricPair m = build_metric(s);
  const double n0 = eta_norm(v0, m.eta_plus);
  for (double t : {1.0, 5.0, 10.0}) {
    const ComplexVector vt = evolve(s, p, t, v0);
    CHECK(std::abs(eta_norm(vt, m.eta_plus) - n0) < 1e-8);
  }
  // standard norm drifts for generic states
  const ComplexVector v1 = evolve(s, p, 1.0, v0);
  CHECK(std::abs(arma::norm(v1) - arma::norm(v0)) > 1e-3);

  CHECK_THROWS_AS(evolve(s, p, 1.0, ComplexVector(2, arma::fill::zeros)),
                  ValidationError);
}

TEST_CASE("normality_check") {
  ModelSpec s;
  const auto [c0, q0] = normality_check(build_h(s, {0.7}));
  CHECK(c0 < 1e-12);
  CHECK(q0 < 1e-12);

  s.phi = 1.0;
  const auto [c1, q1] = normality_check(build_H(s, {0.3}));
  CHECK(c1 > 1e-3);
  CHECK(q1 > 1e-3);

  // at phi = 0 the commutator vanishes identically
  s.phi = 0.0;
  const auto [c2, q2] = normality_check(build_H(s, {0.3}));
  CHECK(c2 < 1e-14);
  CHECK(q2 < 1e-10);

  s.mass = 0.0;
  CHECK_THROWS_AS(normality_check(build_H(s, {0.0})), GaplessModel);
}

TEST_CASE("pseudo-anti-hermiticity through kappa") {
  arma::arma_rng::set_seed(5);
  for (auto spec : all_models(0.8)) {
    const SymmetrySet sym = chiral_operators(spec);
    arma::vec p(spec.space_dim(), arma::fill::randn);
    const ComplexMatrix H = build_H(spec, p);
    CHECK(arma::abs(H.t() + sym.kappa * H * arma::inv(sym.kappa)).max() <
          1e-10);
  }
}

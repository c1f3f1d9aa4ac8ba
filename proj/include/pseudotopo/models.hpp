#pragma once

#include <array>
#include <cmath>

#include "pseudotopo/linalg.hpp"

namespace pseudotopo {

enum class ModelId { Dirac1D, Dirac2D, Dirac3D };

/// One of the three deformed Dirac models plus its parameters.
struct ModelSpec {
  ModelId id = ModelId::Dirac1D;
  double mass = 1.0;                 // constant mass m (momentum-space mode)
  double phi = 0.0;                  // deformation parameter
  arma::vec3 axis = {1.0, 0.0, 0.0}; // metric axis, 2D model only

  int spinor_dim() const { return id == ModelId::Dirac1D ? 2 : 4; }
  int space_dim() const {
    switch (id) {
      case ModelId::Dirac1D: return 1;
      case ModelId::Dirac2D: return 2;
      default: return 3;
    }
  }

  void validate() const {
    if (!std::isfinite(mass) || !std::isfinite(phi))
      throw ValidationError("ModelSpec: non-finite parameter");
    if (std::abs(phi) > 20.0)
      throw ValidationError("ModelSpec: |phi| > 20 would overflow cosh/sinh");
    if (id == ModelId::Dirac2D &&
        std::abs(arma::norm(axis) - 1.0) > 1e-12)
      throw AxisNotUnit("ModelSpec: axis not unit length");
  }
};

/// The triple (eta_plus, rho, rho^-1) defining the modified Hilbert space.
struct MetricPair {
  ComplexMatrix eta_plus;
  ComplexMatrix rho;
  ComplexMatrix rho_inv;
};

/// Chiral and discrete-symmetry generators of a model.
struct SymmetrySet {
  ComplexMatrix gamma_D;    // involution anticommuting with h
  ComplexMatrix gamma_eta;  // rho^-1 gamma_D rho, anticommutes with H
  ComplexMatrix kappa;      // rho gamma_D rho = eta_plus gamma_eta
  // 3D model only:
  ComplexMatrix time_reversal_unitary;  // V in T = V K
  ComplexMatrix parity_std;             // beta
  ComplexMatrix parity_deformed;        // e^{phi gamma5} beta
};

inline const ComplexMatrix& pauli(int a) {
  static const ComplexMatrix s1 = {{cx(0, 0), cx(1, 0)}, {cx(1, 0), cx(0, 0)}};
  static const ComplexMatrix s2 = {{cx(0, 0), cx(0, -1)}, {cx(0, 1), cx(0, 0)}};
  static const ComplexMatrix s3 = {{cx(1, 0), cx(0, 0)}, {cx(0, 0), cx(-1, 0)}};
  switch (a) {
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw IndexOutOfRange("pauli: index must be 1..3");
  }
}

/// The five 4x4 Clifford elements xi^1..xi^5 built from tensor products of
/// two Pauli sets (tau acts on the first factor, sigma on the second).
/// The representation satisfies {xi^p, xi^q} = 2 delta^{pq}.
inline const std::array<ComplexMatrix, 5>& clifford_rep() {
  static const std::array<ComplexMatrix, 5> xis = [] {
    const ComplexMatrix id2 = arma::eye<arma::cx_mat>(2, 2);
    return std::array<ComplexMatrix, 5>{
        arma::kron(pauli(2), id2),       // xi^1
        arma::kron(pauli(3), id2),       // xi^2
        arma::kron(pauli(1), pauli(3)),  // xi^3
        arma::kron(pauli(1), pauli(1)),  // xi^4
        arma::kron(pauli(1), pauli(2)),  // xi^5
    };
  }();
  return xis;
}

inline double levi_civita(int a, int b, int c) {
  return 0.5 * (a - b) * (b - c) * (c - a);
}

/// Rotation generators J^a = (i/8) eps^{abc} [xi^b, xi^c]. Hermitian, with
/// eigenvalues +-1/2; the algebra closes as [J^a, J^b] = -i eps^{abc} J^c
/// in this representation.
inline const std::array<ComplexMatrix, 3>& o3_generators() {
  static const std::array<ComplexMatrix, 3> js = [] {
    const auto& xi = clifford_rep();
    std::array<ComplexMatrix, 3> j;
    for (int a = 0; a < 3; ++a) {
      j[a] = arma::zeros<arma::cx_mat>(4, 4);
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          const double e = levi_civita(a + 1, b + 1, c + 1);
          if (e != 0.0)
            j[a] += cx(0, e / 8.0) * (xi[b] * xi[c] - xi[c] * xi[b]);
        }
    }
    return j;
  }();
  return js;
}

inline const ComplexMatrix& dirac_beta() {
  static const ComplexMatrix b =
      arma::kron(pauli(3), arma::eye<arma::cx_mat>(2, 2));
  return b;
}

inline const ComplexMatrix& dirac_gamma5() {
  static const ComplexMatrix g =
      arma::kron(pauli(1), arma::eye<arma::cx_mat>(2, 2));
  return g;
}

inline const ComplexMatrix& dirac_alpha(int a) {
  static const std::array<ComplexMatrix, 3> as = {
      arma::kron(pauli(1), pauli(1)), arma::kron(pauli(1), pauli(2)),
      arma::kron(pauli(1), pauli(3))};
  if (a < 1 || a > 3) throw IndexOutOfRange("dirac_alpha: index must be 1..3");
  return as[a - 1];
}

/// Hermitian involution G generating the model's metric: eta_plus = e^{-phi G}.
/// 1D: -sigma^2. 2D: -2 n.J. 3D: gamma5. The 1D and 2D signs are the unique
/// choices making rho H rho^-1 = h hold for the representations above.
inline ComplexMatrix metric_generator(const ModelSpec& spec) {
  switch (spec.id) {
    case ModelId::Dirac1D: return ComplexMatrix(-1.0 * pauli(2));
    case ModelId::Dirac2D: {
      const auto& j = o3_generators();
      return -2.0 * (spec.axis(0) * j[0] + spec.axis(1) * j[1] +
                     spec.axis(2) * j[2]);
    }
    default: return dirac_gamma5();
  }
}

inline void require_momentum_dim(const ModelSpec& spec, const arma::vec& p,
                                 const char* who) {
  if (static_cast<int>(p.n_elem) != spec.space_dim())
    throw DimensionMismatch(std::string(who) + ": momentum has " +
                            std::to_string(p.n_elem) + " components, model needs " +
                            std::to_string(spec.space_dim()));
}

/// Hermitian counterpart h(p) of the model at momentum p.
inline ComplexMatrix build_h(const ModelSpec& spec, const arma::vec& p) {
  spec.validate();
  require_momentum_dim(spec, p, "build_h");
  switch (spec.id) {
    case ModelId::Dirac1D:
      return pauli(2) * p(0) + spec.mass * pauli(3);
    case ModelId::Dirac2D: {
      const auto& xi = clifford_rep();
      return xi[3] * p(0) + xi[4] * p(1) + spec.mass * xi[2];
    }
    default: {
      ComplexMatrix h = spec.mass * dirac_beta();
      for (int a = 1; a <= 3; ++a) h += dirac_alpha(a) * p(a - 1);
      return h;
    }
  }
}

/// Complexified rotation matrix R^{ab} entering the 2D mass term.
inline ComplexMatrix rotation_R(const arma::vec3& n, double phi) {
  ComplexMatrix r(3, 3, arma::fill::zeros);
  const double ch = std::cosh(phi), sh = std::sinh(phi);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      r(a, b) = n(a) * n(b) * (1.0 - ch) + (a == b ? ch : 0.0);
      for (int c = 0; c < 3; ++c)
        r(a, b) += cx(0, sh) * levi_civita(a + 1, b + 1, c + 1) * n(c);
    }
  return r;
}

/// Non-hermitian model Hamiltonian H(p). Reduces to build_h at phi = 0.
inline ComplexMatrix build_H(const ModelSpec& spec, const arma::vec& p) {
  spec.validate();
  require_momentum_dim(spec, p, "build_H");
  switch (spec.id) {
    case ModelId::Dirac1D:
      return pauli(2) * p(0) + spec.mass * std::cosh(spec.phi) * pauli(3) -
             cx(0, 1) * spec.mass * std::sinh(spec.phi) * pauli(1);
    case ModelId::Dirac2D: {
      const auto& xi = clifford_rep();
      const ComplexMatrix r = rotation_R(spec.axis, spec.phi);
      ComplexMatrix h = xi[3] * p(0) + xi[4] * p(1);
      for (int b = 0; b < 3; ++b) h += spec.mass * r(2, b) * xi[b];
      return h;
    }
    default: {
      ComplexMatrix h =
          spec.mass * expm(dirac_gamma5() * spec.phi) * dirac_beta();
      for (int a = 1; a <= 3; ++a) h += dirac_alpha(a) * p(a - 1);
      return h;
    }
  }
}

/// Metric triple of the model: eta_plus = e^{-phi G}, rho = e^{-phi/2 G}.
inline MetricPair build_metric(const ModelSpec& spec) {
  spec.validate();
  const ComplexMatrix g = metric_generator(spec);
  MetricPair m;
  m.eta_plus = expm(-spec.phi * g);
  m.rho = expm(-0.5 * spec.phi * g);
  m.rho_inv = expm(0.5 * spec.phi * g);
  // round to exactly hermitian; the generators are hermitian involutions
  m.eta_plus = 0.5 * (m.eta_plus + m.eta_plus.t());
  m.rho = 0.5 * (m.rho + m.rho.t());
  m.rho_inv = 0.5 * (m.rho_inv + m.rho_inv.t());
  return m;
}

/// The 4 (2x2) or 16 (4x4) tensor-product basis matrices, enumeration order
/// fixed: tau index major, sigma index minor, identity = index 0.
inline std::vector<ComplexMatrix> gamma_basis(int dim) {
  std::vector<ComplexMatrix> basis;
  auto unit = [](int a) -> ComplexMatrix {
    return a == 0 ? arma::eye<arma::cx_mat>(2, 2) : pauli(a);
  };
  if (dim == 2) {
    for (int a = 0; a < 4; ++a) basis.push_back(unit(a));
  } else if (dim == 4) {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) basis.push_back(arma::kron(unit(a), unit(b)));
  } else {
    throw DimensionMismatch("gamma_basis: dim must be 2 or 4");
  }
  return basis;
}

/// Deterministic chiral-operator search: scan the gamma basis in fixed order
/// for an element anticommuting with h(p) at several probe momenta; first hit
/// wins. Basis elements are hermitian involutions, so the result is too.
inline ComplexMatrix find_chiral_operator(const ModelSpec& spec) {
  const int d = spec.spinor_dim();
  const std::vector<arma::vec> probes = [&] {
    std::vector<arma::vec> ps;
    const int sd = spec.space_dim();
    arma::vec a(sd), b(sd), c(sd);
    for (int i = 0; i < sd; ++i) {
      a(i) = 0.7 + 0.31 * i;
      b(i) = -1.3 + 0.17 * i;
      c(i) = 0.05 * (i + 1);
    }
    return std::vector<arma::vec>{a, b, c};
  }();
  for (const auto& g : gamma_basis(d)) {
    bool ok = true;
    for (const auto& p : probes) {
      const ComplexMatrix h = build_h(spec, p);
      if (arma::abs(h * g + g * h).max() > 1e-12) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (arma::abs(g - arma::eye<arma::cx_mat>(d, d)).max() < 1e-14) continue;
    return g;
  }
  throw NoChiralOperator("find_chiral_operator: no anticommuting basis element");
}

/// Chiral operators in both Hilbert spaces plus the anti-hermiticity
/// intertwiner kappa. For the 3D model the discrete-symmetry generators are
/// filled in as well.
inline SymmetrySet chiral_operators(const ModelSpec& spec) {
  spec.validate();
  SymmetrySet s;
  s.gamma_D = find_chiral_operator(spec);
  const MetricPair m = build_metric(spec);
  s.gamma_eta = m.rho_inv * s.gamma_D * m.rho;
  s.kappa = m.rho * s.gamma_D * m.rho;
  if (spec.id == ModelId::Dirac3D) {
    s.time_reversal_unitary =
        arma::kron(arma::eye<arma::cx_mat>(2, 2), cx(0, 1) * pauli(2));
    s.parity_std = dirac_beta();
    s.parity_deformed = expm(spec.phi * dirac_gamma5()) * dirac_beta();
  }
  return s;
}

struct SymmetryGenerators3D {
  ComplexMatrix time_reversal_unitary;
  ComplexMatrix parity_std;
  ComplexMatrix parity_deformed;
};

/// Time-reversal unitary part V (the antilinear action is V conj(.)), the
/// standard parity beta, and the deformed parity e^{phi gamma5} beta.
inline SymmetryGenerators3D symmetry_generators_3d(const ModelSpec& spec) {
  if (spec.id != ModelId::Dirac3D)
    throw WrongModel("symmetry_generators_3d: 3D model required");
  spec.validate();
  return {arma::kron(arma::eye<arma::cx_mat>(2, 2), cx(0, 1) * pauli(2)),
          dirac_beta(), expm(spec.phi * dirac_gamma5()) * dirac_beta()};
}

}  // namespace pseudotopo

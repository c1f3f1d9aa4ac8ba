#pragma once

// Configuration parsing, command dispatch, and deterministic serialization
// for the command-line front end.

#include <cstdio>
#include <random>
#include <string>

#include <json.hpp>

#include "pseudotopo/invariants.hpp"
#include "pseudotopo/lattice.hpp"

namespace pseudotopo {

inline constexpr const char* kToolkitVersion = "1.0.0";

struct ParseError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string command;
  ModelSpec model;
  bool model_given = false;
  std::vector<arma::vec> momenta;      // explicit or seed-generated
  bool momenta_given = false;
  QuadratureSpec quadrature;
  MassProfile profile;
  int n_sites = 800;
  double spacing = 0.05;
  double wilson_r = 1.0;
  double evolve_t = 1.0;
  ComplexVector evolve_state;          // empty = filled Bloch state
  std::string output_path;
  std::string output_format = "json";
  std::uint64_t seed = 0;
};

using json = nlohmann::ordered_json;

/// Serialize with a fixed float format (17 significant digits, %.17g) so
/// identical reports are byte-identical across runs and platforms.
inline void dump_fixed(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_fixed(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ',';
        dump_fixed(j[k], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

inline std::string dump_fixed(const json& j) {
  std::string s;
  dump_fixed(j, s);
  return s;
}

namespace detail {

inline double require_number(const json& obj, const char* key,
                             const char* scope) {
  if (!obj.contains(key))
    throw ValidationError(std::string(scope) + "." + key + " required");
  if (!obj[key].is_number())
    throw ValidationError(std::string(scope) + "." + key + " must be a number");
  return obj[key].get<double>();
}

inline ModelSpec parse_model(const json& m) {
  ModelSpec spec;
  if (!m.contains("id")) throw ValidationError("model.id required");
  const std::string id = m["id"].get<std::string>();
  if (id == "DIRAC_1D")
    spec.id = ModelId::Dirac1D;
  else if (id == "DIRAC_2D")
    spec.id = ModelId::Dirac2D;
  else if (id == "DIRAC_3D")
    spec.id = ModelId::Dirac3D;
  else
    throw ValidationError("model.id must be DIRAC_1D, DIRAC_2D or DIRAC_3D");
  spec.mass = require_number(m, "m", "model");
  spec.phi = m.value("phi", 0.0);
  if (m.contains("axis")) {
    const auto& ax = m["axis"];
    if (!ax.is_array() || ax.size() != 3)
      throw ValidationError("model.axis must have 3 components");
    for (int k = 0; k < 3; ++k) spec.axis(k) = ax[k].get<double>();
  }
  try {
    spec.validate();
  } catch (const AxisNotUnit&) {
    throw ValidationError("axis not unit length");
  }
  return spec;
}

inline std::vector<arma::vec> parse_momenta(const json& p, int dim) {
  std::vector<arma::vec> out;
  if (p.is_array()) {
    // either a single momentum [..] or a list of momenta [[..], ..]
    if (!p.empty() && p[0].is_array()) {
      for (const auto& q : p) {
        arma::vec v(q.size());
        for (std::size_t k = 0; k < q.size(); ++k) v(k) = q[k].get<double>();
        out.push_back(v);
      }
    } else {
      arma::vec v(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) v(k) = p[k].get<double>();
      out.push_back(v);
    }
  } else if (p.is_object()) {
    const double lo = require_number(p, "min", "p");
    const double hi = require_number(p, "max", "p");
    const int n = static_cast<int>(require_number(p, "n", "p"));
    if (n < 2 || hi <= lo) throw ValidationError("p grid: need n >= 2, max > min");
    for (int k = 0; k < n; ++k) {
      arma::vec v(dim, arma::fill::value(lo + (hi - lo) * k / (n - 1)));
      out.push_back(v);
    }
  } else {
    throw ValidationError("p must be an array or a {min,max,n} grid");
  }
  for (const auto& v : out)
    if (static_cast<int>(v.n_elem) != dim)
      throw ValidationError("p entries must have " + std::to_string(dim) +
                            " components for this model");
  return out;
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");

  RunConfig cfg;
  cfg.command = j.value("command", "");
  if (j.contains("model")) {
    cfg.model = detail::parse_model(j["model"]);
    cfg.model_given = true;
  }
  if (j.contains("quadrature")) {
    const auto& q = j["quadrature"];
    cfg.quadrature.n_points = q.value("n_points", 2048);
    cfg.quadrature.cutoff = q.value("cutoff", 50.0);
    const std::string scheme = q.value("scheme", "trapezoid-on-angle");
    if (scheme == "trapezoid-on-angle")
      cfg.quadrature.scheme = QuadratureSpec::Scheme::TrapezoidOnAngle;
    else if (scheme == "trapezoid-on-momentum")
      cfg.quadrature.scheme = QuadratureSpec::Scheme::TrapezoidOnMomentum;
    else
      throw ValidationError("quadrature.scheme unknown: " + scheme);
    cfg.quadrature.validate();
  }
  if (j.contains("lattice")) {
    const auto& l = j["lattice"];
    const std::string profile = l.value("profile", "sign");
    if (profile == "sign")
      cfg.profile.kind = MassProfile::Kind::Sign;
    else if (profile == "tanh")
      cfg.profile.kind = MassProfile::Kind::Tanh;
    else if (profile == "constant")
      cfg.profile.kind = MassProfile::Kind::Constant;
    else
      throw ValidationError("lattice.profile unknown: " + profile);
    cfg.profile.amplitude = detail::require_number(l, "m0", "lattice");
    cfg.profile.width = l.value("w", 1.0);
    cfg.profile.validate();
    cfg.n_sites = l.value("n_sites", 800);
    cfg.spacing = l.value("spacing", 0.05);
    cfg.wilson_r = l.value("wilson_r", 1.0);
  }
  if (j.contains("evolve")) {
    const auto& e = j["evolve"];
    cfg.evolve_t = detail::require_number(e, "t", "evolve");
    if (e.contains("state")) {
      const auto& s = e["state"];  // [[re, im], ...]
      cfg.evolve_state.set_size(s.size());
      for (std::size_t k = 0; k < s.size(); ++k)
        cfg.evolve_state(k) = cx(s[k][0].get<double>(), s[k][1].get<double>());
    }
  }
  if (j.contains("p") && cfg.model_given)
    cfg.momenta = detail::parse_momenta(j["p"], cfg.model.space_dim()),
    cfg.momenta_given = true;
  cfg.output_path = j.value("output_path", "");
  cfg.output_format = j.value("output_format", "json");
  if (cfg.output_format != "json" && cfg.output_format != "csv")
    throw ValidationError("output_format must be json or csv");
  cfg.seed = j.value("seed", std::uint64_t{0});
  return cfg;
}

/// Seed-driven momentum set: 20 uniform draws from [-3, 3]^dim. Used when a
/// command needs momenta and the config gives none.
inline std::vector<arma::vec> seeded_momenta(std::uint64_t seed, int dim,
                                             int count = 20) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  std::vector<arma::vec> out;
  for (int k = 0; k < count; ++k) {
    arma::vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = dist(rng);
    out.push_back(v);
  }
  return out;
}

namespace detail {

inline json vec_json(const arma::vec& v) {
  json a = json::array();
  for (arma::uword k = 0; k < v.n_elem; ++k) a.push_back(v(k));
  return a;
}

inline json cxvec_json(const ComplexVector& v) {
  json a = json::array();
  for (arma::uword k = 0; k < v.n_elem; ++k)
    a.push_back(json::array({v(k).real(), v(k).imag()}));
  return a;
}

inline const ModelSpec& need_model(const RunConfig& cfg) {
  if (!cfg.model_given) throw ValidationError("model required for this command");
  return cfg.model;
}

inline std::vector<arma::vec> momenta_for(const RunConfig& cfg) {
  if (cfg.momenta_given) return cfg.momenta;
  return seeded_momenta(cfg.seed, need_model(cfg).space_dim());
}

}  // namespace detail

inline json run_spectrum(const RunConfig& cfg) {
  const ModelSpec& spec = detail::need_model(cfg);
  json rows = json::array();
  for (const auto& p : detail::momenta_for(cfg)) {
    const BlochSolution b = bloch_solve(spec, p);
    const EigenDecomposition d = gen_eig(build_H(spec, p));
    json row;
    row["p"] = detail::vec_json(p);
    row["energies"] = detail::vec_json(b.energies);
    row["im_energy_residual"] = arma::abs(arma::imag(d.values)).max();
    row["isospectrality_distance"] =
        multiset_distance(d.values,
                          arma::conv_to<arma::cx_vec>::from(b.energies));
    row["filled_count"] = b.filled_count;
    rows.push_back(row);
  }
  json out;
  out["spectrum"] = rows;
  return out;
}

inline json run_metric_check(const RunConfig& cfg) {
  const ModelSpec& spec = detail::need_model(cfg);
  const MetricPair m = build_metric(spec);
  const int d = spec.spinor_dim();
  json out;
  out["rho_squared_residual"] = arma::abs(m.rho * m.rho - m.eta_plus).max();
  out["rho_inverse_residual"] =
      arma::abs(m.rho * m.rho_inv - arma::eye<arma::cx_mat>(d, d)).max();
  out["eta_min_eigenvalue"] =
      arma::real(herm_eig(m.eta_plus).values).min();
  double worst_pseudo = 0, worst_sim = 0;
  for (const auto& p : detail::momenta_for(cfg)) {
    const ComplexMatrix H = build_H(spec, p);
    worst_pseudo = std::max(worst_pseudo,
                            check_pseudo_hermiticity(H, m.eta_plus));
    worst_sim = std::max(
        worst_sim, arma::abs(m.rho * H * m.rho_inv - build_h(spec, p)).max());
  }
  out["pseudo_hermiticity_residual"] = worst_pseudo;
  out["similarity_residual"] = worst_sim;
  return out;
}

inline json run_berry(const RunConfig& cfg) {
  const ModelSpec& spec = detail::need_model(cfg);
  const ComplexMatrix X = chiral_reference(spec);
  json rows = json::array();
  for (const auto& p : detail::momenta_for(cfg)) {
    const ConnectionSample c = berry_connection_point(spec, p, 1e-4, X);
    json row;
    row["p"] = detail::vec_json(p);
    json dirs = json::array();
    for (std::size_t i = 0; i < c.A.size(); ++i) {
      json dir;
      dir["A"] = detail::cxvec_json(arma::vectorise(c.A[i]));
      dir["a"] = detail::cxvec_json(arma::vectorise(c.a[i]));
      dirs.push_back(dir);
    }
    row["directions"] = dirs;
    row["equality_residual"] = c.max_difference;
    rows.push_back(row);
  }
  json out;
  out["berry"] = rows;
  return out;
}

inline json run_invariant(const RunConfig& cfg) {
  const ModelSpec& spec = detail::need_model(cfg);
  json out;
  if (spec.id == ModelId::Dirac1D) {
    double conv = 0;
    out["cs1"] = cs1(spec, cfg.quadrature, &conv);
    out["cs1_convergence_estimate"] = conv;
    out["winding"] = winding_number(spec, cfg.quadrature);
    // pointwise H-vs-h connection equality on a coarse node sample
    double worst = 0;
    const ComplexMatrix X = chiral_reference(spec);
    for (double p : {-8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0})
      worst = std::max(
          worst, berry_connection_point(spec, {p}, 1e-4, X).max_difference);
    out["equality_residual"] = worst;
  } else if (spec.id == ModelId::Dirac2D) {
    const Curvature2DResult r = curvature_2d(spec, cfg.quadrature);
    out["curvature_filled_h"] = r.filled_h;
    out["curvature_filled_H"] = r.filled_H;
    out["curvature_empty_h"] = r.empty_h;
    out["curvature_empty_H"] = r.empty_H;
    out["equality_residual"] = r.difference;
    out["convergence_estimate"] = r.convergence_estimate;
    out["grid"] = r.grid;
  } else {
    throw WrongModel("invariant: no invariant implemented for the 3D model");
  }
  return out;
}

inline json run_zeromode(const RunConfig& cfg) {
  const double phi = cfg.model_given ? cfg.model.phi : 0.0;
  const LatticeOperator op =
      discretize_1d(cfg.profile, cfg.n_sites, cfg.spacing, cfg.wilson_r);
  const ZeroModeResult z = zero_mode_solve(op, phi);
  json out;
  out["energy"] = z.energy;
  out["smallest_eigenvalue"] = z.smallest_eigenvalue;
  out["residual"] = z.residual;
  out["overlap_with_analytic"] = z.overlap_with_analytic;
  out["n_sites"] = op.n_sites;
  out["spacing"] = op.spacing;
  out["half_length"] = op.half_length;
  return out;
}

inline json run_evolve(const RunConfig& cfg) {
  const ModelSpec& spec = detail::need_model(cfg);
  const MetricPair m = build_metric(spec);
  json rows = json::array();
  for (const auto& p : detail::momenta_for(cfg)) {
    ComplexVector v0 = cfg.evolve_state;
    if (v0.n_elem == 0)
      v0 = bloch_solve(spec, p).vectors_eta.col(0);  // filled Bloch state
    const ComplexVector vt = evolve(spec, p, cfg.evolve_t, v0);
    json row;
    row["p"] = detail::vec_json(p);
    row["t"] = cfg.evolve_t;
    row["eta_norm_drift"] =
        std::abs(eta_norm(vt, m.eta_plus) - eta_norm(v0, m.eta_plus));
    row["standard_norm_drift"] = std::abs(arma::norm(vt) - arma::norm(v0));
    row["state"] = detail::cxvec_json(vt);
    rows.push_back(row);
  }
  json out;
  out["evolve"] = rows;
  return out;
}

inline json config_echo(const RunConfig& cfg) {
  json e;
  e["command"] = cfg.command;
  if (cfg.model_given) {
    json m;
    m["id"] = cfg.model.id == ModelId::Dirac1D   ? "DIRAC_1D"
              : cfg.model.id == ModelId::Dirac2D ? "DIRAC_2D"
                                                 : "DIRAC_3D";
    m["m"] = cfg.model.mass;
    m["phi"] = cfg.model.phi;
    if (cfg.model.id == ModelId::Dirac2D)
      m["axis"] = detail::vec_json(cfg.model.axis);
    e["model"] = m;
  }
  json q;
  q["n_points"] = cfg.quadrature.n_points;
  q["cutoff"] = cfg.quadrature.cutoff;
  e["quadrature"] = q;
  e["seed"] = cfg.seed;
  return e;
}

/// CSV for spectrum reports: one row per (p, band). Other commands emit
/// flattened key,value rows.
inline std::string to_csv(const json& report) {
  std::string out;
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  const json& res = report["results"];
  if (res.contains("spectrum")) {
    const auto& rows = res["spectrum"];
    const std::size_t dim = rows.empty() ? 0 : rows[0]["p"].size();
    for (std::size_t i = 0; i < dim; ++i)
      out += "p" + std::to_string(i) + ",";
    out += "band_index,energy,im_energy_residual\n";
    for (const auto& row : rows)
      for (std::size_t b = 0; b < row["energies"].size(); ++b) {
        for (const auto& pc : row["p"]) out += num(pc.get<double>()) + ",";
        out += std::to_string(b) + "," + num(row["energies"][b].get<double>()) +
               "," + num(row["im_energy_residual"].get<double>()) + "\n";
      }
    return out;
  }
  out += "key,value\n";
  for (auto it = res.begin(); it != res.end(); ++it)
    if (it.value().is_number())
      out += it.key() + "," + num(it.value().get<double>()) + "\n";
  return out;
}

}  // namespace pseudotopo

#pragma once

// Scenes of placed bodies, per-body hidden-disc unions and the hull feature
// estimate built from them, plus the random-scene scaling experiment.

#include "hullscope/arrangement.hpp"
#include "hullscope/discs.hpp"
#include "hullscope/ds.hpp"
#include "hullscope/error.hpp"
#include "hullscope/geometry.hpp"
#include "hullscope/models.hpp"
#include "hullscope/normal_map.hpp"
#include "hullscope/preseam.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hullscope {

inline constexpr const char* kSceneSchema = "hullscope.scene/1";

struct SceneModel {
  std::string id;
  ModelFunction model;
};

struct SceneBody {
  std::size_t model = 0;  // index into Scene::models
  Vec3 translation = Vec3::Zero();
};

struct Scene {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<SceneModel> models;
  std::vector<SceneBody> bodies;

  std::size_t size() const { return bodies.size(); }
  Body body(std::size_t i) const { return Body{models[bodies[i].model].model, bodies[i].translation}; }
};

// ---------------------------------------------------------------------------
// Separation of two disjoint bodies

struct Separation {
  Vec3 direction = Vec3::UnitX();  // from the first body towards the second
  double gap = 0.0;                // width of the separating slab along direction
  int iterations = 0;
  bool converged = false;
};

namespace detail {

/// Largest radius of curvature of the model boundary.
inline double max_curvature_radius(const ModelFunction& m) {
  return m.semiaxes.maxCoeff() * m.semiaxes.maxCoeff() / m.semiaxes.minCoeff();
}

inline double slab_gap(const Body& a, const Body& b, const Vec3& v) {
  return -support_value(b, -v) - support_value(a, v);
}

}  // namespace detail

/// Direction of the shortest segment from a to b, by the damped fixed-point
/// iteration v <- p_b(-v) - p_a(v). The damping keeps the linearized step a
/// contraction for the given curvature radii.
inline Separation separation(const Body& a, const Body& b, double tolerance = 1e-13, int max_iterations = 20000) {
  Separation s;
  Vec3 v = b.translation - a.translation;
  v = v.norm() > 1e-15 ? Vec3(v.normalized()) : Vec3::UnitX();
  const double radius = detail::max_curvature_radius(a.model) + detail::max_curvature_radius(b.model);
  for (int it = 1; it <= max_iterations; ++it) {
    const Vec3 w = support_point(b, -v).point - support_point(a, v).point;
    const double len = w.norm();
    s.iterations = it;
    if (len < 1e-14) break;
    const double alpha = len / (len + radius);
    const Vec3 next = (v + alpha * (w / len - v)).normalized();
    const double step = (next - v).norm();
    v = next;
    if (step < tolerance) {
      s.converged = true;
      break;
    }
  }
  s.direction = v;
  s.gap = detail::slab_gap(a, b, v);
  return s;
}

/// Descriptor of an arbitrary placed pair: v0 along the shortest segment,
/// t the gap, v1 a fixed perpendicular.
inline PairDescriptor recover_descriptor(const Body& a, const Body& b) {
  const auto s = separation(a, b);
  if (!(s.gap > 0.0)) throw Error(ErrorCode::overlap_error, "bodies are not disjoint");
  return PairDescriptor{a.model, b.model, s.direction, s.gap, any_perpendicular(s.direction)};
}

// ---------------------------------------------------------------------------
// Scene files

namespace detail {

inline Vec3 json_vec3(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::parse_error, std::string(what) + " must be a 3-array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline nlohmann::json to_json(const Vec3& v) { return nlohmann::json::array({v.x(), v.y(), v.z()}); }

}  // namespace detail

/// Throws overlap-error naming the first pair that is not disjoint.
inline void check_disjoint(const Scene& scene) {
  for (std::size_t i = 0; i < scene.size(); ++i) {
    for (std::size_t j = i + 1; j < scene.size(); ++j) {
      const Body a = scene.body(i), b = scene.body(j);
      const double reach = a.model.semiaxes.maxCoeff() + b.model.semiaxes.maxCoeff();
      if ((b.translation - a.translation).norm() > reach) continue;
      if (separation(a, b).gap > 0.0) continue;
      throw Error(ErrorCode::overlap_error,
                  "bodies " + std::to_string(i) + " and " + std::to_string(j) + " are not disjoint");
    }
  }
}

inline Scene scene_from_json(const nlohmann::json& doc) {
  Scene scene;
  try {
    if (doc.at("schema").get<std::string>() != kSceneSchema) {
      throw Error(ErrorCode::parse_error, "unsupported schema '" + doc.at("schema").get<std::string>() + "'");
    }
    scene.name = doc.value("name", std::string{});
    scene.seed = doc.value("seed", std::uint64_t{0});
    std::map<std::string, std::size_t> ids;
    for (const auto& jm : doc.at("models")) {
      SceneModel sm;
      sm.id = jm.at("id").get<std::string>();
      const auto kind = jm.value("kind", std::string("ellipsoid-saturated"));
      if (kind != "ellipsoid-saturated") throw Error(ErrorCode::parse_error, "model " + sm.id + ": unknown kind " + kind);
      Quat q = Quat::Identity();
      if (jm.contains("rotation")) {
        const auto& r = jm.at("rotation");
        if (!r.is_array() || r.size() != 4) throw Error(ErrorCode::parse_error, "rotation must be [w,x,y,z]");
        q = Quat(r[0].get<double>(), r[1].get<double>(), r[2].get<double>(), r[3].get<double>());
      }
      try {
        sm.model = make_ellipsoid_model(detail::json_vec3(jm.at("semiaxes"), "semiaxes"), jm.at("u0").get<double>(),
                                        jm.at("u1").get<double>(), q);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::parse_error) throw;
        throw Error(ErrorCode::parse_error, "model " + sm.id + " rejected by validate_model: " + e.what());
      }
      const auto report = validate_model(sm.model, 200);
      if (!report.passed) {
        throw Error(ErrorCode::parse_error,
                    "model " + sm.id + " rejected by validate_model: " + report.failures.front().check);
      }
      if (ids.count(sm.id)) throw Error(ErrorCode::parse_error, "duplicate model id " + sm.id);
      ids[sm.id] = scene.models.size();
      scene.models.push_back(std::move(sm));
    }
    for (const auto& jb : doc.at("bodies")) {
      const auto ref = jb.at("model").get<std::string>();
      const auto it = ids.find(ref);
      if (it == ids.end()) throw Error(ErrorCode::parse_error, "unknown model reference " + ref);
      scene.bodies.push_back({it->second, detail::json_vec3(jb.at("translation"), "translation")});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  check_disjoint(scene);
  return scene;
}

inline nlohmann::json scene_to_json(const Scene& scene) {
  nlohmann::json doc;
  doc["schema"] = kSceneSchema;
  doc["name"] = scene.name;
  doc["seed"] = scene.seed;
  doc["models"] = nlohmann::json::array();
  for (const auto& sm : scene.models) {
    const auto& q = sm.model.rotation;
    doc["models"].push_back({{"id", sm.id},
                             {"kind", "ellipsoid-saturated"},
                             {"semiaxes", detail::to_json(sm.model.semiaxes)},
                             {"rotation", {q.w(), q.x(), q.y(), q.z()}},
                             {"u0", sm.model.u0},
                             {"u1", sm.model.u1}});
  }
  doc["bodies"] = nlohmann::json::array();
  for (const auto& b : scene.bodies) {
    doc["bodies"].push_back({{"model", scene.models[b.model].id}, {"translation", detail::to_json(b.translation)}});
  }
  return doc;
}

inline Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, path + ": " + e.what());
  }
  return scene_from_json(doc);
}

inline void save_scene(const Scene& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::parse_error, "cannot write " + path);
  out << scene_to_json(scene).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Random scenes

struct FamilyParams {
  bool spheres = false;
  double min_axis = 0.8;
  double max_axis = 1.2;
  double spacing = 3.2;  // lower bound on centre distances
  double jitter = 0.2;   // per coordinate
  double u0 = 1.2;
  double u1 = 1.5;
};

/// n bodies on the first n cells of an m x m x m grid (m^3 >= n) with pitch
/// spacing + 2 jitter, each centre jittered by up to jitter per coordinate.
inline Scene random_scene(std::size_t n, const FamilyParams& family, std::uint64_t seed) {
  Rng rng(seed);
  Scene scene;
  scene.seed = seed;
  scene.name = std::string(family.spheres ? "spheres" : "ellipsoids") + "-" + std::to_string(n) + "-" +
               std::to_string(seed);
  std::size_t m = 1;
  while (m * m * m < n) ++m;
  const double pitch = family.spacing + 2.0 * family.jitter;
  for (std::size_t k = 0; k < n; ++k) {
    SceneModel sm;
    sm.id = "m" + std::to_string(k);
    Vec3 axes;
    Quat rot = Quat::Identity();
    if (family.spheres) {
      axes = Vec3::Constant(rng.uniform(family.min_axis, family.max_axis));
    } else {
      for (int c = 0; c < 3; ++c) axes[c] = rng.uniform(family.min_axis, family.max_axis);
      rot = Quat(rng.normal(), rng.normal(), rng.normal(), rng.normal()).normalized();
    }
    sm.model = make_ellipsoid_model(axes, family.u0, family.u1, rot);
    const Vec3 cell(static_cast<double>(k % m), static_cast<double>((k / m) % m), static_cast<double>(k / (m * m)));
    Vec3 centre = pitch * cell;
    for (int c = 0; c < 3; ++c) centre[c] += rng.uniform(-family.jitter, family.jitter);
    scene.models.push_back(std::move(sm));
    scene.bodies.push_back({k, centre});
  }
  return scene;
}

// ---------------------------------------------------------------------------
// Per-body analysis

struct AnalyzeOptions {
  TracePolicy trace;
  PerturbOptions perturb;
  std::uint64_t seed = 1;
  int validation_samples = 200;
  double validation_tolerance = 1e-8;
  double boundary_exclusion = 1e-6;
};

struct HiddenSideCheck {
  int checked = 0;
  int excluded = 0;
  int failures = 0;
};

struct BodyReport {
  int body = 0;
  int discs = 0;
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int covered_faces = 0;
  int hole_faces = 0;
  int overlaps = 0;
  int crossways = 0;
  int vertex_free = 0;
  int hubs = 0;
  int holes = 0;
  int non_simply_connected_holes = 0;
  int component_holes = 0;  // holes counted per connected part of the union
  int disc_hole_incidences = 0;
  int union_vertices = 0;
  int union_edges = 0;
  int max_sequence_length = 0;
  int max_alternation = 0;
  int max_pair_crossings = 0;
  int ds_order = 1;
  bool ds_ok = true;
  bool fully_hidden = false;
  int perturb_attempts = 0;
  double hidden_area = 0.0;
  double exposed_area = 0.0;
  double area_error = 0.0;
  HiddenSideCheck hidden_side;
  std::vector<std::vector<int>> hole_sequences;

  int features() const { return union_vertices + union_edges + holes; }
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::string pair_tag(std::size_t i, std::size_t j) {
  return "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

inline double boundary_distance(const SphericalDisc& d, const Vec3& x) {
  const auto& c = d.boundary;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < c.size(); ++k) {
    best = std::min(best, chord_distance(c.point(k), c.point(k + 1), x) - c.sag(k));
  }
  return std::max(best, 0.0);
}

}  // namespace detail

/// Hidden discs of body i, one per other body, labelled by the other body's index.
inline std::vector<SphericalDisc> body_discs(const Scene& scene, std::size_t i, const TracePolicy& policy = {}) {
  std::vector<SphericalDisc> discs;
  const Body self = scene.body(i);
  for (std::size_t j = 0; j < scene.size(); ++j) {
    if (j == i) continue;
    try {
      const Body other = scene.body(j);
      const auto sep = separation(self, other);
      if (!(sep.gap > 0.0)) throw Error(ErrorCode::overlap_error, "bodies are not disjoint");
      PlacedPair pair{Body{self.model, Vec3::Zero()}, Body{other.model, other.translation - self.translation}};
      discs.push_back(hidden_disc(pair, Basis::from(sep.direction, any_perpendicular(sep.direction)),
                                  static_cast<int>(j), policy));
    } catch (const Error& e) {
      throw Error(e.code(), detail::pair_tag(i, j) + ": " + e.detail());
    }
  }
  return discs;
}

/// Compares disc membership with the defining inequality h_j(w) > h_i(w) at
/// random directions away from the boundaries.
inline HiddenSideCheck validate_hidden_side(const Scene& scene, std::size_t i, const std::vector<SphericalDisc>& discs,
                                            const AnalyzeOptions& options) {
  HiddenSideCheck check;
  Rng rng(detail::mix_seed(options.seed, 1000003 + i));
  const Body self = scene.body(i);
  for (int k = 0; k < options.validation_samples; ++k) {
    const Vec3 w = rng.unit_vector();
    bool near = false;
    bool hidden = false;
    for (const auto& d : discs) {
      if (detail::boundary_distance(d, w) < options.boundary_exclusion) near = true;
      hidden = hidden || disc_contains(d, w);
    }
    if (near) {
      ++check.excluded;
      continue;
    }
    const double own = support_value(self, w);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < scene.size(); ++j) {
      if (j != i) best = std::max(best, support_value(scene.body(j), w));
    }
    ++check.checked;
    const bool ok = hidden ? own < best + options.validation_tolerance : own > best - options.validation_tolerance;
    if (!ok) ++check.failures;
  }
  return check;
}

struct BodyAnalysis {
  BodyReport report;
  std::vector<SphericalDisc> discs;  // as traced
  Arrangement arrangement;           // of the discs, perturbed if needed
};

/// Arrangement of the traced discs; a random perturbation is applied only
/// when the traced discs are not in general position.
inline BodyAnalysis analyze_body_full(const Scene& scene, std::size_t i, const AnalyzeOptions& options = {}) {
  BodyAnalysis out;
  out.discs = body_discs(scene, i, options.trace);
  BodyReport& r = out.report;
  r.body = static_cast<int>(i);
  r.discs = static_cast<int>(out.discs.size());

  CrossingMap crossings;
  std::vector<SphericalDisc> used = out.discs;
  try {
    crossings = all_crossings(out.discs, options.perturb.eps_angle);
    if (detail::odd_count(crossings) || !detail::in_general_position(crossings, options.perturb.triple_tolerance)) {
      auto p = perturb_general_position(out.discs, detail::mix_seed(options.seed, i), options.perturb);
      used = std::move(p.discs);
      crossings = std::move(p.crossings);
      r.perturb_attempts = p.attempts;
    }
  } catch (const Error& e) {
    throw Error(e.code(), "body " + std::to_string(i) + ": " + e.detail());
  }
  for (const auto& [key, xs] : crossings) r.max_pair_crossings = std::max(r.max_pair_crossings, static_cast<int>(xs.size()));

  out.arrangement = build_arrangement(used, crossings);
  const Arrangement& arr = out.arrangement;
  r.vertices = static_cast<int>(arr.vertices.size());
  r.edges = static_cast<int>(arr.edges.size());
  r.faces = static_cast<int>(arr.faces.size());
  for (const auto& f : arr.faces) {
    if (f.cover.empty()) {
      ++r.hole_faces;
      r.exposed_area += f.area;
    } else {
      ++r.covered_faces;
      r.hidden_area += f.area;
    }
  }
  r.area_error = std::abs(r.hidden_area + r.exposed_area - kFourPi);

  const auto comps = all_components(arr);
  for (const auto& c : comps) {
    if (c.kind == ComponentKind::overlap) ++r.overlaps;
    if (c.kind == ComponentKind::crossway) ++r.crossways;
    if (c.kind == ComponentKind::vertex_free) ++r.vertex_free;
  }
  r.hubs = static_cast<int>(hubs(arr, comps).size());

  const auto hs = holes(arr);
  r.holes = static_cast<int>(hs.size());
  r.fully_hidden = hs.empty();
  for (const auto& h : hs) {
    if (!h.simply_connected) ++r.non_simply_connected_holes;
    for (const auto& s : h.sequences) r.hole_sequences.push_back(s);
  }
  for (const auto& part : holes_per_component(arr)) r.component_holes += static_cast<int>(part.size());
  r.disc_hole_incidences = disc_hole_incidences(arr);
  const auto ub = union_boundary(arr);
  r.union_vertices = ub.vertices;
  r.union_edges = ub.edges;

  // Orders are measured: one more than the largest pairwise crossing count.
  r.ds_order = r.max_pair_crossings + 1;
  for (const auto& s : r.hole_sequences) {
    const LabelSequence seq{s, true};
    r.max_sequence_length = std::max(r.max_sequence_length, static_cast<int>(s.size()));
    r.max_alternation = std::max(r.max_alternation, max_alternation(seq));
    if (!is_davenport_schinzel(seq, r.ds_order)) r.ds_ok = false;
    const int symbols = static_cast<int>(std::set<int>(s.begin(), s.end()).size());
    if (symbols <= 6 && r.ds_order <= 4 && static_cast<int>(s.size()) > lambda_brute(symbols, r.ds_order)) {
      r.ds_ok = false;
    }
  }

  if (options.validation_samples > 0) r.hidden_side = validate_hidden_side(scene, i, out.discs, options);
  return out;
}

inline BodyReport analyze_body(const Scene& scene, std::size_t i, const AnalyzeOptions& options = {}) {
  return analyze_body_full(scene, i, options).report;
}

// ---------------------------------------------------------------------------
// Whole-scene report

struct HullFeatureReport {
  std::string scene;
  std::uint64_t seed = 0;
  std::vector<BodyReport> bodies;
  long long total_features = 0;
  int fully_hidden = 0;
  int fully_exposed = 0;  // bodies with no hidden discs at all
};

inline HullFeatureReport hull_feature_report(const Scene& scene, const AnalyzeOptions& options = {}) {
  HullFeatureReport rep;
  rep.scene = scene.name;
  rep.seed = options.seed;
  for (std::size_t i = 0; i < scene.size(); ++i) {
    rep.bodies.push_back(analyze_body(scene, i, options));
    const auto& b = rep.bodies.back();
    rep.total_features += b.features();
    if (b.fully_hidden) ++rep.fully_hidden;
    if (b.discs == 0) ++rep.fully_exposed;
  }
  return rep;
}

inline nlohmann::json to_json(const BodyReport& r) {
  return {{"body", r.body},
          {"discs", r.discs},
          {"V", r.vertices},
          {"E", r.edges},
          {"F", r.faces},
          {"covered_faces", r.covered_faces},
          {"hole_faces", r.hole_faces},
          {"overlaps", r.overlaps},
          {"crossways", r.crossways},
          {"vertex_free", r.vertex_free},
          {"hubs", r.hubs},
          {"holes", r.holes},
          {"non_simply_connected_holes", r.non_simply_connected_holes},
          {"component_holes", r.component_holes},
          {"disc_hole_incidences", r.disc_hole_incidences},
          {"union_vertices", r.union_vertices},
          {"union_edges", r.union_edges},
          {"features", r.features()},
          {"max_sequence_length", r.max_sequence_length},
          {"max_alternation", r.max_alternation},
          {"max_pair_crossings", r.max_pair_crossings},
          {"ds_order", r.ds_order},
          {"ds_ok", r.ds_ok},
          {"fully_hidden", r.fully_hidden},
          {"perturb_attempts", r.perturb_attempts},
          {"hidden_area", r.hidden_area},
          {"exposed_area", r.exposed_area},
          {"area_error", r.area_error},
          {"hidden_side", {{"checked", r.hidden_side.checked},
                           {"excluded", r.hidden_side.excluded},
                           {"failures", r.hidden_side.failures}}},
          {"hole_sequences", r.hole_sequences}};
}

inline nlohmann::json to_json(const HullFeatureReport& rep) {
  nlohmann::json doc;
  doc["scene"] = rep.scene;
  doc["seed"] = rep.seed;
  doc["n"] = rep.bodies.size();
  doc["total_features"] = rep.total_features;
  doc["fully_hidden"] = rep.fully_hidden;
  doc["fully_exposed"] = rep.fully_exposed;
  doc["bodies"] = nlohmann::json::array();
  for (const auto& b : rep.bodies) doc["bodies"].push_back(to_json(b));
  return doc;
}

// ---------------------------------------------------------------------------
// Scaling experiment

struct ScalingConfig {
  std::vector<std::size_t> ns{4, 8, 16, 32};
  int trials = 3;
  std::uint64_t seed = 1;
  FamilyParams family;
  AnalyzeOptions analyze;
  bool timing = true;  // off: wall time reported as 0 so tables are reproducible byte for byte
};

struct ScalingRow {
  std::size_t n = 0;
  int trial = 0;
  std::uint64_t scene_seed = 0;
  long long features = 0;
  long long overlaps = 0;
  long long crossways = 0;
  long long hubs = 0;
  double hubs_per_body = 0.0;
  long long incidences = 0;
  int fully_hidden = 0;
  double wall_ms = 0.0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  double feature_slope = 0.0;
  double hub_slope = 0.0;  // of the mean per-body hub count
};

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lx = std::log(x[k]), ly = std::log(std::max(y[k], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

inline ScalingResult scaling_experiment(const ScalingConfig& config) {
  for (std::size_t k = 1; k < config.ns.size(); ++k) {
    if (config.ns[k] <= config.ns[k - 1]) throw Error(ErrorCode::degenerate_input, "n-list must be ascending");
  }
  ScalingResult result;
  std::vector<double> xs, feat, hub;
  for (std::size_t n : config.ns) {
    double fsum = 0.0, hsum = 0.0;
    for (int t = 0; t < config.trials; ++t) {
      ScalingRow row;
      row.n = n;
      row.trial = t;
      row.scene_seed = detail::mix_seed(config.seed, n * 1000 + static_cast<std::uint64_t>(t));
      const auto start = std::chrono::steady_clock::now();
      const Scene scene = random_scene(n, config.family, row.scene_seed);
      AnalyzeOptions opts = config.analyze;
      opts.seed = row.scene_seed;
      const auto rep = hull_feature_report(scene, opts);
      const auto stop = std::chrono::steady_clock::now();
      row.features = rep.total_features;
      for (const auto& b : rep.bodies) {
        row.overlaps += b.overlaps;
        row.crossways += b.crossways;
        row.hubs += b.hubs;
        row.incidences += b.disc_hole_incidences;
      }
      row.hubs_per_body = static_cast<double>(row.hubs) / static_cast<double>(n);
      row.fully_hidden = rep.fully_hidden;
      if (config.timing) row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      fsum += static_cast<double>(row.features);
      hsum += row.hubs_per_body;
      result.rows.push_back(row);
    }
    xs.push_back(static_cast<double>(n));
    feat.push_back(fsum / config.trials);
    hub.push_back(hsum / config.trials);
  }
  result.feature_slope = loglog_slope(xs, feat);
  result.hub_slope = loglog_slope(xs, hub);
  return result;
}

inline std::string scaling_table(const ScalingResult& result) {
  std::ostringstream os;
  os << "n\ttrial\tscene_seed\tfeatures\toverlaps\tcrossways\thubs\thubs_per_body\tincidences\tfully_hidden\twall_ms\n";
  char buf[64];
  for (const auto& r : result.rows) {
    os << r.n << '\t' << r.trial << '\t' << r.scene_seed << '\t' << r.features << '\t' << r.overlaps << '\t'
       << r.crossways << '\t' << r.hubs << '\t';
    std::snprintf(buf, sizeof buf, "%.6f", r.hubs_per_body);
    os << buf << '\t' << r.incidences << '\t' << r.fully_hidden << '\t';
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
    os << buf << '\n';
  }
  std::snprintf(buf, sizeof buf, "%.6f", result.feature_slope);
  os << "# feature_slope\t" << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.6f", result.hub_slope);
  os << "# hub_slope\t" << buf << '\n';
  return os.str();
}

}  // namespace hullscope

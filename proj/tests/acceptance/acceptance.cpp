// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 only when all pass.

#include "hullscope/hullscope.hpp"

#include "../fixtures.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace hullscope;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

ModelFunction random_ellipsoid(Rng& rng, double lo = 0.8, double hi = 1.2) {
  Vec3 axes;
  for (int c = 0; c < 3; ++c) axes[c] = rng.uniform(lo, hi);
  const Quat q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
  return make_ellipsoid_model(axes, 1.2, 1.5, q);
}

PairDescriptor random_pair(Rng& rng, double lo = 0.8, double hi = 1.2) {
  PairDescriptor d;
  d.f0 = random_ellipsoid(rng, lo, hi);
  d.f1 = random_ellipsoid(rng, lo, hi);
  d.v0 = rng.unit_vector();
  d.v1 = any_perpendicular(d.v0);
  d.t = rng.uniform(0.5, 5.0);
  return d;
}

// 1 -------------------------------------------------------------------------
Outcome sphere_pair_oracle() {
  Rng rng(101);
  double worst = 0.0, worst_great = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double r0 = rng.uniform(0.5, 1.0);
    const double r1 = k % 4 == 0 ? r0 : rng.uniform(0.5, 1.0);
    PairDescriptor d;
    d.f0 = make_ellipsoid_model(Vec3::Constant(r0), 1.2, 1.5);
    d.f1 = make_ellipsoid_model(Vec3::Constant(r1), 1.2, 1.5);
    d.v0 = rng.unit_vector();
    d.v1 = any_perpendicular(d.v0);
    d.t = rng.uniform(0.5, 5.0);
    const double c = (r0 - r1) / (r0 + r1 + d.t);
    for (const auto& s : trace_preseam(d).samples) {
      worst = std::max(worst, std::abs(s.point.dot(d.v0) - c));
      if (r0 == r1) worst_great = std::max(worst_great, std::abs(s.point.dot(d.v0)));
    }
  }
  return {worst <= 1e-8 && worst_great <= 1e-9,
          "max |s.v0 - (r0-r1)/d| = " + fmt("%.2e", worst) + ", congruent max |s.v0| = " + fmt("%.2e", worst_great)};
}

// 2 -------------------------------------------------------------------------
Outcome characterization_residual() {
  Rng rng(202);
  double res = 0.0, orth_s = 0.0, orth_q = 0.0, rate = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto d = random_pair(rng);
    const auto pair = place_pair(d);
    const auto basis = d.basis();
    for (const auto& s : trace_preseam(d).samples) {
      const Vec3 q = q_vector(pair, s.point);
      res = std::max(res, std::abs(s.point.dot(q)));
      const Vec3 t = s.tangent / s.tangent.norm();
      orth_s = std::max(orth_s, std::abs(t.dot(s.point)));
      orth_q = std::max(orth_q, std::abs(t.dot(q.normalized())));
      const Vec3 c = basis.coords(s.point), dc = basis.coords(s.tangent);
      rate = std::max(rate, std::abs(c.y() * dc.z() - c.z() * dc.y() - (c.y() * c.y() + c.z() * c.z())));
    }
  }
  return {res <= 1e-10 && orth_s <= 1e-8 && orth_q <= 1e-8 && rate <= 1e-8,
          "max |s.q| = " + fmt("%.2e", res) + ", tangent.s = " + fmt("%.2e", orth_s) + ", tangent.q = " +
              fmt("%.2e", orth_q) + ", rate residual = " + fmt("%.2e", rate)};
}

// 3 -------------------------------------------------------------------------
Outcome derivative_oracle() {
  Rng rng(303);
  const double h = 1e-4;
  std::size_t good = 0, total = 0;
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto d = random_pair(rng);
    const auto pair = place_pair(d);
    const auto basis = d.basis();
    for (const auto& s : trace_preseam(d).samples) {
      const Vec3 fd = (preseam_point(pair, basis, s.phi + h).s - preseam_point(pair, basis, s.phi - h).s) / (2 * h);
      const double rel = (fd - s.tangent).norm() / s.tangent.norm();
      worst = std::max(worst, rel);
      ++total;
      if (rel < 1e-5) ++good;
    }
  }
  const double frac = static_cast<double>(good) / static_cast<double>(total);
  return {frac >= 0.99, fmt("%.4f", frac) + " of " + std::to_string(total) + " samples within 1e-5 (worst " +
                            fmt("%.2e", worst) + ")"};
}

// 4 -------------------------------------------------------------------------
Outcome support_oracle() {
  Rng rng(404);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Body b{random_ellipsoid(rng), rng.uniform(0.0, 5.0) * rng.unit_vector()};
    const Vec3 w = rng.unit_vector();
    const Mat3 Minv = b.model.M.inverse();
    const Vec3 closed = Minv * w / std::sqrt(w.dot(Minv * w)) + b.translation;
    worst = std::max(worst, (support_point(b, w).point - closed).norm());
  }
  return {worst <= 1e-10, "max |newton - closed form| = " + fmt("%.2e", worst) + " over 1000 directions"};
}

// Arrangements shared by criteria 5 and 6.
struct Suite {
  std::vector<std::pair<std::string, Arrangement>> items;
};

Suite build_suite() {
  Suite s;
  using namespace fixtures;
  s.items.push_back({"overlap pair", build_arrangement(overlap_pair())});
  s.items.push_back({"crossway pair", build_arrangement(crossway_pair())});
  s.items.push_back({"cap triangle", build_arrangement(cap_triangle())});
  s.items.push_back({"octants", build_arrangement(octants())});
  s.items.push_back({"banded cap", build_arrangement(banded_cap({-0.25, 0.25}))});
  for (double r : {0.2, 0.9, 1.4}) {
    s.items.push_back({"single cap " + fmt("%.1f", r), build_arrangement({cap(Vec3(0.3, -0.2, 1), r, 1)})});
  }
  AnalyzeOptions opts;
  opts.validation_samples = 0;
  FamilyParams sph;
  sph.spheres = true;
  for (const auto& [fam, seed] : {std::pair{FamilyParams{}, 3}, std::pair{sph, 4}}) {
    const Scene scene = random_scene(6, fam, static_cast<std::uint64_t>(seed));
    for (std::size_t i = 0; i < scene.size(); ++i) {
      s.items.push_back({scene.name + " body " + std::to_string(i), analyze_body_full(scene, i, opts).arrangement});
    }
  }
  return s;
}

// 5 -------------------------------------------------------------------------
Outcome area_conservation(const Suite& suite) {
  double worst_total = 0.0, worst_cap = 0.0, worst_octant = 0.0;
  for (const auto& [name, arr] : suite.items) {
    worst_total = std::max(worst_total, std::abs(arr.total_area() - kFourPi));
    if (name == "octants") {
      for (const auto& f : arr.faces) worst_octant = std::max(worst_octant, std::abs(f.area - kPi / 2));
    }
    if (name.rfind("single cap ", 0) == 0) {
      const double theta = arr.discs[0].synthetic->base_latitude;
      for (const auto& f : arr.faces) {
        if (!f.cover.empty()) worst_cap = std::max(worst_cap, std::abs(f.area - kTwoPi * (1 - std::sin(theta))));
      }
    }
  }
  // Hidden caps of sphere pairs against the closed form.
  Rng rng(505);
  for (int k = 0; k < 5; ++k) {
    const double ri = rng.uniform(0.8, 1.2), rj = rng.uniform(0.8, 1.2);
    const Vec3 a = rng.uniform(2.5, 5.0) * rng.unit_vector();
    Scene sc;
    sc.models = {{"a", make_ellipsoid_model(Vec3::Constant(ri), 1.2, 1.5)},
                 {"b", make_ellipsoid_model(Vec3::Constant(rj), 1.2, 1.5)}};
    sc.bodies = {{0, Vec3::Zero()}, {1, a}};
    AnalyzeOptions opts;
    opts.validation_samples = 0;
    const auto r = analyze_body(sc, 0, opts);
    worst_cap = std::max(worst_cap, std::abs(r.hidden_area - kTwoPi * (1 - (ri - rj) / a.norm())));
  }
  return {worst_total <= 1e-6 && worst_cap <= 1e-6 && worst_octant <= 1e-9,
          std::to_string(suite.items.size()) + " arrangements: max |sum - 4pi| = " + fmt("%.2e", worst_total) +
              ", cap faces " + fmt("%.2e", worst_cap) + ", octant faces " + fmt("%.2e", worst_octant)};
}

// 6 -------------------------------------------------------------------------
Outcome classification(const Suite& suite) {
  bool ok = true;
  std::string why;
  const auto kinds = [](const Arrangement& arr) {
    std::vector<ComponentKind> out;
    for (const auto& c : all_components(arr)) out.push_back(c.kind);
    return out;
  };
  const auto& overlap = suite.items[0].second;
  const auto& crossway = suite.items[1].second;
  if (overlap.vertices.size() != 2 || kinds(overlap) != std::vector{ComponentKind::overlap}) {
    ok = false;
    why += " overlap fixture misclassified;";
  }
  if (crossway.vertices.size() != 4 || kinds(crossway) != std::vector{ComponentKind::crossway}) {
    ok = false;
    why += " crossway fixture misclassified;";
  }
  int components = 0, connected = 0;
  for (const auto& [name, arr] : suite.items) {
    for (const auto& c : all_components(arr)) {
      ++components;
      if (c.edge_count % 2 != 0) {
        ok = false;
        why += " odd edge count in " + name + ";";
      }
    }
    if (arr.component_count == 1 && arr.loop_count() == 0) {
      ++connected;
      if (arr.euler_characteristic() != 2) {
        ok = false;
        why += " Euler " + std::to_string(arr.euler_characteristic()) + " in " + name + ";";
      }
    }
  }
  return {ok, std::to_string(components) + " components with even edge counts, Euler 2 on " +
                  std::to_string(connected) + " connected arrangements" + why};
}

// 7 -------------------------------------------------------------------------
Outcome ds_oracle() {
  bool ok = true;
  for (int n = 1; n <= 6; ++n) ok = ok && lambda_brute(n, 1) == n && lambda_brute(n, 2) == 2 * n - 1;
  const bool lambdas = ok;
  AnalyzeOptions opts;
  opts.validation_samples = 0;
  int sequences = 0, max_alt = 0, max_order = 0;
  for (int k = 0; k < 20; ++k) {
    FamilyParams fam;
    fam.spheres = k % 2 == 1;
    const std::size_t n = 3 + static_cast<std::size_t>(k % 10);
    const Scene scene = random_scene(n, fam, 700 + static_cast<std::uint64_t>(k));
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = analyze_body(scene, i, opts);
      const int order = r.max_pair_crossings + 1;
      max_order = std::max(max_order, order);
      for (const auto& s : r.hole_sequences) {
        ++sequences;
        const LabelSequence seq{s, true};
        max_alt = std::max(max_alt, max_alternation(seq));
        if (!is_davenport_schinzel(seq, order)) ok = false;
      }
    }
  }
  return {ok, std::string(lambdas ? "lambda_1, lambda_2 exact for n <= 6; " : "lambda mismatch; ") +
                  std::to_string(sequences) + " hole sequences from 20 scenes, max alternation " +
                  std::to_string(max_alt) + ", max measured order " + std::to_string(max_order)};
}

// 8 -------------------------------------------------------------------------
Outcome scaling() {
  ScalingConfig cfg;
  cfg.ns = {4, 8, 16, 32};
  cfg.trials = 3;
  cfg.seed = 808;
  cfg.timing = false;
  cfg.analyze.validation_samples = 0;
  cfg.family.spheres = true;
  const auto spheres = scaling_experiment(cfg);
  cfg.family.spheres = false;
  const auto ellipsoids = scaling_experiment(cfg);
  const bool ok = spheres.feature_slope >= 0.8 && spheres.feature_slope <= 1.3 && ellipsoids.hub_slope <= 1.3;
  return {ok, "sphere feature slope " + fmt("%.3f", spheres.feature_slope) + ", ellipsoid hub slope " +
                  fmt("%.3f", ellipsoids.hub_slope) + " (ellipsoid feature slope " +
                  fmt("%.3f", ellipsoids.feature_slope) + ")"};
}

// 9 -------------------------------------------------------------------------
Outcome continuity() {
  Rng rng(909);
  bool ok = true;
  std::string rows;
  for (int k = 0; k < 5; ++k) {
    const auto d = random_pair(rng, 0.85, 1.1);
    ProbeOptions opts;
    opts.seed = 9000 + static_cast<std::uint64_t>(k);
    const auto r = continuity_probe(d, {0.1, 0.05, 0.025, 0.0125}, opts);
    for (std::size_t m = 1; m < r.size(); ++m) {
      if (r[m].sup_distance > 1.1 * r[m - 1].sup_distance) ok = false;
      if (r[m].sup_tangent_distance > 1.1 * r[m - 1].sup_tangent_distance) ok = false;
    }
    rows += " " + fmt("%.2e", r.front().sup_distance) + "->" + fmt("%.2e", r.back().sup_distance);
  }
  return {ok, "sup distance by descriptor:" + rows};
}

// 10 ------------------------------------------------------------------------
std::vector<std::string> write_suite(const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<std::string> files;
  const auto put = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name, std::ios::binary) << text;
    files.push_back(name);
  };
  AnalyzeOptions opts;
  opts.seed = 17;
  opts.validation_samples = 50;
  FamilyParams sph;
  sph.spheres = true;
  const Scene a = random_scene(6, FamilyParams{}, 10);
  const Scene b = random_scene(5, sph, 11);
  put("scene_a.json", scene_to_json(a).dump(2));
  put("report_a.json", to_json(hull_feature_report(a, opts)).dump(2));
  put("report_b.json", to_json(hull_feature_report(b, opts)).dump(2));
  const auto p = perturb_general_position(fixtures::crossway_pair(), 5);
  put("arrangement.json", arrangement_report(build_arrangement(p.discs, p.crossings)).dump(2));
  std::ostringstream curve;
  write_curve_tsv(trace_preseam(recover_descriptor(a.body(0), a.body(1))), curve);
  put("curve.tsv", curve.str());
  ScalingConfig cfg;
  cfg.ns = {3, 6};
  cfg.trials = 2;
  cfg.seed = 12;
  cfg.timing = false;
  cfg.analyze = opts;
  put("experiment.tsv", scaling_table(scaling_experiment(cfg)));
  return files;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const fs::path& workdir) {
  const auto files = write_suite(workdir / "run1");
  write_suite(workdir / "run2");
  std::string differing;
  for (const auto& f : files) {
    if (slurp(workdir / "run1" / f) != slurp(workdir / "run2" / f)) differing += " " + f;
  }
  return {differing.empty(), differing.empty() ? std::to_string(files.size()) + " report files byte-identical"
                                               : "differing:" + differing};
}

}  // namespace

int main(int argc, char** argv) {
  fs::path workdir = "acceptance_work";
  for (int k = 1; k + 1 < argc; ++k) {
    if (std::string(argv[k]) == "--workdir") workdir = argv[k + 1];
  }

  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0: none
    std::function<Outcome()> run;
  };
  std::optional<Suite> suite;
  const auto shared = [&]() -> const Suite& {
    if (!suite) suite = build_suite();
    return *suite;
  };
  const std::vector<Criterion> criteria{
      {1, "sphere-pair oracle", 10.0, sphere_pair_oracle},
      {2, "characterization residual", 0.0, characterization_residual},
      {3, "derivative oracle", 0.0, derivative_oracle},
      {4, "support oracle", 0.0, support_oracle},
      {5, "area conservation", 0.0, [&] { return area_conservation(shared()); }},
      {6, "combinatorial classification", 0.0, [&] { return classification(shared()); }},
      {7, "DS oracle", 60.0, ds_oracle},
      {8, "scaling", 300.0, scaling},
      {9, "continuity probe", 0.0, continuity},
      {10, "determinism", 0.0, [&] { return determinism(workdir); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", c.budget_s) + " s budget";
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
              << fmt("%.1f", secs) << " s]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}

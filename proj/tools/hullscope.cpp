#include "hullscope/hullscope.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <memory>

using namespace hullscope;

namespace {

struct Common {
  std::uint64_t seed = 1;
  std::string out = "-";
  double tol_angle = kDefaultAngleEpsilon;
  double tol_turn = 0.05;
  double tol_triple = 1e-9;

  TracePolicy trace() const {
    TracePolicy p;
    p.max_turn = tol_turn;
    return p;
  }
  PerturbOptions perturb() const {
    PerturbOptions p;
    p.eps_angle = tol_angle;
    p.triple_tolerance = tol_triple;
    return p;
  }
  AnalyzeOptions analyze() const {
    AnalyzeOptions a;
    a.trace = trace();
    a.perturb = perturb();
    a.seed = seed;
    return a;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "random seed")->capture_default_str();
  app->add_option("--out", c.out, "output file ('-' for stdout)")->capture_default_str();
  app->add_option("--tol-angle", c.tol_angle, "smallest accepted crossing angle (rad)")->capture_default_str();
  app->add_option("--tol-turn", c.tol_turn, "tracer refinement threshold on tangent turn (rad)")->capture_default_str();
  app->add_option("--tol-triple", c.tol_triple, "distance below which crossings count as a triple point")
      ->capture_default_str();
}

/// Runs body with a stream bound to --out.
template <class F>
void with_output(const Common& c, F&& body) {
  if (c.out == "-") {
    body(std::cout);
    return;
  }
  std::ofstream os(c.out);
  if (!os) throw Error(ErrorCode::parse_error, "cannot write " + c.out);
  body(os);
}

std::vector<SphericalDisc> random_fixture(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SphericalDisc> discs;
  for (int k = 0; k < count; ++k) {
    const Vec3 centre = rng.unit_vector();
    const double radius = rng.uniform(0.3, 0.7);
    const std::vector<FourierTerm> terms{{3, rng.uniform(0.0, 0.05), rng.uniform(0.0, kTwoPi)}};
    discs.push_back(synthetic_disc(0.5 * kPi - radius, terms, Quat::FromTwoVectors(Vec3::UnitX(), centre), k + 1));
  }
  return discs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex hulls of disjoint smooth bodies via hidden-disc unions on the sphere"};
  app.require_subcommand(1);

  Common c_trace, c_discs, c_arrange, c_ds, c_analyze, c_exp;

  auto* trace = app.add_subcommand("trace", "trace the pre-seam of a body pair as a TSV table");
  std::string trace_scene;
  std::vector<int> pair_index{0, 1};
  int trace_samples = 64;
  trace->add_option("--scene", trace_scene, "scene file")->required();
  trace->add_option("--pair", pair_index, "body indices i j (hidden disc of i w.r.t. j)")->expected(2);
  trace->add_option("--samples", trace_samples, "initial uniform samples")->capture_default_str();
  add_common(trace, c_trace);

  auto* discs = app.add_subcommand("discs", "generate disc fixtures and dump pairwise crossings");
  std::string discs_fixture, discs_write;
  int discs_generate = 0;
  bool discs_perturb = false;
  discs->add_option("--fixture", discs_fixture, "disc fixture file to read");
  discs->add_option("--generate", discs_generate, "generate this many random synthetic discs");
  discs->add_option("--write-fixture", discs_write, "write the discs as a fixture file");
  discs->add_flag("--perturb", discs_perturb, "rotate discs into general position first");
  add_common(discs, c_discs);

  auto* arrange = app.add_subcommand("arrange", "build the arrangement of a disc family and report it");
  std::string arrange_fixture, arrange_scene;
  int arrange_body = 0;
  arrange->add_option("--fixture", arrange_fixture, "disc fixture file");
  arrange->add_option("--scene", arrange_scene, "scene file (uses the hidden discs of --body)");
  arrange->add_option("--body", arrange_body, "body index")->capture_default_str();
  add_common(arrange, c_arrange);

  auto* ds = app.add_subcommand("ds", "validate label sequences or tabulate lambda_s(n)");
  std::string ds_file;
  int ds_order = 2, ds_max_n = 6, ds_max_s = 4;
  bool ds_table = false;
  ds->add_option("--file", ds_file, "sequence file");
  ds->add_option("--order", ds_order, "order s")->capture_default_str();
  ds->add_flag("--table", ds_table, "tabulate lambda_s(n)");
  ds->add_option("--max-n", ds_max_n, "largest n in the table")->capture_default_str();
  ds->add_option("--max-s", ds_max_s, "largest s in the table")->capture_default_str();
  add_common(ds, c_ds);

  auto* analyze = app.add_subcommand("analyze", "per-body hidden-disc analysis and hull feature report");
  std::string analyze_scene;
  int analyze_body = -1;
  int analyze_validation = 200;
  analyze->add_option("--scene", analyze_scene, "scene file")->required();
  analyze->add_option("--body", analyze_body, "analyze one body only");
  analyze->add_option("--validation-samples", analyze_validation, "hidden-side checks per body")->capture_default_str();
  add_common(analyze, c_analyze);

  auto* experiment = app.add_subcommand("experiment", "random-scene scaling experiment");
  std::vector<std::size_t> exp_ns{4, 8, 16, 32};
  int exp_trials = 3;
  std::string exp_family = "spheres";
  bool exp_no_timing = false;
  experiment->add_option("--ns", exp_ns, "ascending body counts")->delimiter(',')->capture_default_str();
  experiment->add_option("--trials", exp_trials, "trials per n")->capture_default_str();
  experiment->add_option("--family", exp_family, "spheres or ellipsoids")
      ->check(CLI::IsMember({"spheres", "ellipsoids"}))
      ->capture_default_str();
  experiment->add_flag("--no-timing", exp_no_timing, "report wall time as 0 (byte-reproducible tables)");
  add_common(experiment, c_exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*trace) {
      const Scene scene = load_scene(trace_scene);
      const auto i = static_cast<std::size_t>(pair_index[0]), j = static_cast<std::size_t>(pair_index[1]);
      if (i == j || i >= scene.size() || j >= scene.size()) {
        throw Error(ErrorCode::parse_error, "pair indices out of range");
      }
      auto policy = c_trace.trace();
      policy.initial_samples = trace_samples;
      PreseamCurve curve;
      try {
        const Body a = scene.body(i), b = scene.body(j);
        const auto sep = separation(a, b);
        const PlacedPair pair{Body{a.model, Vec3::Zero()}, Body{b.model, b.translation - a.translation}};
        curve = trace_pair(pair, Basis::from(sep.direction, any_perpendicular(sep.direction)), policy);
      } catch (const Error& e) {
        throw Error(e.code(), detail::pair_tag(i, j) + ": " + e.detail());
      }
      with_output(c_trace, [&](std::ostream& os) { write_curve_tsv(curve, os); });
    } else if (*discs) {
      std::vector<SphericalDisc> family;
      if (!discs_fixture.empty()) {
        family = load_disc_fixtures(discs_fixture);
      } else if (discs_generate > 0) {
        family = random_fixture(discs_generate, c_discs.seed);
      } else {
        throw Error(ErrorCode::parse_error, "need --fixture or --generate");
      }
      if (!discs_write.empty()) {
        std::ofstream(discs_write) << disc_fixtures_to_json(family).dump(2) << '\n';
      }
      CrossingMap xs;
      if (discs_perturb) {
        auto p = perturb_general_position(family, c_discs.seed, c_discs.perturb());
        family = std::move(p.discs);
        xs = std::move(p.crossings);
      } else {
        xs = all_crossings(family, c_discs.tol_angle);
      }
      with_output(c_discs, [&](std::ostream& os) { write_crossings_tsv(family, xs, os); });
    } else if (*arrange) {
      Arrangement arr;
      if (!arrange_fixture.empty()) {
        const auto family = load_disc_fixtures(arrange_fixture);
        auto p = perturb_general_position(family, c_arrange.seed, c_arrange.perturb());
        arr = build_arrangement(p.discs, p.crossings);
      } else if (!arrange_scene.empty()) {
        const Scene scene = load_scene(arrange_scene);
        if (arrange_body < 0 || static_cast<std::size_t>(arrange_body) >= scene.size()) {
          throw Error(ErrorCode::parse_error, "body index out of range");
        }
        auto opts = c_arrange.analyze();
        opts.validation_samples = 0;
        arr = analyze_body_full(scene, static_cast<std::size_t>(arrange_body), opts).arrangement;
      } else {
        throw Error(ErrorCode::parse_error, "need --fixture or --scene");
      }
      with_output(c_arrange, [&](std::ostream& os) { os << arrangement_report(arr).dump(2) << '\n'; });
    } else if (*ds) {
      if (ds_table) {
        with_output(c_ds, [&](std::ostream& os) {
          os << "s\tn\tlambda\tclosed\tclosed_exact\n";
          for (int s = 1; s <= ds_max_s; ++s) {
            for (int n = 1; n <= ds_max_n; ++n) {
              const auto cl = lambda_closed(n, s);
              os << s << '\t' << n << '\t' << lambda_brute(n, s) << '\t' << cl.value << '\t'
                 << (cl.exact ? "exact" : "bound") << '\n';
            }
          }
        });
      } else {
        if (ds_file.empty()) throw Error(ErrorCode::parse_error, "need --file or --table");
        std::ifstream in(ds_file);
        if (!in) throw Error(ErrorCode::parse_error, "cannot open " + ds_file);
        const auto seqs = read_sequences(in);
        bool all_ok = true;
        with_output(c_ds, [&](std::ostream& os) {
          os << "index\tlength\tcyclic\tmax_alternation\tds\n";
          for (std::size_t k = 0; k < seqs.size(); ++k) {
            const bool ok = is_davenport_schinzel(seqs[k], ds_order);
            all_ok = all_ok && ok;
            os << k << '\t' << seqs[k].symbols.size() << '\t' << (seqs[k].cyclic ? 1 : 0) << '\t'
               << max_alternation(seqs[k]) << '\t' << (ok ? "yes" : "no") << '\n';
          }
        });
        if (!all_ok) return 2;
      }
    } else if (*analyze) {
      const Scene scene = load_scene(analyze_scene);
      auto opts = c_analyze.analyze();
      opts.validation_samples = analyze_validation;
      nlohmann::json doc;
      if (analyze_body >= 0) {
        if (static_cast<std::size_t>(analyze_body) >= scene.size()) {
          throw Error(ErrorCode::parse_error, "body index out of range");
        }
        doc = to_json(hullscope::analyze_body(scene, static_cast<std::size_t>(analyze_body), opts));
      } else {
        doc = to_json(hull_feature_report(scene, opts));
      }
      with_output(c_analyze, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    } else if (*experiment) {
      ScalingConfig cfg;
      cfg.ns = exp_ns;
      cfg.trials = exp_trials;
      cfg.seed = c_exp.seed;
      cfg.family.spheres = exp_family == "spheres";
      cfg.analyze = c_exp.analyze();
      cfg.analyze.validation_samples = 0;
      cfg.timing = !exp_no_timing;
      const auto result = scaling_experiment(cfg);
      with_output(c_exp, [&](std::ostream& os) { os << scaling_table(result); });
    }
  } catch (const Error& e) {
    std::cerr << "hullscope: " << e.what() << '\n';
    return is_validation_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "hullscope: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

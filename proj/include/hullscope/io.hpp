#pragma once

// Text formats: curve dumps, disc fixture files, arrangement reports and
// label-sequence files.

#include "hullscope/arrangement.hpp"
#include "hullscope/discs.hpp"
#include "hullscope/ds.hpp"
#include "hullscope/error.hpp"
#include "hullscope/preseam.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hullscope {

namespace detail {

inline std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Curves

inline void write_curve_tsv(const PreseamCurve& curve, std::ostream& os) {
  os << "phi\tsx\tsy\tsz\ttx\tty\ttz\tresidual\n";
  for (const auto& s : curve.samples) {
    os << detail::g17(s.phi);
    for (int c = 0; c < 3; ++c) os << '\t' << detail::g17(s.point[c]);
    for (int c = 0; c < 3; ++c) os << '\t' << detail::g17(s.tangent[c]);
    os << '\t' << detail::g17(s.residual) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Disc fixtures

inline constexpr const char* kDiscSchema = "hullscope.discs/1";

inline nlohmann::json disc_fixtures_to_json(const std::vector<SphericalDisc>& discs) {
  nlohmann::json doc;
  doc["schema"] = kDiscSchema;
  doc["discs"] = nlohmann::json::array();
  for (const auto& d : discs) {
    if (!d.synthetic) throw Error(ErrorCode::degenerate_input, "only synthetic discs have fixture records");
    const auto& p = *d.synthetic;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : p.terms) terms.push_back({{"k", t.k}, {"amplitude", t.amplitude}, {"phase", t.phase}});
    const auto& q = p.rotation;
    doc["discs"].push_back({{"label", d.label},
                            {"base_latitude", p.base_latitude},
                            {"terms", terms},
                            {"rotation", {q.w(), q.x(), q.y(), q.z()}},
                            {"samples", d.boundary.size()}});
  }
  return doc;
}

inline std::vector<SphericalDisc> disc_fixtures_from_json(const nlohmann::json& doc) {
  std::vector<SphericalDisc> discs;
  try {
    if (doc.at("schema").get<std::string>() != kDiscSchema) throw Error(ErrorCode::parse_error, "unsupported schema");
    for (const auto& r : doc.at("discs")) {
      std::vector<FourierTerm> terms;
      for (const auto& t : r.value("terms", nlohmann::json::array())) {
        terms.push_back({t.at("k").get<int>(), t.at("amplitude").get<double>(), t.value("phase", 0.0)});
      }
      Quat q = Quat::Identity();
      if (r.contains("rotation")) {
        const auto& a = r.at("rotation");
        q = Quat(a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>(), a.at(3).get<double>());
      }
      discs.push_back(synthetic_disc(r.at("base_latitude").get<double>(), terms, q, r.at("label").get<int>(),
                                     r.value("samples", 256)));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  return discs;
}

inline std::vector<SphericalDisc> load_disc_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, path + ": " + e.what());
  }
  return disc_fixtures_from_json(doc);
}

inline void write_crossings_tsv(const std::vector<SphericalDisc>& discs, const CrossingMap& crossings,
                                std::ostream& os) {
  os << "label_a\tlabel_b\tx\ty\tz\tphi_a\tphi_b\tangle\n";
  for (const auto& [key, xs] : crossings) {
    for (const auto& x : xs) {
      os << discs[key.first].label << '\t' << discs[key.second].label;
      for (int c = 0; c < 3; ++c) os << '\t' << detail::g17(x.position[c]);
      os << '\t' << detail::g17(x.phi[0]) << '\t' << detail::g17(x.phi[1]) << '\t' << detail::g17(x.angle) << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Arrangement report

inline nlohmann::json arrangement_report(const Arrangement& arr) {
  nlohmann::json doc;
  doc["V"] = arr.vertices.size();
  doc["E"] = arr.edges.size();
  doc["F"] = arr.faces.size();
  doc["graph_components"] = arr.component_count;
  doc["loops"] = arr.loop_count();
  doc["total_area"] = arr.total_area();
  const auto labels = [&](const std::vector<int>& idx) {
    std::vector<int> out;
    for (int i : idx) out.push_back(arr.discs[i].label);
    return out;
  };
  doc["faces"] = nlohmann::json::array();
  for (const auto& f : arr.faces) doc["faces"].push_back({{"area", f.area}, {"cover", labels(f.cover)}});

  const auto comps = all_components(arr);
  doc["components"] = nlohmann::json::array();
  for (const auto& c : comps) {
    doc["components"].push_back({{"a", arr.discs[c.i].label},
                                 {"b", arr.discs[c.j].label},
                                 {"kind", to_string(c.kind)},
                                 {"edges", c.edge_count},
                                 {"area", c.area}});
  }
  const auto content = crossing_content(comps);
  doc["crossing_content"] = content.min_area ? nlohmann::json(*content.min_area) : nlohmann::json(nullptr);
  doc["hubs"] = hubs(arr, comps).size();

  int links = 0, coves = 0;
  for (int i = 0; i < static_cast<int>(arr.discs.size()); ++i) {
    const auto lr = links_and_coves(arr, i, comps);
    links += static_cast<int>(lr.links.size());
    coves += static_cast<int>(lr.coves.size());
  }
  doc["links"] = links;
  doc["coves"] = coves;

  doc["holes"] = nlohmann::json::array();
  for (const auto& h : holes(arr)) {
    doc["holes"].push_back({{"area", h.area}, {"sequences", h.sequences}, {"simply_connected", h.simply_connected}});
  }
  doc["disc_hole_incidences"] = disc_hole_incidences(arr);
  const auto ub = union_boundary(arr);
  doc["union_boundary"] = {{"vertices", ub.vertices}, {"edges", ub.edges}};
  return doc;
}

// ---------------------------------------------------------------------------
// Label sequences

/// One sequence per line. Tokens are separated by whitespace; a single token
/// is read one character per symbol. A leading "cyclic:" or "linear:" sets
/// the reading (linear by default); '#' starts a comment.
inline std::vector<LabelSequence> read_sequences(std::istream& in) {
  std::vector<LabelSequence> out;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    LabelSequence seq;
    for (const char* tag : {"cyclic:", "linear:"}) {
      const auto pos = line.find(tag);
      if (pos != std::string::npos) {
        seq.cyclic = tag[0] == 'c';
        line = line.substr(pos + std::string(tag).size());
      }
    }
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() == 1) {
      const std::string word = tokens[0];
      tokens.clear();
      for (char c : word) tokens.emplace_back(1, c);
    }
    std::map<std::string, int> ids;
    for (const auto& t : tokens) {
      const auto it = ids.emplace(t, static_cast<int>(ids.size())).first;
      seq.symbols.push_back(it->second);
    }
    out.push_back(std::move(seq));
  }
  return out;
}

inline void write_sequence(const LabelSequence& seq, std::ostream& os) {
  os << (seq.cyclic ? "cyclic:" : "linear:");
  for (int s : seq.symbols) os << ' ' << s;
  os << '\n';
}

}  // namespace hullscope

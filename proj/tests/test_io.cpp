#include "hullscope/io.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace hullscope;

TEST(CurveDump, RowsRoundTripExactly) {
  PairDescriptor d;
  d.f0 = make_ellipsoid_model(Vec3(1.1, 0.9, 1.0), 1.2, 1.5);
  d.f1 = make_ellipsoid_model(Vec3(0.8, 1.0, 1.2), 1.2, 1.5);
  d.t = 0.7;
  const auto curve = trace_preseam(d);
  std::stringstream ss;
  write_curve_tsv(curve, ss);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "phi\tsx\tsy\tsz\ttx\tty\ttz\tresidual");
  std::size_t rows = 0;
  for (std::string line; std::getline(ss, line); ++rows) {
    std::istringstream ls(line);
    double v[8];
    for (double& x : v) ls >> x;
    const auto& s = curve.samples[rows];
    EXPECT_EQ(v[0], s.phi);
    EXPECT_EQ(Vec3(v[1], v[2], v[3]), s.point);
    EXPECT_EQ(Vec3(v[4], v[5], v[6]), s.tangent);
  }
  EXPECT_EQ(rows, curve.samples.size());
}

TEST(DiscFixtures, RoundTrip) {
  auto discs = fixtures::crossway_pair();
  discs.push_back(fixtures::cap(Vec3(0, 0, 1), 0.4, 7, 128));
  const auto doc = disc_fixtures_to_json(discs);
  const auto back = disc_fixtures_from_json(nlohmann::json::parse(doc.dump()));
  ASSERT_EQ(back.size(), discs.size());
  for (std::size_t k = 0; k < discs.size(); ++k) {
    EXPECT_EQ(back[k].label, discs[k].label);
    ASSERT_EQ(back[k].boundary.size(), discs[k].boundary.size());
    for (std::size_t i = 0; i < discs[k].boundary.size(); ++i) {
      EXPECT_LT((back[k].boundary.point(i) - discs[k].boundary.point(i)).norm(), 1e-15);
    }
  }
}

TEST(DiscFixtures, RejectsBadInput) {
  EXPECT_THROW(disc_fixtures_from_json(nlohmann::json::parse(R"({"schema":"x","discs":[]})")), Error);
  EXPECT_THROW(disc_fixtures_from_json(nlohmann::json::parse(R"({"schema":"hullscope.discs/1","discs":[{}]})")),
               Error);
  try {
    disc_fixtures_from_json(nlohmann::json::parse(
        R"({"schema":"hullscope.discs/1","discs":[{"label":1,"base_latitude":1.4,"terms":[{"k":2,"amplitude":0.3}]}]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_simple);
  }
}

TEST(CrossingDump, OneRowPerCrossing) {
  const auto discs = fixtures::crossway_pair();
  const auto xs = all_crossings(discs);
  std::stringstream ss;
  write_crossings_tsv(discs, xs, ss);
  int rows = -1;
  for (std::string line; std::getline(ss, line);) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(ArrangementReport, Tallies) {
  const auto arr = build_arrangement(fixtures::overlap_pair());
  const auto doc = arrangement_report(arr);
  EXPECT_EQ(doc["V"], 2);
  EXPECT_EQ(doc["E"], 4);
  EXPECT_EQ(doc["F"], 4);
  EXPECT_EQ(doc["components"].size(), 1u);
  EXPECT_EQ(doc["components"][0]["kind"], "overlap");
  EXPECT_EQ(doc["holes"].size(), 1u);
  double area = 0.0;
  for (const auto& f : doc["faces"]) area += f["area"].get<double>();
  EXPECT_NEAR(area, kFourPi, 1e-6);
}

TEST(SequenceFile, Parsing) {
  std::istringstream in(
      "# comment\n"
      "abcacb\n"
      "cyclic: 5 7 5 9\n"
      "\n"
      "linear: x y x # trailing\n");
  const auto seqs = read_sequences(in);
  ASSERT_EQ(seqs.size(), 3u);
  EXPECT_EQ(seqs[0].symbols, (std::vector<int>{0, 1, 2, 0, 2, 1}));
  EXPECT_FALSE(seqs[0].cyclic);
  EXPECT_EQ(seqs[1].symbols, (std::vector<int>{0, 1, 0, 2}));
  EXPECT_TRUE(seqs[1].cyclic);
  EXPECT_EQ(seqs[2].symbols, (std::vector<int>{0, 1, 0}));
  std::stringstream out;
  write_sequence(seqs[1], out);
  EXPECT_EQ(out.str(), "cyclic: 0 1 0 2\n");
}

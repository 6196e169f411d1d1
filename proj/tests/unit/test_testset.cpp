#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "geodivp/angles.hpp"
#include "geodivp/errors.hpp"
#include "geodivp/testset.hpp"

using namespace geodivp;

namespace {

const Ellipsoid kWgs84 = Ellipsoid::wgs84();

TestRecord exact_record(std::uint64_t id, GeodeticCoord start, double alpha0, double s) {
  const DirectResult r = solve_direct(kWgs84, {start, alpha0, s, CoordinateSystem::cartesian, 1000});
  return {id, start.lat, start.lon, alpha0, r.end_geodetic.lat, r.end_geodetic.lon, r.alpha1, s};
}

RecordMetrics synthetic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // coarse values so ties actually occur
  const auto q = [&](double scale) { return std::round(u(rng) * 8) * scale; };
  return {q(1e-6), q(1e-3) - 4e-3, q(1e-8) - 4e-8, q(1e-8), q(1e-14)};
}

}  // namespace

TEST(ParseTestLine, SevenAndTenColumnsAgree) {
  const std::string ten =
      "12.092781970116 0 152.538072648702 -47.83872682672747 152.19622286788578 42.11821312315922 "
      "15278495.1278459 137.50828701906832 4327598.351301021 -78112358269368.03";
  const std::string seven =
      "12.092781970116 0 152.538072648702 -47.83872682672747 152.19622286788578 42.11821312315922 "
      "15278495.1278459";
  const TestRecord a = parse_test_line(ten, 7);
  const TestRecord b = parse_test_line(seven, 7);
  EXPECT_EQ(a.id, 7u);
  EXPECT_EQ(a.phi0, 12.092781970116);
  EXPECT_EQ(a.s01, 15278495.1278459);
  EXPECT_EQ(a.alpha1_ref, b.alpha1_ref);
  EXPECT_EQ(a.lam1_ref, b.lam1_ref);
  EXPECT_EQ(parse_test_line("\t+1 2 3 4 5 6 7\r", 1).phi0, 1.0);
}

TEST(ParseTestLine, ErrorsCarryLineAndColumn) {
  try {
    parse_test_line("10 20 thirty 40 50 60 70", 12);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 12u);
    EXPECT_EQ(e.column(), 3u);
  }
  try {
    parse_test_line("1 2 3 4 5", 4);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 6u);
  }
  EXPECT_THROW(parse_test_line("1 2 3 inf 5 6 7", 1), ParseError);
  EXPECT_THROW(parse_test_line("1 2 3 4 5 6 7x", 1), ParseError);
}

TEST(ClassifyGroup, RangeBoundaries) {
  EXPECT_EQ(classify_group(1).value(), 1);
  EXPECT_EQ(classify_group(100000).value(), 1);
  EXPECT_EQ(classify_group(100001).value(), 2);
  EXPECT_EQ(classify_group(150001).value(), 3);
  EXPECT_EQ(classify_group(450000).value(), 8);
  EXPECT_EQ(classify_group(450001).value(), 9);
  EXPECT_EQ(classify_group(500000).value(), 9);
  EXPECT_EQ(classify_group(500001).value(), 9);
  EXPECT_FALSE(is_published_id(500001));
  EXPECT_THROW(classify_group(0), DomainError);
  EXPECT_THROW(GroupId(10), DomainError);
}

TEST(ConformanceWarnings, FlagsOutOfRangeFields) {
  EXPECT_TRUE(conformance_warnings({1, 10, 0, 20, 5, 5, 30, 1e6}).empty());
  EXPECT_EQ(conformance_warnings({1, -10, 0, 200, 5, 5, 30, 1e6}).size(), 2u);
  EXPECT_EQ(conformance_warnings({600000, 10, 0, 20, 5, 5, 30, 1e6}).size(), 1u);
}

TEST(LoadTestset, IdsSamplingBlankLinesAndCrlf) {
  std::istringstream in("1 2 3 4 5 6 7\r\n\n8 9 10 11 12 13 14\r\n15 16 17 18 19 20 21\n");
  const auto all = load_testset(in);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].id, 1u);
  EXPECT_EQ(all[1].id, 3u);
  EXPECT_EQ(all[1].s01, 14.0);

  std::istringstream in2("1 2 3 4 5 6 7\n8 9 10 11 12 13 14\n15 16 17 18 19 20 21\n22 23 24 25 26 27 28\n");
  const auto sampled = load_testset(in2, {.sample_every = 2, .first_id = 1, .id_stride = 1});
  ASSERT_EQ(sampled.size(), 2u);
  EXPECT_EQ(sampled[0].id, 2u);
  EXPECT_EQ(sampled[1].id, 4u);

  std::istringstream in3("1 2 3 4 5 6 7\n8 9 10 11 12 13 14\n");
  const auto strided = load_testset(in3, {.first_id = 51, .id_stride = 50});
  EXPECT_EQ(strided[1].id, 101u);

  std::istringstream bad("1 2 3 4 5 6 7\n1 2 x 4 5 6 7\n");
  try {
    load_testset(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(load_testset_file("/nonexistent/geodtest.dat"), Error);
}

TEST(EvaluateRecord, SelfComparisonIsExact) {
  const TestRecord rec = exact_record(5, {33.0, 0.0}, 71.0, 9e6);
  const RecordMetrics m = evaluate_record(kWgs84, rec, 1000, CoordinateSystem::cartesian);
  EXPECT_LE(m.delta_r1, 1e-8);
  EXPECT_LE(std::abs(m.delta_alpha1), 1e-9);
  EXPECT_LE(std::abs(m.delta_c1), 1e-8);
}

TEST(EvaluateRecord, EquatorialRecordMatchesClosedForm) {
  const double s = 6378137.0 * std::numbers::pi / 3;
  const TestRecord rec{1, 0.0, 0.0, 90.0, 0.0, 60.0, 90.0, s};
  const RecordMetrics m = evaluate_record(kWgs84, rec, 1000, CoordinateSystem::cartesian);
  EXPECT_LE(m.delta_r1, 1e-6);
  EXPECT_LE(std::abs(m.delta_alpha1), 1e-6);
}

TEST(EvaluateRecord, AzimuthDifferenceUsesTheShortWay) {
  // A meridional record whose reference azimuth sits across the 0/360 cut.
  const TestRecord rec = exact_record(2, {10.0, 0.0}, 0.0, 1e6);
  TestRecord shifted = rec;
  shifted.alpha1_ref = 359.9999;
  const RecordMetrics m = evaluate_record(kWgs84, shifted, 1000, CoordinateSystem::cartesian);
  EXPECT_NEAR(m.delta_alpha1, 0.36, 1e-6);
  EXPECT_NEAR(angle_diff(179.9999, 180.0001) * kArcsecPerDegree, -0.72, 1e-9);
}

TEST(EvaluateRecord, GeodeticPoleGuardIsTagged) {
  const TestRecord rec{77, 89.95, 0.0, 10.0, 0.0, 0.0, 0.0, 1e5};
  try {
    evaluate_record(kWgs84, rec, 100, CoordinateSystem::geodetic);
    FAIL();
  } catch (const RecordError& e) {
    EXPECT_EQ(e.id(), 77u);
    EXPECT_TRUE(e.pole_guard());
  }
  EXPECT_NO_THROW(evaluate_record(kWgs84, rec, 100, CoordinateSystem::cartesian));
}

TEST(TrackedMax, TiesGoToTheSmallerId) {
  TrackedMax t;
  t.offer(1.0, 9);
  t.offer(1.0, 4);
  t.offer(0.5, 1);
  EXPECT_EQ(t.value, 1.0);
  EXPECT_EQ(t.id, 4u);
}

TEST(Aggregator, EmptyAndSingle) {
  const Aggregator empty;
  EXPECT_TRUE(empty.rows().empty());
  EXPECT_EQ(empty.overall().count, 0u);

  Aggregator one;
  one.add(GroupId(3), 150010, {1e-6, -2.0, -3e-8, 4e-8, 5e-15});
  ASSERT_EQ(one.rows().size(), 1u);
  const GroupStats o = one.overall();
  EXPECT_EQ(o.count, 1u);
  EXPECT_EQ(o.max_abs_delta_alpha1.value, 2.0);
  EXPECT_EQ(o.max_abs_delta_c1.value, 3e-8);
  EXPECT_EQ(o.max_max_abs_s.id, 150010u);
}

TEST(Aggregator, MergeEqualsSinglePassAndIgnoresOrder) {
  std::mt19937_64 rng(17);
  std::vector<std::pair<std::uint64_t, RecordMetrics>> recs;
  for (std::uint64_t i = 0; i < 100; ++i) recs.emplace_back(1 + i * 5003, synthetic(rng));

  Aggregator single;
  for (const auto& [id, m] : recs) single.add(classify_group(id), id, m);

  Aggregator left, right;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    (i % 3 == 0 ? left : right).add(classify_group(recs[i].first), recs[i].first, recs[i].second);
  }
  right.add_skipped(GroupId(4));
  single.add_skipped(GroupId(4));
  left.merge(right);
  EXPECT_TRUE(left == single);

  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(recs.begin(), recs.end(), rng);
    Aggregator perm;
    for (const auto& [id, m] : recs) perm.add(classify_group(id), id, m);
    perm.add_skipped(GroupId(4));
    EXPECT_TRUE(perm == single);
  }
  EXPECT_EQ(single.overall().count, 100u);
  EXPECT_EQ(single.overall().skipped, 1u);
}

TEST(SampleFile, LoadsAndReferenceIsSelfConsistent) {
  const auto recs = load_testset_file(GEODIVP_SAMPLE_DATA, {.first_id = 1, .id_stride = 50});
  ASSERT_EQ(recs.size(), 10000u);
  EXPECT_EQ(recs.back().id, 499951u);
  double worst = 0.0;
  for (const auto& r : recs) worst = std::max(worst, reference_clairaut_mismatch(kWgs84, r));
  EXPECT_LE(worst, 1e-7);
}

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <json.hpp>

#include "geodivp/cli.hpp"

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = geodivp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Value following `key` in the solve table.
std::string table_value(const std::string& table, const std::string& key) {
  for (const auto& l : lines(table)) {
    std::istringstream in(l);
    std::string k, v;
    in >> k >> v;
    if (k == key) return v;
  }
  return "";
}

class TempFile {
 public:
  explicit TempFile(const std::string& name, const std::string& content = "")
      : path_(std::filesystem::temp_directory_path() / name) {
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

constexpr double kA = 6378137.0;

}  // namespace

TEST(CliSolve, EquatorialArc) {
  const double s = 10018754.17;
  const Invocation r = run({"solve", "--lat0", "0", "--lon0", "0", "--azi0", "90", "--s", "10018754.17"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(table_value(r.out, "lat1")), 0.0, 1e-12);
  EXPECT_NEAR(std::stod(table_value(r.out, "lon1")), s / kA * 180.0 / std::numbers::pi, 1e-9);
  EXPECT_NEAR(std::stod(table_value(r.out, "azi1")), 90.0, 1e-9);
  EXPECT_NE(r.out.find("diagnostics:"), std::string::npos);
  EXPECT_NE(r.out.find("max_abs_s"), std::string::npos);
}

TEST(CliSolve, ZeroLengthEchoesStart) {
  const Invocation r = run({"solve", "--lat0", "0", "--lon0", "0", "--azi0", "0", "--s", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(table_value(r.out, "lat1"), "0.000000000000");
  EXPECT_EQ(table_value(r.out, "lon1"), "0.000000000000");
  EXPECT_EQ(table_value(r.out, "azi1"), "0.000000000000");
}

TEST(CliSolve, UsageErrorsExitTwo) {
  const Invocation missing = run({"solve", "--lat0", "0", "--lon0", "0", "--azi0", "90"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("--s"), std::string::npos);
  EXPECT_NE(missing.err.find("Usage"), std::string::npos);
  EXPECT_TRUE(missing.out.empty());

  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"solve", "--lat0", "95", "--lon0", "0", "--azi0", "0", "--s", "1"}).code, 2);
  EXPECT_EQ(run({"solve", "--lat0", "0", "--lon0", "0", "--azi0", "0", "--s", "-1"}).code, 2);
  EXPECT_EQ(run({"solve", "--lat0", "0", "--lon0", "0", "--azi0", "0", "--s", "1", "--system", "polar"}).code, 2);
  EXPECT_EQ(run({"solve", "--lat0", "0", "--lon0", "0", "--azi0", "0", "--s", "1", "--f", "1.5"}).code, 2);
  EXPECT_EQ(run({"solve", "--help"}).code, 0);
}

TEST(CliSolve, SolverErrorsExitThree) {
  const Invocation r = run({"solve", "--lat0", "89.95", "--lon0", "0", "--azi0", "10", "--s", "1e5", "--system", "geodetic"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("cartesian"), std::string::npos);
}

TEST(CliSolve, CsvAndTableCarryIdenticalNumbers) {
  const std::vector<std::string> base = {"solve", "--lat0", "-33.5", "--lon0", "151.2", "--azi0", "250", "--s", "7.5e6"};
  const Invocation table = run(base);
  auto csv_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  const Invocation csv = run(csv_args);
  ASSERT_EQ(table.code, 0);
  ASSERT_EQ(csv.code, 0);
  const auto rows = lines(csv.out);
  ASSERT_EQ(rows.size(), 2u);
  const auto keys = split(rows[0], ',');
  const auto values = split(rows[1], ',');
  ASSERT_EQ(keys.size(), values.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i] == "warnings") continue;
    EXPECT_EQ(table_value(table.out, keys[i]), values[i]) << keys[i];
  }
}

TEST(CliTrace, EquatorialEveryNGivesTwoVertices) {
  const double s = 1e6;
  const Invocation r = run({"trace", "--lat0", "0", "--lon0", "0", "--azi0", "90", "--s", "1e6", "--steps", "100", "--every",
                     "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "s,lat,lon,azimuth,x,y,z,delta_c,lon_unwrapped");
  EXPECT_EQ(split(rows[1], ',')[2], "0.000000000000");
  EXPECT_NEAR(std::stod(split(rows[2], ',')[2]), s / kA * 180.0 / std::numbers::pi, 1e-9);
}

TEST(CliTrace, GeoJsonParsesWithOneCoordinatePerSample) {
  const Invocation r = run({"trace", "--lat0", "10", "--lon0", "20", "--azi0", "45", "--s", "2e6", "--steps", "100", "--every",
                     "7", "--format", "geojson"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["type"], "FeatureCollection");
  const auto& feature = doc["features"][0];
  EXPECT_EQ(feature["geometry"]["type"], "LineString");
  const auto& coords = feature["geometry"]["coordinates"];
  EXPECT_EQ(coords.size(), 16u);  // 0, 7, ..., 98, 100
  EXPECT_EQ(feature["properties"]["s"].size(), coords.size());
  EXPECT_EQ(feature["properties"]["azimuth"].size(), coords.size());
  EXPECT_DOUBLE_EQ(coords[0][0].get<double>(), 20.0);
  EXPECT_DOUBLE_EQ(coords[0][1].get<double>(), 10.0);
}

TEST(CliTrace, MeridianThroughThePoleStaysInItsPlane) {
  const Invocation r = run({"trace", "--lat0", "60", "--lon0", "0", "--azi0", "0", "--s", "5e6", "--steps", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 1002u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(std::abs(std::stod(split(rows[i], ',')[5])), 1e-6);
}

TEST(CliTrace, OutputFileAndUnwritablePath) {
  TempFile f("geodivp_trace_test.csv");
  const Invocation ok = run({"trace", "--lat0", "0", "--lon0", "0", "--azi0", "90", "--s", "1e5", "--output", f.path()});
  ASSERT_EQ(ok.code, 0);
  EXPECT_TRUE(ok.out.empty());
  std::ifstream in(f.path());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "s,lat,lon,azimuth,x,y,z,delta_c,lon_unwrapped");

  const Invocation bad = run({"trace", "--lat0", "0", "--lon0", "0", "--azi0", "90", "--s", "1e5", "--output",
                       "/nonexistent-dir/trace.csv"});
  EXPECT_EQ(bad.code, 4);
}

namespace {

// Three records with hand-computed reference errors, all equatorial so the
// exact endpoint is lon = s/a.
std::string constructed_testset() {
  const double s = kA * std::numbers::pi / 4;  // 45 deg of equator
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "0 0 90 0 45 90 %.10f\n"            // exact
                "0 0 90 0 45.000001 90 %.10f\n"     // 1e-6 deg of longitude off
                "0 0 90 0 45 90.0001 %.10f\n",      // 0.36 arcsec of azimuth off
                s, s, s);
  return buf;
}

std::vector<std::string> overall_row(const std::string& out) {
  for (const auto& l : lines(out)) {
    const auto cells = split(l, ',');
    if (cells.size() > 1 && cells[1] == "all") return cells;
  }
  return {};
}

double value_of(const std::string& cell) { return std::stod(cell.substr(0, cell.find('@'))); }
std::string id_of(const std::string& cell) { return cell.substr(cell.find('@') + 1); }

}  // namespace

TEST(CliBench, ConstructedRecordsGiveExpectedMaxima) {
  TempFile f("geodivp_bench3.dat", constructed_testset());
  const Invocation r = run({"bench", "--testset", f.path(), "--steps", "1000", "--format", "csv", "--serial"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto row = overall_row(r.out);
  ASSERT_EQ(row.size(), 11u) << r.out;
  EXPECT_EQ(row[2], "3");
  EXPECT_EQ(row[3], "0");
  // 1e-6 deg along the equator
  EXPECT_NEAR(value_of(row[4]), kA * 1e-6 * std::numbers::pi / 180.0, 1e-6);
  EXPECT_EQ(id_of(row[4]), "2");
  EXPECT_NEAR(value_of(row[5]), 0.36, 1e-6);
  EXPECT_EQ(id_of(row[5]), "3");
  EXPECT_LE(value_of(row[8]), 1e-12);
  EXPECT_GT(std::stod(row[10]), 0.0);
}

TEST(CliBench, TwoStepCountsGiveTwoBlocksAndFourthOrderShrink) {
  const Invocation r = run({"bench", "--testset", GEODIVP_SAMPLE_DATA, "--id-stride", "50", "--group", "1", "--limit", "200",
                     "--steps", "500", "--steps", "1000", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::vector<std::string>> overall;
  for (const auto& l : lines(r.out)) {
    const auto cells = split(l, ',');
    if (cells.size() > 1 && cells[1] == "all") overall.push_back(cells);
  }
  ASSERT_EQ(overall.size(), 2u);
  EXPECT_EQ(overall[0][0], "500");
  EXPECT_EQ(overall[1][0], "1000");
  const double ratio = value_of(overall[0][4]) / value_of(overall[1][4]);
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(CliBench, ParallelMatchesSerial) {
  const std::vector<std::string> base = {"bench", "--testset", GEODIVP_SAMPLE_DATA, "--id-stride", "50", "--limit",
                                         "300", "--format", "csv"};
  auto serial = base;
  serial.push_back("--serial");
  auto parallel = base;
  parallel.insert(parallel.end(), {"--threads", "4"});
  const auto strip_time = [](const std::string& out) {
    std::string kept;
    for (const auto& l : lines(out)) {
      auto cells = split(l, ',');
      cells.resize(9);
      for (const auto& c : cells) kept += c + ",";
      kept += "\n";
    }
    return kept;
  };
  const Invocation a = run(serial), b = run(parallel);
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(strip_time(a.out), strip_time(b.out));
}

TEST(CliBench, IoErrorsExitFour) {
  EXPECT_EQ(run({"bench", "--testset", "/nonexistent/GeodTest.dat"}).code, 4);
  TempFile bad("geodivp_bad.dat", "1 2 3 4 5 6 7\n1 2 three 4 5 6 7\n");
  const Invocation r = run({"bench", "--testset", bad.path()});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_EQ(run({"bench", "--testset", bad.path(), "--group", "12"}).code, 2);
}

TEST(CliConvergence, EquatorialOrdersNearFour) {
  const Invocation r = run({"convergence", "--lat0", "0", "--lon0", "0", "--azi0", "90", "--s", "1e7", "--n-list",
                     "250,500,1000,1000000", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_GE(rows.size(), 4u);
  for (std::size_t i = 1; i <= 2; ++i) {
    const auto cells = split(rows[i], ',');
    EXPECT_NEAR(std::stod(cells[3]), 4.0, 0.5) << rows[i];
    EXPECT_EQ(cells[4], "ok");
  }
}

TEST(CliConvergence, ZeroLengthIsDegenerate) {
  const Invocation r = run({"convergence", "--lat0", "0", "--lon0", "0", "--azi0", "90", "--s", "0", "--n-list", "10,20,40"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("degenerate"), std::string::npos);
  for (const auto& l : lines(r.out)) {
    if (!l.empty() && std::isdigit(static_cast<unsigned char>(l[0]))) EXPECT_NE(l.find("0.000000e+00"), std::string::npos);
  }
}

TEST(CliConvergence, GeodeticHighLatitudeWarningIsReported) {
  const Invocation r = run({"convergence", "--lat0", "84", "--lon0", "0", "--azi0", "30", "--s", "2e6", "--system", "geodetic",
                     "--n-list", "250,500,1000,8000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("geodetic-high-latitude"), std::string::npos);
}

TEST(CliConvergence, ShortListIsAUsageError) {
  EXPECT_EQ(run({"convergence", "--lat0", "0", "--lon0", "0", "--azi0", "90", "--s", "1e6", "--n-list", "250,500"}).code,
            2);
}

#include "geodivp/testset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>

#include "geodivp/angles.hpp"
#include "geodivp/errors.hpp"

namespace geodivp {

namespace {

constexpr std::uint64_t kGroupSize[GroupId::kCount] = {100000, 50000, 50000, 50000, 50000,
                                                       50000,  50000, 50000, 50000};
constexpr double kMaxDistance = 20003931.4586254;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

}  // namespace

GroupId::GroupId(int value) : value_(value) {
  if (value < 1 || value > kCount) throw DomainError("group id out of range: " + std::to_string(value));
}

std::string_view GroupId::description() const noexcept {
  switch (value_) {
    case 1: return "randomly distributed";
    case 2: return "nearly antipodal";
    case 3: return "short distances";
    case 4: return "one end near a pole";
    case 5: return "both ends near opposite poles";
    case 6: return "nearly meridional";
    case 7: return "nearly equatorial";
    case 8: return "running between vertices";
    default: return "ending close to vertices";
  }
}

TestRecord parse_test_line(std::string_view line, std::uint64_t id) {
  double fields[7];
  std::size_t pos = 0;
  for (std::size_t col = 1; col <= 7; ++col) {
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos == line.size()) {
      throw ParseError(id, col, "expected at least 7 fields, found " + std::to_string(col - 1));
    }
    std::size_t end = pos;
    while (end < line.size() && !is_space(line[end])) ++end;
    const char* first = line.data() + pos;
    const char* last = line.data() + end;
    // from_chars rejects a leading '+'
    if (*first == '+' && last - first > 1) ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
      throw ParseError(id, col, "not a decimal number: '" + std::string(line.substr(pos, end - pos)) + "'");
    }
    fields[col - 1] = v;
    pos = end;
  }
  return {id, fields[0], fields[1], fields[2], fields[3], fields[4], fields[5], fields[6]};
}

std::vector<std::string> conformance_warnings(const TestRecord& rec) {
  std::vector<std::string> out;
  const auto tag = [&](const std::string& what) { out.push_back("record " + std::to_string(rec.id) + ": " + what); };
  if (rec.phi0 < 0.0 || rec.phi0 > 90.0) tag("phi0 outside [0, 90]");
  if (std::abs(rec.phi1_ref) > 90.0) tag("phi1 outside [-90, 90]");
  if (rec.alpha0 < 0.0 || rec.alpha0 > 180.0) tag("alpha0 outside [0, 180]");
  if (rec.s01 < 0.0 || rec.s01 > kMaxDistance) tag("s01 outside [0, 20003931.4586254]");
  if (!is_published_id(rec.id)) tag("id beyond the published set; grouped as custom");
  return out;
}

GroupId classify_group(std::uint64_t id) {
  if (id < 1) throw DomainError("record id must be >= 1");
  std::uint64_t upper = 0;
  for (int g = 0; g < GroupId::kCount; ++g) {
    upper += kGroupSize[g];
    if (id <= upper) return GroupId(g + 1);
  }
  return GroupId(GroupId::kCount);
}

std::vector<TestRecord> load_testset(std::istream& in, const LoadOptions& opts) {
  if (opts.sample_every == 0 || opts.id_stride == 0) {
    throw ConstructionError("sample_every", "sampling strides must be at least 1");
  }
  std::vector<TestRecord> out;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (opts.limit && out.size() >= *opts.limit) break;
    if (lineno % opts.sample_every != 0) continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::uint64_t id = opts.first_id + (lineno - 1) * opts.id_stride;
    try {
      out.push_back(parse_test_line(line, id));
    } catch (const ParseError& e) {
      // report the physical line, not the logical id
      throw ParseError(lineno, e.column(), e.detail());
    }
  }
  if (in.bad()) throw Error("read error after line " + std::to_string(lineno));
  return out;
}

std::vector<TestRecord> load_testset_file(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open test set '" + path + "'");
  return load_testset(in, opts);
}

double reference_clairaut_mismatch(const Ellipsoid& ell, const TestRecord& rec) {
  const auto clairaut = [&](double lat, double azi) {
    return prime_vertical_radius(ell, deg_to_rad(lat)) * sincosd(lat).cos * sincosd(azi).sin;
  };
  return std::abs(clairaut(rec.phi1_ref, rec.alpha1_ref) - clairaut(rec.phi0, rec.alpha0));
}

RecordMetrics evaluate_record(const Ellipsoid& ell, const TestRecord& rec, std::size_t n, CoordinateSystem system) {
  DirectProblem prob;
  prob.start = {rec.phi0, rec.lam0};
  prob.alpha0 = rec.alpha0;
  prob.s01 = rec.s01;
  prob.system = system;
  prob.steps = n;
  DirectResult r;
  try {
    r = solve_direct(ell, prob);
  } catch (const PoleSingularityError& e) {
    throw RecordError(rec.id, true, e.what());
  } catch (const Error& e) {
    throw RecordError(rec.id, false, e.what());
  }
  const CartesianCoord ref = geodetic_to_cartesian(ell, {rec.phi1_ref, rec.lam1_ref});
  const double c1_ref =
      prime_vertical_radius(ell, deg_to_rad(rec.phi1_ref)) * sincosd(rec.phi1_ref).cos * sincosd(rec.alpha1_ref).sin;

  RecordMetrics m;
  m.delta_r1 = norm(r.end_cartesian - ref);
  m.delta_alpha1 = angle_diff(r.alpha1, rec.alpha1_ref) * kArcsecPerDegree;
  m.delta_c1 = r.diagnostics.clairaut_c1 - c1_ref;
  m.max_abs_delta_c = r.diagnostics.max_abs_delta_c;
  m.max_abs_s = r.diagnostics.max_abs_surface_residual.value_or(0.0);
  return m;
}

void TrackedMax::offer(double v, std::uint64_t at) {
  if (at == 0) return;
  if (id == 0 || v > value || (v == value && at < id)) {
    value = v;
    id = at;
  }
}

void GroupStats::add(std::uint64_t id, const RecordMetrics& m) {
  ++count;
  max_delta_r1.offer(m.delta_r1, id);
  max_abs_delta_alpha1.offer(std::abs(m.delta_alpha1), id);
  max_abs_delta_c1.offer(std::abs(m.delta_c1), id);
  max_max_abs_delta_c.offer(m.max_abs_delta_c, id);
  max_max_abs_s.offer(m.max_abs_s, id);
}

void GroupStats::merge(const GroupStats& other) {
  count += other.count;
  skipped += other.skipped;
  max_delta_r1.merge(other.max_delta_r1);
  max_abs_delta_alpha1.merge(other.max_abs_delta_alpha1);
  max_abs_delta_c1.merge(other.max_abs_delta_c1);
  max_max_abs_delta_c.merge(other.max_max_abs_delta_c);
  max_max_abs_s.merge(other.max_max_abs_s);
}

Aggregator::Aggregator() {
  for (int g = 0; g < GroupId::kCount; ++g) groups_[static_cast<std::size_t>(g)].group = GroupId(g + 1);
}

void Aggregator::add(GroupId group, std::uint64_t id, const RecordMetrics& m) { groups_[group.index()].add(id, m); }

void Aggregator::add_skipped(GroupId group) { ++groups_[group.index()].skipped; }

void Aggregator::merge(const Aggregator& other) {
  for (std::size_t g = 0; g < groups_.size(); ++g) groups_[g].merge(other.groups_[g]);
}

std::vector<GroupStats> Aggregator::rows() const {
  std::vector<GroupStats> out;
  for (const GroupStats& g : groups_) {
    if (g.count + g.skipped > 0) out.push_back(g);
  }
  return out;
}

GroupStats Aggregator::overall() const {
  GroupStats all;
  for (const GroupStats& g : groups_) all.merge(g);
  return all;
}

}  // namespace geodivp

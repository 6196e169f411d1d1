#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geodivp/solver.hpp"
#include "geodivp/spheroid.hpp"

namespace geodivp {

/// One line of a reference geodesic file (GeodTest layout, first seven columns).
struct TestRecord {
  std::uint64_t id = 0;
  double phi0 = 0.0;
  double lam0 = 0.0;
  double alpha0 = 0.0;
  double phi1_ref = 0.0;
  double lam1_ref = 0.0;
  double alpha1_ref = 0.0;
  double s01 = 0.0;
};

/// Geodesic class 1..9 of the published 500000-line set.
class GroupId {
 public:
  static constexpr int kCount = 9;
  explicit GroupId(int value);
  int value() const noexcept { return value_; }
  std::size_t index() const noexcept { return static_cast<std::size_t>(value_ - 1); }
  std::string_view description() const noexcept;
  friend bool operator==(GroupId, GroupId) = default;

 private:
  int value_;
};

struct RecordMetrics {
  double delta_r1 = 0.0;      ///< m
  double delta_alpha1 = 0.0;  ///< arcsec, minimal signed difference
  double delta_c1 = 0.0;      ///< m
  double max_abs_delta_c = 0.0;
  double max_abs_s = 0.0;  ///< 0 for the geodetic system
};

/// Parses >= 7 whitespace-separated decimals; extra columns are ignored.
/// Throws ParseError(line = id, column) on short or non-numeric input.
TestRecord parse_test_line(std::string_view line, std::uint64_t id);

/// Conformance warnings for the published-set ranges (empty when conforming).
std::vector<std::string> conformance_warnings(const TestRecord& rec);

/// Group of a record id by fixed id ranges. Ids past 500000 fall into group 9 (see is_published_id).
/// Throws DomainError for id < 1.
GroupId classify_group(std::uint64_t id);
inline bool is_published_id(std::uint64_t id) { return id >= 1 && id <= 500000; }

/// Options for reading a test-set stream.
struct LoadOptions {
  /// Keep only lines whose 1-based number is a multiple of this (1 keeps all).
  std::uint64_t sample_every = 1;
  /// Id of the first data line and increment between lines, for pre-sampled files.
  std::uint64_t first_id = 1;
  std::uint64_t id_stride = 1;
  std::optional<std::size_t> limit;
};

/// Reads a whole test-set stream. Blank lines are skipped (but still counted).
std::vector<TestRecord> load_testset(std::istream& in, const LoadOptions& opts = {});
std::vector<TestRecord> load_testset_file(const std::string& path, const LoadOptions& opts = {});

/// |C1_ref - C0| from (phi1_ref, alpha1_ref) and (phi0, alpha0), metres.
double reference_clairaut_mismatch(const Ellipsoid& ell, const TestRecord& rec);

/// Solves the record's direct problem with n steps and compares against the
/// reference endpoint. Throws RecordError wrapping solver failures.
RecordMetrics evaluate_record(const Ellipsoid& ell, const TestRecord& rec, std::size_t n, CoordinateSystem system);

/// Solver failure tagged with the offending record id.
class RecordError : public std::runtime_error {
 public:
  RecordError(std::uint64_t id, bool pole_guard, const std::string& what)
      : std::runtime_error("record " + std::to_string(id) + ": " + what), id_(id), pole_guard_(pole_guard) {}
  std::uint64_t id() const noexcept { return id_; }
  /// True when the geodetic pole guard rejected the record (reported as skipped).
  bool pole_guard() const noexcept { return pole_guard_; }

 private:
  std::uint64_t id_;
  bool pole_guard_;
};

/// Running maximum with the id that attained it. Ties go to the smaller id so
/// the result does not depend on input order.
struct TrackedMax {
  double value = 0.0;
  std::uint64_t id = 0;

  void offer(double v, std::uint64_t at);
  void merge(const TrackedMax& other) { offer(other.value, other.id); }
  friend bool operator==(const TrackedMax&, const TrackedMax&) = default;
};

struct GroupStats {
  std::optional<GroupId> group;  ///< empty for the overall row
  std::size_t count = 0;
  std::size_t skipped = 0;
  TrackedMax max_delta_r1;
  TrackedMax max_abs_delta_alpha1;
  TrackedMax max_abs_delta_c1;
  TrackedMax max_max_abs_delta_c;
  TrackedMax max_max_abs_s;

  void add(std::uint64_t id, const RecordMetrics& m);
  void merge(const GroupStats& other);
  friend bool operator==(const GroupStats&, const GroupStats&) = default;
};

/// Per-group and overall maxima. Mergeable across disjoint record subsets.
class Aggregator {
 public:
  Aggregator();
  void add(GroupId group, std::uint64_t id, const RecordMetrics& m);
  void add_skipped(GroupId group);
  void merge(const Aggregator& other);

  const GroupStats& group(GroupId g) const { return groups_[g.index()]; }
  /// Groups with at least one record (evaluated or skipped), in group order.
  std::vector<GroupStats> rows() const;
  GroupStats overall() const;

  friend bool operator==(const Aggregator&, const Aggregator&) = default;

 private:
  std::array<GroupStats, GroupId::kCount> groups_;
};

}  // namespace geodivp

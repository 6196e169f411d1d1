#include "geodivp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "geodivp/angles.hpp"
#include "geodivp/errors.hpp"
#include "geodivp/solver.hpp"
#include "geodivp/testset.hpp"

namespace geodivp::cli {

namespace {

// Degrees carry 12 decimals (1e-12 deg), metres 9 (1 nm).
std::string deg(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::string metres(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string opt_sci(const std::optional<double>& v) { return v ? sci(*v) : "n/a"; }

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shared flags describing one geodesic.
struct GeodesicArgs {
  double lat0 = 0.0;
  double lon0 = 0.0;
  double azi0 = 0.0;
  double s = 0.0;
  std::optional<std::size_t> steps;
  double target_ds = kDefaultTargetStep;
  std::string system = "cartesian";
  double a = 6378137.0;
  double f = 1 / 298.257223563;

  void attach(CLI::App& app, bool with_steps = true) {
    app.add_option("--lat0", lat0, "start latitude (deg)")->required();
    app.add_option("--lon0", lon0, "start longitude (deg)")->required();
    app.add_option("--azi0", azi0, "start azimuth (deg, clockwise from north)")->required();
    app.add_option("--s", s, "arc length (m)")->required();
    if (with_steps) {
      auto* n = app.add_option("--steps", steps, "fixed RK4 step count");
      app.add_option("--target-ds", target_ds, "target step length (m) when --steps is absent")->excludes(n);
    }
    app.add_option("--system", system, "coordinate system")->check(CLI::IsMember({"cartesian", "geodetic"}));
    app.add_option("--a", a, "semi-major axis (m)");
    app.add_option("--f", f, "flattening");
  }

  Ellipsoid ellipsoid() const { return make_ellipsoid(a, f); }

  DirectProblem problem() const {
    DirectProblem p;
    p.start = GeodeticCoord::checked(lat0, lon0);
    p.alpha0 = azi0;
    p.s01 = s;
    p.system = parse_coordinate_system(system);
    p.steps = steps ? steps : std::optional<std::size_t>(select_steps(s, target_ds));
    return p;
  }
};

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write '" + path + "'");
  return f;
}

// solve

struct SolveArgs {
  GeodesicArgs geo;
  std::string format = "table";
};

void print_solve(const SolveArgs& args, const DirectResult& r, std::ostream& out) {
  const Diagnostics& d = r.diagnostics;
  const std::vector<std::pair<std::string, std::string>> fields = {
      {"lat1", deg(r.end_geodetic.lat)},
      {"lon1", deg(r.end_geodetic.lon)},
      {"azi1", deg(r.alpha1)},
      {"x1", metres(r.end_cartesian.x)},
      {"y1", metres(r.end_cartesian.y)},
      {"z1", metres(r.end_cartesian.z)},
      {"system", args.geo.system},
      {"steps", std::to_string(r.steps)},
      {"c0", sci(d.clairaut_c0)},
      {"max_abs_delta_c", sci(d.max_abs_delta_c)},
      {"max_abs_s", opt_sci(d.max_abs_surface_residual)},
      {"max_abs_tangency", opt_sci(d.max_abs_tangency_residual)},
      {"warnings", join(d.warnings, ";")},
  };
  if (args.format == "csv") {
    std::vector<std::string> keys, values;
    for (const auto& [k, v] : fields) {
      keys.push_back(k);
      values.push_back(v);
    }
    out << join(keys, ",") << '\n' << join(values, ",") << '\n';
    return;
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i == 8) out << "diagnostics:\n";
    const auto& [k, v] = fields[i];
    out << (i >= 8 ? "  " : "") << k << std::string(i >= 8 ? 18 - k.size() : 20 - k.size(), ' ')
        << (v.empty() ? "none" : v) << '\n';
  }
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const DirectResult r = solve_direct(args.geo.ellipsoid(), args.geo.problem());
  for (const auto& w : r.diagnostics.warnings) err << "warning: " << w << '\n';
  print_solve(args, r, out);
  return kOk;
}

// trace

struct TraceArgs {
  GeodesicArgs geo;
  std::size_t every = 1;
  std::string format = "csv";
  std::string output;
};

void write_trace_csv(const std::vector<TraceSample>& samples, std::ostream& out) {
  out << "s,lat,lon,azimuth,x,y,z,delta_c,lon_unwrapped\n";
  for (const auto& smp : samples) {
    out << metres(smp.s) << ',' << deg(smp.geodetic.lat) << ',' << deg(smp.geodetic.lon) << ','
        << deg(smp.alpha) << ',' << metres(smp.position.x) << ',' << metres(smp.position.y) << ','
        << metres(smp.position.z) << ',' << sci(smp.delta_c) << ',' << deg(smp.lon_unwrapped) << '\n';
  }
}

void write_trace_geojson(const TraceArgs& args, const std::vector<TraceSample>& samples, std::ostream& out) {
  nlohmann::json coords = nlohmann::json::array();
  nlohmann::json s = nlohmann::json::array(), az = nlohmann::json::array(), dc = nlohmann::json::array(),
                 unwrapped = nlohmann::json::array();
  for (const auto& smp : samples) {
    coords.push_back({smp.geodetic.lon, smp.geodetic.lat});
    s.push_back(smp.s);
    az.push_back(smp.alpha);
    dc.push_back(smp.delta_c);
    unwrapped.push_back(smp.lon_unwrapped);
  }
  const nlohmann::json feature = {
      {"type", "Feature"},
      {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
      {"properties",
       {{"system", args.geo.system},
        {"s", s},
        {"azimuth", az},
        {"delta_c", dc},
        {"lon_unwrapped", unwrapped}}},
  };
  const nlohmann::json doc = {{"type", "FeatureCollection"}, {"features", nlohmann::json::array({feature})}};
  out << doc.dump(1) << '\n';
}

int cmd_trace(const TraceArgs& args, std::ostream& out) {
  const auto samples = trace_direct(args.geo.ellipsoid(), args.geo.problem(), args.every);
  std::ofstream file;
  if (!args.output.empty()) file = open_output(args.output);
  std::ostream& dest = args.output.empty() ? out : file;
  if (args.format == "geojson") {
    write_trace_geojson(args, samples, dest);
  } else {
    write_trace_csv(samples, dest);
  }
  dest.flush();
  if (!dest) throw IoError("write failed for '" + args.output + "'");
  return kOk;
}

// bench

struct BenchArgs {
  std::string testset;
  std::vector<std::size_t> steps;
  std::string system = "cartesian";
  std::optional<std::size_t> limit;
  std::vector<int> groups;
  std::uint64_t sample_every = 1;
  std::uint64_t first_id = 1;
  std::uint64_t id_stride = 1;
  bool serial = false;
  std::size_t threads = 0;
  std::string format = "table";
  double a = 6378137.0;
  double f = 1 / 298.257223563;
};

struct BenchBlock {
  std::size_t n = 0;
  Aggregator agg;
  double seconds = 0.0;
  std::size_t steps = 0;
};

// Evaluates records [begin, end) into a private aggregator. The first
// non-guard failure (smallest id) is kept so reporting is order-independent.
struct Worker {
  Aggregator agg;
  std::size_t steps = 0;
  std::optional<RecordError> failure;
};

void evaluate_range(const Ellipsoid& ell, const std::vector<TestRecord>& recs, std::size_t begin, std::size_t end,
                    std::size_t n, CoordinateSystem sys, Worker& w) {
  for (std::size_t i = begin; i < end; ++i) {
    const TestRecord& r = recs[i];
    const GroupId g = classify_group(r.id);
    try {
      w.agg.add(g, r.id, evaluate_record(ell, r, n, sys));
      w.steps += n;
    } catch (const RecordError& e) {
      if (e.pole_guard()) {
        w.agg.add_skipped(g);
      } else if (!w.failure || e.id() < w.failure->id()) {
        w.failure = e;
      }
    }
  }
}

BenchBlock run_block(const Ellipsoid& ell, const std::vector<TestRecord>& recs, std::size_t n, CoordinateSystem sys,
                     std::size_t threads) {
  const auto t0 = std::chrono::steady_clock::now();
  threads = std::max<std::size_t>(1, std::min(threads, recs.size()));
  std::vector<Worker> workers(threads);
  if (threads == 1) {
    evaluate_range(ell, recs, 0, recs.size(), n, sys, workers[0]);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (recs.size() + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t b = std::min(recs.size(), t * chunk), e = std::min(recs.size(), b + chunk);
      pool.emplace_back(evaluate_range, std::cref(ell), std::cref(recs), b, e, n, sys, std::ref(workers[t]));
    }
    for (auto& th : pool) th.join();
  }
  BenchBlock block;
  block.n = n;
  std::optional<RecordError> failure;
  for (const auto& w : workers) {
    block.agg.merge(w.agg);
    block.steps += w.steps;
    if (w.failure && (!failure || w.failure->id() < failure->id())) failure = w.failure;
  }
  if (failure) throw *failure;
  block.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return block;
}

std::vector<std::string> stats_cells(const GroupStats& g) {
  const auto cell = [](const TrackedMax& m) { return sci(m.value) + "@" + std::to_string(m.id); };
  return {std::to_string(g.count),          std::to_string(g.skipped),        cell(g.max_delta_r1),
          cell(g.max_abs_delta_alpha1),     cell(g.max_abs_delta_c1),         cell(g.max_max_abs_delta_c),
          cell(g.max_max_abs_s)};
}

void print_bench(const BenchArgs& args, const std::vector<BenchBlock>& blocks, std::ostream& out) {
  const std::vector<std::string> header = {"n",          "group",           "count",       "skipped",
                                           "max_dr1_m",  "max_dalpha1_as",  "max_dc1_m",   "max_max_dc_m",
                                           "max_max_s",  "wall_s",          "steps_per_s"};
  const bool csv = args.format == "csv";
  const auto emit = [&](const std::vector<std::string>& row) {
    if (csv) {
      out << join(row, ",") << '\n';
      return;
    }
    static constexpr int width[] = {8, 8, 7, 7, 20, 20, 20, 20, 20, 10, 12};
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line.append(std::max<int>(1, width[i] - static_cast<int>(row[i].size()) + 1), ' ');
    }
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << '\n';
  };
  // each maximum prints as value@argmax_id
  emit(header);
  for (const auto& b : blocks) {
    for (const auto& g : b.agg.rows()) {
      std::vector<std::string> row = {std::to_string(b.n), std::to_string(g.group->value())};
      for (auto& c : stats_cells(g)) row.push_back(c);
      row.push_back("");
      row.push_back("");
      emit(row);
    }
    std::vector<std::string> row = {std::to_string(b.n), "all"};
    for (auto& c : stats_cells(b.agg.overall())) row.push_back(c);
    char wall[32], rate[32];
    std::snprintf(wall, sizeof wall, "%.3f", b.seconds);
    std::snprintf(rate, sizeof rate, "%.3e", b.seconds > 0 ? static_cast<double>(b.steps) / b.seconds : 0.0);
    row.push_back(wall);
    row.push_back(rate);
    emit(row);
    if (!csv && &b != &blocks.back()) out << '\n';
  }
}

int cmd_bench(BenchArgs args, std::ostream& out, std::ostream& err) {
  if (args.steps.empty()) args.steps.push_back(1000);
  for (int g : args.groups) {
    if (g < 1 || g > GroupId::kCount) throw UsageError("--group must be in 1..9");
  }
  LoadOptions opts;
  opts.sample_every = args.sample_every;
  opts.first_id = args.first_id;
  opts.id_stride = args.id_stride;
  std::vector<TestRecord> recs;
  try {
    recs = load_testset_file(args.testset, opts);
  } catch (const geodivp::ParseError& e) {
    throw IoError(args.testset + ": " + e.what());
  } catch (const Error& e) {
    throw IoError(e.what());
  }
  if (!args.groups.empty()) {
    const std::set<int> keep(args.groups.begin(), args.groups.end());
    std::erase_if(recs, [&](const TestRecord& r) { return !keep.contains(classify_group(r.id).value()); });
  }
  if (args.limit && recs.size() > *args.limit) recs.resize(*args.limit);
  std::size_t nonconforming = 0;
  for (const auto& r : recs) nonconforming += conformance_warnings(r).empty() ? 0 : 1;
  if (nonconforming) err << "warning: " << nonconforming << " records outside the published ranges\n";

  const Ellipsoid ell = make_ellipsoid(args.a, args.f);
  const CoordinateSystem sys = parse_coordinate_system(args.system);
  std::size_t threads = args.threads ? args.threads : std::max(1u, std::thread::hardware_concurrency());
  if (args.serial) threads = 1;
  std::vector<BenchBlock> blocks;
  for (std::size_t n : args.steps) {
    if (n == 0) throw UsageError("--steps must be at least 1");
    blocks.push_back(run_block(ell, recs, n, sys, threads));
  }
  print_bench(args, blocks, out);
  return kOk;
}

// convergence

struct ConvergenceArgs {
  GeodesicArgs geo;
  std::vector<std::size_t> n_list;
  std::string format = "table";
};

int cmd_convergence(ConvergenceArgs args, std::ostream& out) {
  if (args.n_list.size() < 3) throw UsageError("--n-list needs at least 3 step counts");
  std::sort(args.n_list.begin(), args.n_list.end());
  args.n_list.erase(std::unique(args.n_list.begin(), args.n_list.end()), args.n_list.end());
  if (args.n_list.size() < 3) throw UsageError("--n-list needs at least 3 distinct step counts");
  if (args.n_list.front() == 0) throw UsageError("step counts must be at least 1");

  const Ellipsoid ell = args.geo.ellipsoid();
  DirectProblem prob = args.geo.problem();
  std::set<std::string> warnings;
  const auto endpoint = [&](std::size_t n) {
    prob.steps = n;
    const DirectResult r = solve_direct(ell, prob);
    warnings.insert(r.diagnostics.warnings.begin(), r.diagnostics.warnings.end());
    return r.end_cartesian;
  };
  const std::size_t n_ref = args.n_list.back();
  const CartesianCoord ref = endpoint(n_ref);
  const bool degenerate = prob.s01 == 0.0;

  struct Row {
    std::size_t n;
    double err;
    std::optional<double> order;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i + 1 < args.n_list.size(); ++i) rows.push_back({args.n_list[i], norm(endpoint(args.n_list[i]) - ref), {}});
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (rows[i].err > 0.0 && rows[i + 1].err > 0.0) {
      rows[i].order = std::log(rows[i].err / rows[i + 1].err) /
                      std::log(static_cast<double>(rows[i + 1].n) / static_cast<double>(rows[i].n));
    }
  }
  const auto flag = [&](const Row& r) -> std::string {
    if (degenerate || !r.order) return "";
    return *r.order < 3.5 || *r.order > 4.5 ? "OUT-OF-RANGE" : "ok";
  };
  const bool csv = args.format == "csv";
  if (csv) {
    out << "n,n_ref,error_m,order,flag\n";
  } else {
    out << "reference: n=" << n_ref << " system=" << args.geo.system << (degenerate ? " (degenerate: zero length)" : "")
        << '\n';
    out << "n         error_m             order     flag\n";
  }
  for (const auto& r : rows) {
    char order[32] = "n/a";
    if (r.order) std::snprintf(order, sizeof order, "%.4f", *r.order);
    if (csv) {
      out << r.n << ',' << n_ref << ',' << sci(r.err) << ',' << order << ',' << flag(r) << '\n';
    } else {
      char line[160];
      std::snprintf(line, sizeof line, "%-9zu %-19s %-9s %s", r.n, sci(r.err).c_str(), order, flag(r).c_str());
      std::string text = line;
      text.erase(text.find_last_not_of(' ') + 1);
      out << text << '\n';
    }
  }
  if (!csv) {
    out << "warnings: " << (warnings.empty() ? "none" : join({warnings.begin(), warnings.end()}, ";")) << '\n';
  } else {
    for (const auto& w : warnings) out << "# warning: " << w << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Direct geodesic problem on an oblate spheroid by fixed-step RK4 integration", "geodivp"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "endpoint and azimuth of one geodesic");
  solve.geo.attach(*solve_cmd);
  solve_cmd->add_option("--format", solve.format)->check(CLI::IsMember({"table", "csv"}));

  TraceArgs trace;
  CLI::App* trace_cmd = app.add_subcommand("trace", "sampled polyline of one geodesic");
  trace.geo.attach(*trace_cmd);
  trace_cmd->add_option("--every", trace.every, "keep every k-th step (the last step is always kept)")
      ->check(CLI::PositiveNumber);
  trace_cmd->add_option("--format", trace.format)->check(CLI::IsMember({"csv", "geojson"}));
  trace_cmd->add_option("--output,-o", trace.output, "output file (default: stdout)");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "error statistics over a reference test file");
  bench_cmd->add_option("--testset", bench.testset, "GeodTest-layout file")->required();
  bench_cmd->add_option("--steps", bench.steps, "step count (repeatable, default 1000)");
  bench_cmd->add_option("--system", bench.system)->check(CLI::IsMember({"cartesian", "geodetic"}));
  bench_cmd->add_option("--limit", bench.limit, "evaluate at most this many records");
  bench_cmd->add_option("--group", bench.groups, "restrict to group (repeatable)");
  bench_cmd->add_option("--sample-every", bench.sample_every, "keep every k-th line")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--first-id", bench.first_id, "id of the first line")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--id-stride", bench.id_stride, "id increment per line")->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--serial", bench.serial, "single worker thread");
  bench_cmd->add_option("--threads", bench.threads, "worker threads (default: hardware concurrency)");
  bench_cmd->add_option("--format", bench.format)->check(CLI::IsMember({"table", "csv"}));
  bench_cmd->add_option("--a", bench.a, "semi-major axis (m)");
  bench_cmd->add_option("--f", bench.f, "flattening");

  ConvergenceArgs conv;
  CLI::App* conv_cmd = app.add_subcommand("convergence", "observed order against the largest step count");
  conv.geo.attach(*conv_cmd, false);
  conv_cmd->add_option("--n-list", conv.n_list, "step counts, comma separated")->required()->delimiter(',');
  conv_cmd->add_option("--format", conv.format)->check(CLI::IsMember({"table", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << target->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const CLI::App* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << target->help();
    return kUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve, out, err);
    if (trace_cmd->parsed()) return cmd_trace(trace, out);
    if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
    return cmd_convergence(conv, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConstructionError& e) {
    err << "error: invalid " << e.field() << ": " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace geodivp::cli

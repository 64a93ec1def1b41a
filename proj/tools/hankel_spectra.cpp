#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hankel/acceptance.hpp"
#include "hankel/identities.hpp"
#include "hankel/io.hpp"
#include "hankel/operators.hpp"
#include "hankel/spectral.hpp"

namespace {

using hankel::io::json;

enum Exit { ok = 0, check_failed = 1, bad_config = 2, inconclusive = 3 };

struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string family;
  double k = 0.0, alpha = 0.0, lambda = 0.0, gamma = 0.0, delta = 0.0;
  int N = 0;
  std::string block = "full";
  bool strip_signs = false;
  std::string out = "json";
  std::string output;
  std::optional<double> tol;
  bool strict = false;

  std::size_t size = 0;
  std::vector<std::size_t> sizes;
  std::string density_path;
  std::vector<double> x_range{-5.0, 5.0};
  std::size_t points = 201;
  std::size_t max_index = 200;
  std::size_t m_max = 10;
  std::vector<double> xs;
  std::size_t trunc = 0;
  std::string suite = "all";
  double epsilon = 0.1;
  std::vector<int> criteria;
  std::string ingest;

  const CLI::App* active = nullptr;  // subcommand that was parsed
};

void add_family_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--family", o.family, "h1, h2, h3 or h4")->required()->check(CLI::IsMember({"h1", "h2", "h3", "h4"}));
  cmd.add_option("--k", o.k, "h1 parameter k in (0, 1)");
  cmd.add_option("--alpha", o.alpha, "h1 parameter alpha > 0");
  cmd.add_option("--lambda", o.lambda, "h2 parameter lambda > 0");
  cmd.add_option("--N", o.N, "h4 size parameter N >= 0");
  cmd.add_option("--gamma", o.gamma, "h4 parameter gamma > -1");
  cmd.add_option("--delta", o.delta, "h4 parameter delta > -1");
  cmd.add_option("--block", o.block, "full, even or odd (h2, h3)")->check(CLI::IsMember({"full", "even", "odd"}));
}

void add_output_flags(CLI::App& cmd, Options& o, bool csv) {
  if (csv) {
    cmd.add_option("--out", o.out, "report format")->check(CLI::IsMember({"json", "csv"}));
  } else {
    cmd.add_option("--out", o.out, "report format")->check(CLI::IsMember({"json"}));
  }
  cmd.add_option("--output", o.output, "report file (default: standard output)");
}

void add_tolerance_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--tol", o.tol, "tolerance override (loosen only unless --strict)");
  cmd.add_flag("--strict", o.strict, "allow --tol below the default tolerance");
}

hankel::FamilySpec make_spec(const Options& o) {
  auto need = [&](const char* name) {
    if (o.active->count(std::string("--") + name) == 0) {
      throw config_error("--family " + o.family + " requires --" + name);
    }
  };
  hankel::FamilySpec spec;
  if (o.family == "h1") {
    need("k");
    need("alpha");
    spec = hankel::h1(o.k, o.alpha);
  } else if (o.family == "h2") {
    need("lambda");
    spec = hankel::h2(o.lambda);
  } else if (o.family == "h3") {
    spec = hankel::h3();
  } else {
    need("N");
    need("gamma");
    need("delta");
    spec = hankel::h4(o.N, o.gamma, o.delta);
  }
  spec.block = hankel::io::parse_block(o.block);
  try {
    hankel::validate(spec);
  } catch (const std::exception& e) {
    throw config_error(e.what());
  }
  return spec;
}

// A tolerance override may only loosen the default unless --strict is given.
double effective_tol(const Options& o, double fallback) {
  if (!o.tol) {
    return fallback;
  }
  if (!(*o.tol > 0.0)) {
    throw config_error("--tol must be positive");
  }
  if (*o.tol < fallback && !o.strict) {
    throw config_error("--tol " + hankel::io::format_double(*o.tol) + " is tighter than the default " +
                       hankel::io::format_double(fallback) + "; pass --strict to tighten");
  }
  return *o.tol;
}

unsigned thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HANKEL_SPECTRA_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
      throw config_error("HANKEL_SPECTRA_THREADS must be a positive integer, got '" + std::string(env) + "'");
    }
    cap = static_cast<unsigned>(v);
  }
  return cap;
}

// Evaluates f(0..count-1) on up to `threads` workers; results keep index order.
template <class F>
auto parallel_map(std::size_t count, unsigned threads, F&& f) {
  using R = decltype(f(std::size_t{0}));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  std::vector<R> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) {
      std::rethrow_exception(errors[i]);
    }
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

// Machine-readable output goes to --output if given, otherwise to standard
// output; the human summary then moves to standard error.
class Sink {
public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) {
        throw config_error("cannot open output file '" + path + "'");
      }
    }
  }
  std::ostream& report() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  std::ostream& summary() { return file_.is_open() ? std::cout : std::cerr; }

private:
  std::ofstream file_;
};

void write_json(Sink& sink, const json& j) { sink.report() << j.dump(2) << '\n'; }

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

int cmd_build(const Options& o) {
  const hankel::FamilySpec spec = make_spec(o);
  std::size_t size = o.size;
  if (size == 0) {
    const auto dim = hankel::dimension(spec);
    if (!dim) {
      throw config_error("build requires --size for infinite families");
    }
    size = *dim;
  }
  hankel::MaterializeOptions mo;
  mo.strip_signs = o.strip_signs;
  const auto M = hankel::materialize<double>(spec, size, mo);
  Sink sink(o.output);
  if (o.out == "csv") {
    hankel::io::write_matrix_csv(sink.report(), M);
  } else {
    write_json(sink, hankel::io::matrix_to_json(spec, M, o.strip_signs));
  }
  sink.summary() << "built " << hankel::describe(spec) << " block " << hankel::block_name(spec.block) << ", " << size
                 << "x" << size << (o.strip_signs ? ", signs stripped" : "") << '\n';
  return ok;
}

int cmd_spectrum(const Options& o) {
  const hankel::FamilySpec spec = make_spec(o);
  std::vector<std::size_t> sizes = o.sizes;
  if (o.size > 0) {
    sizes.push_back(o.size);
  }
  if (sizes.empty()) {
    if (const auto dim = hankel::dimension(spec)) {
      sizes.push_back(*dim);
    } else {
      sizes = {64, 256};
    }
  }
  const hankel::SpectrumReport r = hankel::truncated_spectrum_report(spec, sizes, o.strip_signs);
  Sink sink(o.output);
  if (o.out == "csv") {
    hankel::io::write_spectrum_csv(sink.report(), r);
  } else {
    write_json(sink, hankel::io::spectrum_to_json(r));
  }
  if (!o.density_path.empty()) {
    if (o.x_range.size() != 2 || !(o.x_range[1] > o.x_range[0]) || o.points < 2) {
      throw config_error("--x-range needs lo,hi with lo < hi and --points >= 2");
    }
    std::ofstream dens(o.density_path);
    if (!dens) {
      throw config_error("cannot open density file '" + o.density_path + "'");
    }
    hankel::io::write_density_csv(dens, hankel::spectral_rep(spec), o.x_range[0], o.x_range[1], o.points);
  }
  auto& s = sink.summary();
  s << "spectrum " << hankel::describe(spec) << " block " << hankel::block_name(spec.block) << '\n';
  for (std::size_t i = 0; i < r.sizes.size(); ++i) {
    s << "  size " << r.sizes[i] << ": lambda_max " << hankel::io::format_double(r.lambda_max[i]) << '\n';
  }
  s << "  enclosure [" << fmt(r.lower_bound) << ", " << fmt(r.upper_bound) << "] "
    << (r.enclosure_ok ? "ok" : "VIOLATED") << ", lambda_max " << (r.lambda_max_monotone ? "monotone" : "NOT monotone")
    << '\n';
  return r.enclosure_ok && r.lambda_max_monotone ? ok : check_failed;
}

int cmd_commutation(const Options& o) {
  const hankel::FamilySpec spec = make_spec(o);
  if (spec.block != hankel::Block::full) {
    throw config_error("verify-commutation works on the full matrix only");
  }
  const double tol = effective_tol(o, 1e-12);
  const hankel::ResidualSweep sw = hankel::commutation_sweep(spec, o.max_index);
  const bool passed = sw.max_residual <= tol;
  Sink sink(o.output);
  json j;
  j["schema"] = hankel::io::schema_version;
  j["command"] = "verify-commutation";
  j["spec"] = hankel::io::spec_to_json(spec);
  j["max_index"] = o.max_index;
  j["pairs"] = sw.pairs;
  j["max_residual"] = sw.max_residual;
  j["argmax"] = {sw.argmax_m, sw.argmax_n};
  j["tolerance"] = tol;
  j["passed"] = passed;
  write_json(sink, j);
  sink.summary() << "commutation " << hankel::describe(spec) << ": " << sw.pairs << " pairs, max residual "
                 << fmt(sw.max_residual) << " at (" << sw.argmax_m << ", " << sw.argmax_n << ") vs tol " << fmt(tol)
                 << (passed ? " PASS" : " FAIL") << '\n';
  return passed ? ok : check_failed;
}

// Default sample points and truncation for the functional equation.
std::pair<std::vector<double>, std::size_t> functional_defaults(const hankel::FamilySpec& spec) {
  using hankel::H1Regime;
  auto lin = [](double a, double b) {
    std::vector<double> v;
    for (int i = 0; i < 10; ++i) {
      v.push_back(a + (b - a) * i / 9.0);
    }
    return v;
  };
  if (const auto* p = std::get_if<hankel::H1>(&spec.family)) {
    switch (hankel::h1_regime(*p).regime) {
      case H1Regime::unbounded:
        return {lin(-3.0, 3.0), 600};
      case H1Regime::laguerre:
        return {lin(0.4, 4.0), 400};
      case H1Regime::point: {
        std::vector<double> atoms;
        for (int j = 0; j < 10; ++j) {
          atoms.push_back(j * hankel::point_regime_constants(p->k).s);
        }
        return {atoms, 400};
      }
    }
  }
  if (std::holds_alternative<hankel::H2>(spec.family)) {
    return {spec.block == hankel::Block::full ? lin(-3.0, 3.0) : lin(0.3, 3.0), 200'000};
  }
  if (std::holds_alternative<hankel::H3>(spec.family)) {
    return {spec.block == hankel::Block::full ? lin(-3.0, 3.0) : lin(0.3, 3.0), 400};
  }
  const int N = std::get<hankel::H4>(spec.family).N;
  std::vector<double> lattice;
  for (int x = 0; x <= std::min(N, 9); ++x) {
    lattice.push_back(x);
  }
  return {lattice, static_cast<std::size_t>(N)};
}

int cmd_functional(const Options& o) {
  const hankel::FamilySpec spec = make_spec(o);
  const bool finite = hankel::dimension(spec).has_value();
  const double tol = effective_tol(o, finite ? 1e-10 : 1e-8);
  auto [xs, trunc] = functional_defaults(spec);
  if (!o.xs.empty()) {
    xs = o.xs;
  }
  if (o.trunc > 0) {
    trunc = o.trunc;
  }
  std::size_t m_max = o.m_max;
  if (const auto dim = hankel::dimension(spec)) {
    m_max = std::min(m_max, *dim - 1);
  }
  const auto rows = parallel_map(xs.size(), thread_cap(),
                                 [&](std::size_t i) { return hankel::functional_equation_rows(spec, m_max, xs[i], trunc); });
  double worst = 0.0, worst_tail = 0.0;
  json out = json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t m = 0; m < rows[i].size(); ++m) {
      const auto& r = rows[i][m];
      worst = std::max(worst, r.residual);
      worst_tail = std::max(worst_tail, r.tail_bound);
      out.push_back({{"x", xs[i]}, {"m", m}, {"residual", r.residual}, {"tail_bound", r.tail_bound},
                     {"lhs", r.lhs}, {"rhs", r.rhs}, {"terms", r.terms}});
    }
  }
  const bool passed = worst <= tol && worst_tail <= tol;
  Sink sink(o.output);
  if (o.out == "csv") {
    auto& os = sink.report();
    os << "x,m,residual,tail_bound,lhs,rhs,terms\n";
    for (const auto& r : out) {
      os << hankel::io::format_double(r["x"].get<double>()) << ',' << r["m"].get<std::size_t>() << ','
         << hankel::io::format_double(r["residual"].get<double>()) << ','
         << hankel::io::format_double(r["tail_bound"].get<double>()) << ','
         << hankel::io::format_double(r["lhs"].get<double>()) << ','
         << hankel::io::format_double(r["rhs"].get<double>()) << ',' << r["terms"].get<std::size_t>() << '\n';
    }
  } else {
    json j;
    j["schema"] = hankel::io::schema_version;
    j["command"] = "verify-functional";
    j["spec"] = hankel::io::spec_to_json(spec);
    j["truncation"] = trunc;
    j["m_max"] = m_max;
    j["rows"] = out;
    j["max_residual"] = worst;
    j["max_tail_bound"] = worst_tail;
    j["tolerance"] = tol;
    j["passed"] = passed;
    write_json(sink, j);
  }
  sink.summary() << "functional equation " << hankel::describe(spec) << " block " << hankel::block_name(spec.block)
                 << ": " << xs.size() << " points, m <= " << m_max << ", truncation " << trunc << ", max residual "
                 << fmt(worst) << ", max tail bound " << fmt(worst_tail) << " vs tol " << fmt(tol)
                 << (passed ? " PASS" : " FAIL") << '\n';
  return passed ? ok : check_failed;
}

struct JudgedReport {
  hankel::IdentityReport report;
  double tolerance;
  bool absolute;
};

std::vector<JudgedReport> identity_reports(const std::string& suite, unsigned threads) {
  using namespace hankel;
  std::vector<JudgedReport> out;
  auto judged = [&](const IdentityReport& r) {
    const auto [tol, absolute] = acceptance::identity_tolerance(r);
    out.push_back({r, tol, absolute});
  };
  const bool all = suite == "all";
  if (all || suite == "orthogonality") {
    const std::vector<IdentityReport> reports = acceptance::identity_suite();
    for (const auto& r : reports) {
      judged(r);
    }
  }
  if (all || suite == "determinant") {
    std::vector<std::pair<int, std::pair<double, double>>> jobs;
    const std::vector<double> grid{-2.5, -1.5, -0.5, 0.0, 0.3, 2.0, 5.0};
    for (int N = 0; N <= 12; ++N) {
      for (double g : grid) {
        for (double d : grid) {
          jobs.push_back({N, {g, d}});
        }
      }
    }
    const auto reports = parallel_map(jobs.size(), threads, [&](std::size_t i) {
      return determinant_identity(jobs[i].first, jobs[i].second.first, jobs[i].second.second);
    });
    for (const auto& r : reports) {
      out.push_back({r, 1e-8, false});
    }
  }
  if (all || suite == "trace") {
    const std::vector<double> grid{-0.5, 0.0, 0.3, 2.0, 5.0};
    for (int N = 0; N <= 12; ++N) {
      for (double g : grid) {
        for (double d : grid) {
          const auto [tr, hs] = trace_identities(N, g, d);
          out.push_back({tr, 1e-10, false});
          out.push_back({hs, 1e-10, false});
        }
      }
    }
    for (auto [k, a] : {std::pair{0.1, 1.0}, std::pair{0.3, 2.5}, std::pair{0.45, 0.5}}) {
      const auto [tr, hs] = h1_trace_class_checks(k, a);
      out.push_back({tr, 1e-9, false});
      out.push_back({hs, 1e-9, false});
    }
  }
  return out;
}

int cmd_identities(const Options& o) {
  const unsigned threads = thread_cap();
  std::vector<JudgedReport> reports = identity_reports(o.suite, threads);
  std::size_t failed = 0;
  json arr = json::array();
  if (o.tol && !(*o.tol > 0.0)) {
    throw config_error("--tol must be positive");
  }
  for (auto& jr : reports) {
    // Defaults differ per identity, so --tol raises each one to at least --tol.
    if (o.tol) {
      jr.tolerance = o.strict ? *o.tol : std::max(jr.tolerance, *o.tol);
    }
    const double err = jr.absolute ? jr.report.abs_err : jr.report.rel_err;
    const bool passed = err <= jr.tolerance;
    failed += passed ? 0 : 1;
    json j = hankel::io::identity_to_json(jr.report);
    j["tolerance"] = jr.tolerance;
    j["judged_by"] = jr.absolute ? "abs_err" : "rel_err";
    j["passed"] = passed;
    arr.push_back(std::move(j));
  }
  Sink sink(o.output);
  if (o.out == "csv") {
    auto& os = sink.report();
    os << "name,lhs,rhs,rel_err,abs_err,method,tail_bound,exponent10,tolerance,passed\n";
    for (const auto& j : arr) {
      os << '"' << j["name"].get<std::string>() << "\"," << hankel::io::format_double(j["lhs"].get<double>()) << ','
         << hankel::io::format_double(j["rhs"].get<double>()) << ','
         << hankel::io::format_double(j["rel_err"].get<double>()) << ','
         << hankel::io::format_double(j["abs_err"].get<double>()) << ',' << j["method"].get<std::string>() << ','
         << hankel::io::format_double(j["tail_bound"].get<double>()) << ',' << j["exponent10"].get<int>() << ','
         << hankel::io::format_double(j["tolerance"].get<double>()) << ',' << (j["passed"].get<bool>() ? 1 : 0)
         << '\n';
    }
  } else {
    json j;
    j["schema"] = hankel::io::schema_version;
    j["command"] = "verify-identities";
    j["suite"] = o.suite;
    j["reports"] = arr;
    j["failed"] = failed;
    j["passed"] = failed == 0;
    write_json(sink, j);
  }
  sink.summary() << "identities (" << o.suite << "): " << reports.size() << " checks, " << failed << " failed"
                 << (failed == 0 ? " PASS" : " FAIL") << '\n';
  return failed == 0 ? ok : check_failed;
}

int cmd_properness(const Options& o) {
  const hankel::FamilySpec spec = make_spec(o);
  if (!(o.epsilon > 0.0)) {
    throw config_error("--epsilon must be positive");
  }
  const hankel::ProperResult r = hankel::properness_integral(spec, o.epsilon);
  Sink sink(o.output);
  json j;
  j["schema"] = hankel::io::schema_version;
  j["command"] = "properness";
  j["spec"] = hankel::io::spec_to_json(spec);
  j["epsilon"] = o.epsilon;
  j["status"] = hankel::status_name(r.status);
  j["value"] = r.value;
  j["tail_bound"] = r.tail_bound;
  j["frontier"] = r.frontier;
  j["note"] = r.note;
  write_json(sink, j);
  sink.summary() << "properness integral " << hankel::describe(spec) << " block " << hankel::block_name(spec.block)
                 << " (epsilon " << o.epsilon << "): " << hankel::status_name(r.status);
  if (r.status == hankel::ProperStatus::finite) {
    sink.summary() << ", value " << hankel::io::format_double(r.value) << ", tail bound " << fmt(r.tail_bound);
  }
  if (!r.note.empty()) {
    sink.summary() << " (" << r.note << ")";
  }
  sink.summary() << '\n';
  switch (r.status) {
    case hankel::ProperStatus::finite:
      return ok;
    case hankel::ProperStatus::divergent:
      return check_failed;
    default:
      return inconclusive;
  }
}

// Compares an exported matrix with a fresh materialization of its spec.
json ingest_check(const std::string& path, bool& passed) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("cannot open ingest file '" + path + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw config_error("ingest file '" + path + "' is not valid JSON: " + e.what());
  }
  hankel::io::MatrixDocument m;
  try {
    m = hankel::io::matrix_from_json(doc);
  } catch (const json::exception& e) {
    throw config_error("ingest file '" + path + "': " + e.what());
  }
  hankel::MaterializeOptions mo;
  mo.strip_signs = m.strip_signs;
  const auto fresh = hankel::materialize<double>(m.spec, m.entries.size(), mo);
  double max_rel = 0.0;
  std::size_t mismatched = 0;
  for (std::size_t a = 0; a < fresh.size(); ++a) {
    for (std::size_t b = 0; b < fresh.size(); ++b) {
      const double x = m.entries(a, b), y = fresh(a, b);
      if (x != y) {
        ++mismatched;
        max_rel = std::max(max_rel, std::fabs(x - y) / std::max(std::fabs(y), 1e-300));
      }
    }
  }
  passed = mismatched == 0;
  return {{"file", path}, {"spec", hankel::io::spec_to_json(m.spec)}, {"size", fresh.size()},
          {"mismatched_entries", mismatched}, {"max_rel_diff", max_rel}, {"passed", passed}};
}

int cmd_report(const Options& o) {
  std::vector<int> ids = o.criteria;
  if (ids.empty() && o.ingest.empty()) {
    for (int i = 1; i <= hankel::acceptance::criterion_count; ++i) {
      ids.push_back(i);
    }
  }
  for (int id : ids) {
    if (id < 1 || id > hankel::acceptance::criterion_count) {
      throw config_error("--criteria entries must lie in 1.." + std::to_string(hankel::acceptance::criterion_count));
    }
  }
  bool all_passed = true;
  json j;
  j["schema"] = hankel::io::schema_version;
  j["command"] = "report";
  std::optional<json> ingest;
  if (!o.ingest.empty()) {
    bool passed = false;
    ingest = ingest_check(o.ingest, passed);
    all_passed = all_passed && passed;
    j["ingest"] = *ingest;
  }
  const auto results =
      parallel_map(ids.size(), thread_cap(), [&](std::size_t i) { return hankel::acceptance::run_criterion(ids[i]); });
  json crit = json::array();
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    crit.push_back({{"id", r.id},
                    {"title", r.title},
                    {"passed", r.passed},
                    {"worst", r.worst},
                    {"threshold", r.threshold},
                    {"time_limit", r.time_limit},
                    {"within_time_limit", r.time_limit <= 0.0 || r.seconds < r.time_limit},
                    {"detail", r.detail}});
  }
  j["criteria"] = crit;
  j["passed"] = all_passed;
  Sink sink(o.output);
  write_json(sink, j);
  auto& s = sink.summary();
  if (ingest) {
    s << "ingest " << o.ingest << ": " << ((*ingest)["passed"].get<bool>() ? "entries reproduced" : "MISMATCH") << '\n';
  }
  for (const auto& r : results) {
    s << "criterion " << std::setw(2) << r.id << ' ' << (r.passed ? "PASS" : "FAIL") << "  " << r.title << "  worst "
      << fmt(r.worst) << " / " << fmt(r.threshold) << ", " << std::fixed << std::setprecision(2) << r.seconds << " s"
      << std::defaultfloat << '\n';
  }
  return all_passed ? ok : check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of weighted Hankel matrices via commuting Jacobi matrices"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "materialize a leading truncation");
  add_family_flags(*build, o);
  add_output_flags(*build, o, true);
  build->add_option("--size", o.size, "truncation size (default N+1 for h4)");
  build->add_flag("--strip-signs", o.strip_signs, "conjugate by diag((-1)^n)");

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of nested truncations");
  add_family_flags(*spectrum, o);
  add_output_flags(*spectrum, o, true);
  spectrum->add_option("--size", o.size, "single truncation size");
  spectrum->add_option("--sizes", o.sizes, "truncation sizes")->delimiter(',');
  spectrum->add_flag("--strip-signs", o.strip_signs, "conjugate by diag((-1)^n)");
  spectrum->add_option("--density", o.density_path, "also write the spectral measure as CSV to this file");
  spectrum->add_option("--x-range", o.x_range, "density sampling range lo,hi")->delimiter(',')->expected(2);
  spectrum->add_option("--points", o.points, "density sample count");

  auto* commutation = app.add_subcommand("verify-commutation", "check [J, H] = 0 entrywise");
  add_family_flags(*commutation, o);
  add_output_flags(*commutation, o, false);
  add_tolerance_flags(*commutation, o);
  commutation->add_option("--max-index", o.max_index, "largest index n (clamped to N for h4)");

  auto* functional = app.add_subcommand("verify-functional", "check H P(x) = h(x) P(x) row by row");
  add_family_flags(*functional, o);
  add_output_flags(*functional, o, true);
  add_tolerance_flags(*functional, o);
  functional->add_option("--m-max", o.m_max, "largest row index");
  functional->add_option("--x", o.xs, "sample points")->delimiter(',');
  functional->add_option("--trunc", o.trunc, "column truncation");

  auto* identities = app.add_subcommand("verify-identities", "orthogonality, determinant and trace identities");
  add_output_flags(*identities, o, true);
  add_tolerance_flags(*identities, o);
  identities->add_option("--suite", o.suite, "all, orthogonality, determinant or trace")
      ->check(CLI::IsMember({"all", "orthogonality", "determinant", "trace"}));

  auto* properness = app.add_subcommand("properness", "integral sufficient condition for a unique self-adjoint operator");
  add_family_flags(*properness, o);
  add_output_flags(*properness, o, false);
  properness->add_option("--epsilon", o.epsilon, "exponential weight e^{epsilon |x|}");

  auto* report = app.add_subcommand("report", "acceptance suite and export ingestion");
  add_output_flags(*report, o, false);
  report->add_option("--criteria", o.criteria, "criterion ids to run (default all)")->delimiter(',');
  report->add_option("--ingest", o.ingest, "matrix JSON written by build --out json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : bad_config;
  }

  for (const CLI::App* sub : app.get_subcommands()) {
    o.active = sub;
  }

  try {
    if (*build) {
      return cmd_build(o);
    }
    if (*spectrum) {
      return cmd_spectrum(o);
    }
    if (*commutation) {
      return cmd_commutation(o);
    }
    if (*functional) {
      return cmd_functional(o);
    }
    if (*identities) {
      return cmd_identities(o);
    }
    if (*properness) {
      return cmd_properness(o);
    }
    return cmd_report(o);
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bad_config;
  } catch (const hankel::inconclusive_error& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return inconclusive;
  } catch (const hankel::eigen_error& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return inconclusive;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bad_config;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bad_config;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bad_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return check_failed;
  }
}

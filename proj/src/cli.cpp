#include "strength/cli.hpp"

#include "strength/analysis.hpp"
#include "strength/closedforms.hpp"
#include "strength/enumeration.hpp"
#include "strength/geometry.hpp"
#include "strength/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>

namespace strength {

namespace {

struct Row {
  std::string family;
  int n = 0;
  std::string facet;
  std::string k;
  std::string measure;
  std::string exact;
  double value = 0.0;
  std::string log10;
  std::string source;
};

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

std::vector<int> parse_ints(const std::string& text, std::size_t count, const std::string& what) {
  std::vector<int> out;
  for (const auto& s : split(text, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument(what + ": not an integer list: " + text);
    out.push_back(v);
  }
  if (out.size() != count) throw std::invalid_argument(what + " needs " + std::to_string(count) + " integers");
  return out;
}

std::string timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Metadata block written ahead of every data file.
struct Meta {
  std::string command_line;
  std::vector<std::pair<std::string, std::string>> config;
  bool stamp = false;
};

void write_meta_csv(std::ostream& os, const Meta& m) {
  os << "# strength " << kVersion << "\n";
  os << "# command: " << m.command_line << "\n";
  for (const auto& [key, value] : m.config) os << "# " << key << ": " << value << "\n";
  if (m.stamp) os << "# time: " << timestamp() << "\n";
}

nlohmann::ordered_json meta_json(const Meta& m) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["command"] = m.command_line;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : m.config) cfg[key] = value;
  j["config"] = cfg;
  if (m.stamp) j["time"] = timestamp();
  return nlohmann::ordered_json{{"meta", j}};
}

enum class Format { Csv, Jsonl };

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "jsonl") return Format::Jsonl;
  throw std::invalid_argument("unknown format: " + s);
}

void write_rows(std::ostream& os, const Meta& meta, const std::vector<Row>& rows, Format format, bool facet_columns) {
  if (format == Format::Jsonl) {
    os << meta_json(meta).dump() << "\n";
    for (const auto& r : rows) {
      nlohmann::ordered_json j;
      j["family"] = r.family;
      j["n"] = r.n;
      if (facet_columns) j["facet"] = r.facet;
      j["k"] = r.k;
      j["measure"] = r.measure;
      j["exact"] = r.exact;
      j["float"] = fmt_double(r.value);
      j["log10"] = r.log10;
      if (facet_columns) j["source"] = r.source;
      os << j.dump() << "\n";
    }
    return;
  }
  write_meta_csv(os, meta);
  os << (facet_columns ? "family,n,facet,k,measure,exact,float,log10,source\n" : "family,n,k,measure,exact,float,log10\n");
  for (const auto& r : rows) {
    os << r.family << "," << r.n << ",";
    if (facet_columns) os << r.facet << ",";
    os << csv_field(r.k) << "," << r.measure << "," << csv_field(r.exact) << "," << fmt_double(r.value) << ","
       << r.log10;
    if (facet_columns) os << "," << r.source;
    os << "\n";
  }
}

Row value_row(Family f, int n, const std::string& facet, const std::string& k, const std::string& measure,
              const IndicatorValue& v, const std::string& source) {
  return {to_string(f), n, facet, k, measure, v.exact_str(), v.to_double(), fmt_double(v.log10()), source};
}

Row rational_row(Family f, int n, const std::string& facet, const std::string& k, const std::string& measure,
                 const Rational& v, const std::string& source) {
  return value_row(f, n, facet, k, measure, IndicatorValue::from_exact(v), source);
}

Row float_row(Family f, int n, const std::string& facet, const std::string& k, const std::string& measure, double v,
              const std::string& source) {
  return {to_string(f), n, facet, k, measure, "", v, v > 0 ? fmt_double(std::log10(v)) : "", source};
}

// Output goes to a file when a path is given, else to out.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}
  std::ostream& stream() { return path_.empty() ? fallback_ : buffer_; }
  void commit() {
    if (path_.empty()) return;
    std::ofstream f(path_, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path_);
    f << buffer_.str();
    if (!f) throw std::runtime_error("cannot write " + path_);
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ostringstream buffer_;
};

struct Common {
  std::string format = "csv";
  std::string out;
  int threads = 1;
  bool stamp = false;
};

// compute

struct ComputeArgs {
  std::string family;
  int n = 0;
  std::string facet = "subtour";
  int k = 2;
  std::string comb;
  std::string measures = "epr,cd2";
  std::string angle;
  bool oracle = false;
  bool force = false;
  bool degrees = false;
};

std::vector<Row> compute_angle(const ComputeArgs& a, Family f) {
  if (f != Family::STHGP) throw std::invalid_argument("angles are available for sthgp only");
  auto pqr = parse_ints(a.angle, 3, "--angle");
  const int p = pqr[0], q = pqr[1], r = pqr[2];
  if (!valid_angle_tuple(a.n, p, q, r)) throw std::invalid_argument("invalid angle tuple for n=" + std::to_string(a.n));
  auto form = sthgp_subtour_angle(a.n, p, q, r);
  std::string exact;
  double cos_phi = form.cos_phi;
  BigInt root;
  if (mpz_perfect_square_p(form.denominator_squared.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), form.denominator_squared.get_mpz_t());
    Rational c(form.numerator, root);
    exact = c.str();
    cos_phi = to_double(c).value;
  } else {
    exact = to_string(form.numerator) + "/sqrt(" + to_string(form.denominator_squared) + ")";
  }
  const std::string tuple = std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r);
  std::vector<Row> rows;
  Row cos{to_string(f), a.n, "angle", tuple, "cos_phi", exact, cos_phi, "", "closed-form"};
  rows.push_back(cos);
  double theta = a.degrees ? form.theta * 180.0 / std::numbers::pi : form.theta;
  rows.push_back({to_string(f), a.n, "angle", tuple, a.degrees ? "theta_deg" : "theta_rad", "", theta, "",
                  "closed-form"});
  return rows;
}

std::vector<Row> compute_oracle(const ComputeArgs& a, const FacetSpec& spec, const std::vector<std::string>& measures,
                                const std::string& k_label) {
  auto pts = enumerate(spec.family, spec.n, a.force);
  auto h = build_facet(pts.indexer(), spec);
  auto C = centroid(pts);
  const std::string facet = to_string(spec.kind);
  std::vector<Row> rows;
  for (const auto& m : measures) {
    if (m == "epr") {
      Rational v(BigInt(static_cast<unsigned long>(count_incident(pts, h))),
                 BigInt(static_cast<unsigned long>(pts.size())));
      rows.push_back(rational_row(spec.family, spec.n, facet, k_label, m, v, "enumeration"));
      continue;
    }
    if (spec.family != Family::TSP) {
      // Exact projection onto the hyperplane within the affine hull.
      auto hull = affine_hull_equations(pts.indexer());
      Rational d2 = weak_cd<Rational>(to_exact(h.a), h.b, to_exact(hull[0].a), hull[0].b, C).distance_squared;
      IndicatorValue v = m == "cd2" ? IndicatorValue::from_exact(d2) : IndicatorValue::from_root({Rational(1), d2});
      rows.push_back(value_row(spec.family, spec.n, facet, k_label, m, v, "projection"));
    } else {
      auto on = incident_points(pts, h);
      HullMode mode = spec.kind == FacetKind::Comb3 ? HullMode::Affine : HullMode::Convex;
      double d2 = hull_distance(on, to_double(C), mode).distance_squared;
      rows.push_back(float_row(spec.family, spec.n, facet, k_label, m, m == "cd2" ? d2 : std::sqrt(d2), "qp"));
    }
  }
  return rows;
}

int cmd_compute(const ComputeArgs& a, const Common& c, const Meta& meta, std::ostream& out) {
  Family f = parse_family(a.family);
  std::vector<Row> rows;
  if (!a.angle.empty()) {
    rows = compute_angle(a, f);
  } else {
    FacetSpec spec{f, a.n, parse_facet_kind(a.facet), a.k, {}};
    std::string k_label = std::to_string(a.k);
    if (spec.kind == FacetKind::Comb3) {
      if (f != Family::TSP) throw std::invalid_argument("combs are available for tsp only");
      if (a.comb.empty()) throw std::invalid_argument("--comb b1,t1,b2,t2,b3,t3,h is required for combs");
      auto v = parse_ints(a.comb, 7, "--comb");
      CombConfig cc;
      cc.b = {v[0], v[2], v[4]};
      cc.t = {v[1], v[3], v[5]};
      cc.h = v[6];
      cc.o = a.n - (v[0] + v[1] + v[2] + v[3] + v[4] + v[5] + v[6]);
      spec.comb = cc;
      spec.k = 0;
      k_label = cc.str();
    } else if (spec.kind == FacetKind::NonNegativity && f == Family::TSP) {
      k_label = "2";
    }
    validate(spec);
    auto measures = split(a.measures, ',');
    for (const auto& m : measures)
      if (m != "epr" && m != "cd2" && m != "cd") throw std::invalid_argument("unknown measure: " + m);
    if (a.oracle) {
      rows = compute_oracle(a, spec, measures, k_label);
    } else if (spec.kind == FacetKind::Comb3) {
      Rational d2 = tsp_comb3_cd2(spec.comb);
      for (const auto& m : measures) {
        if (m == "epr") throw std::invalid_argument("comb epr has no closed form; use --oracle");
        IndicatorValue v = m == "cd2" ? IndicatorValue::from_exact(d2) : IndicatorValue::from_root({Rational(1), d2});
        rows.push_back(value_row(f, a.n, "comb", k_label, m, v, "closed-form"));
      }
    } else {
      for (const auto& m : measures)
        rows.push_back(value_row(f, a.n, a.facet, k_label, m, indicator(f, a.n, spec.kind, spec.k, parse_measure(m)),
                                 "closed-form"));
    }
  }
  Sink sink(c.out, out);
  write_rows(sink.stream(), meta, rows, parse_format(c.format), true);
  sink.commit();
  return kExitOk;
}

// validate

struct ValidateArgs {
  std::vector<std::string> families{"all"};
  int max_n = 0;
  bool angles = false;
  std::string measure;
  std::string mode = "both";
};

int cmd_validate(const ValidateArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  ValidationOptions o;
  o.families.clear();
  for (const auto& name : a.families) {
    if (name == "all") {
      o.families = {Family::TSP, Family::STGP, Family::STHGP};
      break;
    }
    o.families.push_back(parse_family(name));
  }
  o.max_n = a.max_n;
  o.measure = a.measure;
  if (!o.measure.empty() && o.measure != "count" && o.measure != "epr" && o.measure != "centroid" && o.measure != "cd")
    throw std::invalid_argument("unknown validation measure: " + o.measure);
  if (a.mode == "both") o.mode = ValidationMode::Both;
  else if (a.mode == "exact") o.mode = ValidationMode::Exact;
  else if (a.mode == "qp") o.mode = ValidationMode::Qp;
  else throw std::invalid_argument("unknown mode: " + a.mode);
  o.angles_only = a.angles;
  o.threads = c.threads;
  for (Family f : o.families) check_enumeration_guard(f, o.max_n > 0 ? o.max_n : default_max_n(f), false);

  auto start = std::chrono::steady_clock::now();
  auto results = run_validation(o);
  bool ok = true;
  int failed = 0;
  for (const auto& r : results) {
    std::string status = r.informational ? "NOTE" : r.passed ? "PASS" : "FAIL";
    if (!r.informational && !r.passed) {
      ok = false;
      ++failed;
    }
    out << status << "  " << r.name << "  cases=" << r.cases << "  max_dev=" << fmt_double(r.max_deviation);
    if (!r.detail.empty()) out << "  " << r.detail;
    out << "\n";
  }
  out << (ok ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  err << "validate took " << dt.count() << " s\n";
  return ok ? kExitOk : kExitValidation;
}

// sweep

struct SweepArgs {
  std::string family = "sthgp";
  int n = 0;
  std::string measure = "epr";
  std::string facet = "subtour";
  int threshold = 200;
  bool disagreement = false;
  bool scaled = false;
};

std::vector<Row> scaled_rows(const SweepResult& s) {
  std::vector<Row> rows;
  const std::string name = to_string(s.measure) + "_scaled";
  if (s.measure == Measure::EPR) {
    // log10 ratios divided so that the smallest becomes -1
    double lo = 0.0;
    for (const auto& r : s.rows) lo = std::min(lo, r.value.log10());
    for (const auto& r : s.rows) {
      double v = lo < 0 ? r.value.log10() / -lo : r.value.log10();
      rows.push_back({to_string(s.family), s.n, "", std::to_string(r.k), name, "", v, "", ""});
    }
  } else {
    double hi = 0.0;
    for (const auto& r : s.rows) hi = std::max(hi, r.value.to_double());
    for (const auto& r : s.rows)
      rows.push_back({to_string(s.family), s.n, "", std::to_string(r.k), name, "",
                      hi > 0 ? r.value.to_double() / hi : 0.0, "", ""});
  }
  return rows;
}

int cmd_sweep(const SweepArgs& a, const Common& c, const Meta& meta, std::ostream& out) {
  if (a.n < 2) throw std::invalid_argument("--n is required (n >= 2)");
  Format format = parse_format(c.format);
  SweepOptions opt;
  opt.facet = parse_facet_kind(a.facet);
  opt.log_threshold = a.threshold;
  opt.threads = c.threads;
  Sink sink(c.out, out);
  std::ostream& os = sink.stream();

  if (a.disagreement) {
    auto m = disagreement_matrix(a.n, opt);
    if (format == Format::Jsonl) {
      os << meta_json(meta).dump() << "\n";
    } else {
      write_meta_csv(os, meta);
      if (m.any_tie) os << "# ties: log-domain values within 1e-9 treated as equal\n";
      os << "k1,k2,disagree\n";
    }
    for (std::size_t i = 0; i < m.ks.size(); ++i)
      for (std::size_t j = 0; j < m.ks.size(); ++j) {
        if (format == Format::Jsonl) {
          os << nlohmann::ordered_json{{"k1", m.ks[i]}, {"k2", m.ks[j]}, {"disagree", m.disagree[i][j] ? 1 : 0}}.dump()
             << "\n";
        } else {
          os << m.ks[i] << "," << m.ks[j] << "," << (m.disagree[i][j] ? 1 : 0) << "\n";
        }
      }
    sink.commit();
    return kExitOk;
  }

  Family f = parse_family(a.family);
  std::vector<Row> rows;
  if (a.measure == "dx") {
    if (f != Family::STGP) throw std::invalid_argument("dx is available for stgp only");
    for (int k = 2; k <= a.n - 1; ++k) {
      auto d = stgp_delta_components(a.n, k);
      rows.push_back(rational_row(f, a.n, "", std::to_string(k), "dx_inside", d.dx_inside, ""));
      rows.push_back(rational_row(f, a.n, "", std::to_string(k), "dx_outside", d.dx_outside, ""));
    }
  } else {
    auto s = sweep(f, a.n, parse_measure(a.measure), opt);
    if (a.scaled) {
      rows = scaled_rows(s);
    } else {
      for (const auto& r : s.rows) rows.push_back(value_row(f, a.n, "", std::to_string(r.k), a.measure, r.value, ""));
    }
  }
  write_rows(os, meta, rows, format, false);
  sink.commit();
  return kExitOk;
}

// enumerate

struct EnumerateArgs {
  std::string family;
  int n = 0;
  bool force = false;
};

int cmd_enumerate(const EnumerateArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  Family f = parse_family(a.family);
  check_enumeration_guard(f, a.n, a.force);
  PointWriter::Format format;
  if (c.format == "bin") format = PointWriter::Format::Binary;
  else if (c.format == "text") format = PointWriter::Format::Text;
  else throw std::invalid_argument("enumerate format must be bin or text");
  if (format == PointWriter::Format::Binary && c.out.empty())
    throw std::invalid_argument("binary output needs --out");

  EdgeIndexer idx(f, a.n);
  std::ofstream file;
  std::ostream* os = &out;
  if (!c.out.empty()) {
    file.open(c.out, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + c.out);
    os = &file;
  }
  PointWriter writer(*os, idx, format);
  enumerate_points(idx, [&](std::span<const std::uint16_t> e) { writer.write(e); });
  writer.finish();
  if (!*os) throw std::runtime_error("write failed");
  err << writer.count() << " points\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strength indicators for facets of TSP, spanning tree and spanning hypertree polytopes", "strength"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  int default_threads = 1;
  if (const char* env = std::getenv("STRENGTH_THREADS")) {
    try {
      default_threads = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      err << "ignoring STRENGTH_THREADS=" << env << "\n";
    }
  }
  common.threads = default_threads;

  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", common.threads, "worker threads (default: STRENGTH_THREADS or 1)")
        ->check(CLI::PositiveNumber);
  };

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "evaluate indicators of one facet");
  compute->add_option("--family", ca.family, "tsp, stgp or sthgp")->required();
  compute->add_option("--n", ca.n, "number of vertices")->required();
  compute->add_option("--facet", ca.facet, "subtour, nonneg or comb");
  compute->add_option("--k", ca.k, "subtour size or hyperedge size");
  compute->add_option("--comb", ca.comb, "comb parts b1,t1,b2,t2,b3,t3,h");
  compute->add_option("--measure", ca.measures, "comma list of epr, cd2, cd");
  compute->add_option("--angle", ca.angle, "subtour pair p,q,r");
  compute->add_flag("--oracle", ca.oracle, "compute by enumeration instead of closed forms");
  compute->add_flag("--force", ca.force, "override the enumeration guard");
  compute->add_flag("--degrees", ca.degrees, "report angles in degrees");
  compute->add_option("--format", common.format, "csv or jsonl");
  compute->add_option("--out", common.out, "output file");

  ValidateArgs va;
  auto* validate_cmd = app.add_subcommand("validate", "cross-check closed forms against enumeration");
  validate_cmd->add_option("--family", va.families, "tsp, stgp, sthgp or all")->expected(1, 3);
  validate_cmd->add_option("--max-n", va.max_n, "largest n for enumeration checks");
  validate_cmd->add_flag("--angles", va.angles, "only the angle identities");
  validate_cmd->add_option("--measure", va.measure, "count, epr, centroid or cd");
  validate_cmd->add_option("--mode", va.mode, "exact, qp or both");
  add_threads(validate_cmd);

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "indicator values over all k");
  sweep_cmd->add_option("--family", sa.family, "tsp, stgp or sthgp");
  sweep_cmd->add_option("--n", sa.n, "number of vertices")->required();
  sweep_cmd->add_option("--measure", sa.measure, "epr, cd2, cd, or dx (stgp)");
  sweep_cmd->add_option("--facet", sa.facet, "subtour or nonneg");
  sweep_cmd->add_option("--threshold", sa.threshold, "n above which values are computed in log domain");
  sweep_cmd->add_flag("--disagreement", sa.disagreement, "sthgp epr/cd disagreement matrix");
  sweep_cmd->add_flag("--scaled", sa.scaled, "scale log ratios to min -1, distances to max 1");
  sweep_cmd->add_flag("--timestamp", common.stamp, "record wall-clock time in the metadata");
  sweep_cmd->add_option("--format", common.format, "csv or jsonl");
  sweep_cmd->add_option("--out", common.out, "output file");
  add_threads(sweep_cmd);

  EnumerateArgs ea;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "dump extreme points");
  enumerate_cmd->add_option("--family", ea.family, "tsp, stgp or sthgp")->required();
  enumerate_cmd->add_option("--n", ea.n, "number of vertices")->required();
  enumerate_cmd->add_option("--format", common.format, "bin or text")->default_str("text");
  enumerate_cmd->add_option("--out", common.out, "output file");
  enumerate_cmd->add_flag("--force", ea.force, "override the enumeration guard");

  auto* version = app.add_subcommand("version", "print the version");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Meta meta;
  meta.command_line = join(args, " ");
  meta.stamp = common.stamp;
  try {
    if (version->parsed()) {
      out << "strength " << kVersion << "\n";
      return kExitOk;
    }
    if (compute->parsed()) {
      meta.config = {{"family", ca.family}, {"n", std::to_string(ca.n)}, {"facet", ca.angle.empty() ? ca.facet : "angle"},
                     {"measure", ca.angle.empty() ? ca.measures : "cos_phi,theta"}, {"oracle", ca.oracle ? "yes" : "no"}};
      return cmd_compute(ca, common, meta, out);
    }
    if (validate_cmd->parsed()) {
      return cmd_validate(va, common, out, err);
    }
    if (sweep_cmd->parsed()) {
      meta.config = {{"family", sa.disagreement ? "sthgp" : sa.family},
                     {"n", std::to_string(sa.n)},
                     {"measure", sa.disagreement ? "disagreement" : sa.measure},
                     {"facet", sa.facet},
                     {"domain", sa.n > sa.threshold ? "log" : "exact"},
                     {"threads", std::to_string(common.threads)}};
      return cmd_sweep(sa, common, meta, out);
    }
    if (enumerate_cmd->parsed()) {
      if (common.format == "csv") common.format = "text";
      return cmd_enumerate(ea, common, out, err);
    }
  } catch (const ResourceGuardError& e) {
    err << "refused: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace strength

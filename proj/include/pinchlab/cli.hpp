#pragma once

#include "pinchlab/flow.hpp"
#include "pinchlab/parallel.hpp"
#include "pinchlab/pinching.hpp"
#include "pinchlab/report.hpp"
#include "pinchlab/sturm.hpp"
#include "pinchlab/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace pinchlab::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Manifest

inline std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Manifest {
  std::string command;
  std::map<std::string, std::string> parameters;  // sorted, so serialization is canonical
  std::string started;
  std::string finished;
  bool reproducible = false;

  [[nodiscard]] std::string canonical() const {
    std::string s = "command=" + command + "\n";
    for (const auto& [k, v] : parameters) s += k + "=" + v + "\n";
    return s;
  }
  [[nodiscard]] std::string digest() const { return fnv1a_hex(canonical()); }

  [[nodiscard]] Json to_json() const {
    Json params = Json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    Json j;
    j["command"] = command;
    j["parameters"] = params;
    j["started"] = reproducible ? "reproducible" : started;
    j["finished"] = reproducible ? "reproducible" : finished;
    j["version"] = kVersion;
    j["config_digest"] = "fnv1a64:" + digest();
    return j;
  }
};

/// Loads a flat key=value file or a manifest JSON into option values.
inline std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::map<std::string, std::string> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const std::exception& e) {
      throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    const Json& m = j.contains("manifest") ? j["manifest"] : j;
    if (m.contains("command")) out["command"] = m["command"].get<std::string>();
    if (m.contains("parameters"))
      for (const auto& [k, v] : m["parameters"].items()) out[k] = v.is_string() ? v.get<std::string>() : v.dump();
    return out;
  }
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto l = s.find_first_not_of(" \t\r");
      const auto r = s.find_last_not_of(" \t\r");
      return l == std::string::npos ? std::string() : s.substr(l, r - l + 1);
    };
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formatting helpers

inline std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string fmt12(long double x) { return fmt12(static_cast<double>(x)); }

inline std::pair<long, long> parse_range(const std::string& text, const std::string& what) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      long v = std::stol(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    long lo = std::stol(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    long hi = std::stol(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (lo > hi) throw UsageError(what + ": empty range '" + text + "'");
    return {lo, hi};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError(what + ": expected A..B, got '" + text + "'");
  }
}

inline Rational parse_rational(const std::string& text, const std::string& what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(what + ": " + e.what());
  }
}

inline std::string companion_json_path(const std::string& out) {
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return out.substr(0, dot) + ".json";
  return out + ".json";
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << content;
  if (!f) throw UsageError("failed writing '" + path + "'");
}

inline std::string manifest_comment(const Manifest& m) { return "# manifest: " + m.to_json().dump() + "\n"; }

inline Json report_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  Json j;
  j["name"] = r.name;
  j["passed"] = r.passed();
  j["checks"] = checks;
  j["findings"] = r.findings;
  return j;
}

// ---------------------------------------------------------------------------
// Command options

struct BoundsOptions {
  std::string n_range = "3..12";
  std::string k_range = "1..1";
  std::string delta = "1/100";
  std::string out;
};

struct VerifyOptions {
  std::string prop = "all";
  long k_max = 0;  // 0: per-proposition default
  long n_max = 0;
  long n_sweep_max = 1000;
  long n = 3;
  long k = 1;
  std::string alpha = "1";
  int samples = 60;
  std::string delta = "1/100";
  bool no_symbolic = false;
  std::string out;
};

struct FlowOptions {
  std::string space = "euclidean";
  int n = 3;
  int k = 1;
  std::string alpha = "1";
  std::string profile = "sphere:r0=1";
  int grid = 200;
  double safety = 0.2;
  double stop_ratio = 0.1;
  double t_end = 0;  // 0: run to the extinction threshold
  long snapshot_every = 50;
  std::string extinction_radius = "volume";
  bool strict = false;
  std::string out;
};

struct SturmOptions {
  std::string coeffs;
  std::string interval = "0,inf";
};

// ---------------------------------------------------------------------------
// bounds

inline int cmd_bounds(const BoundsOptions& o, Manifest& man, std::ostream& out, std::ostream& err) {
  const auto [n_lo, n_hi] = parse_range(o.n_range, "--n-range");
  const auto [k_lo, k_hi] = parse_range(o.k_range, "--k-range");
  const Rational delta = parse_rational(o.delta, "--delta");
  if (n_lo < 3) throw UsageError("--n-range: n >= 3 required");
  if (k_lo < 1) throw UsageError("--k-range: k >= 1 required");
  if (delta.sign() <= 0) throw UsageError("--delta must be positive");
  struct Pair {
    long n, k;
  };
  std::vector<Pair> pairs;
  for (long n = n_lo; n <= n_hi; ++n)
    for (long k = k_lo; k <= std::min(k_hi, n); ++k) pairs.push_back({n, k});
  if (pairs.empty()) throw UsageError("no (n,k) pairs with k <= n in the given ranges");

  struct Row {
    BoundsResult r;
    double ms = 0;
    std::string error;
  };
  auto rows = parallel_map(pairs.size(), [&](std::size_t i) {
    Row row;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      row.r = c1_combined(pairs[i].n, pairs[i].k, delta);
    } catch (const std::exception& e) {
      row.r.n = pairs[i].n;
      row.r.k = pairs[i].k;
      row.error = e.what();
    }
    row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
  });

  std::ostringstream csv;
  csv << "n,k,c0_lo,c0_hi,c2,c1,active_branch,iterations,elapsed_ms,c2_kind,c0_lo_exact,c0_hi_exact\n";
  Json results = Json::array();
  bool all_ok = true;
  std::vector<std::string> witnesses;
  for (const auto& row : rows) {
    const auto& r = row.r;
    if (!row.error.empty()) {
      all_ok = false;
      witnesses.push_back("(n=" + std::to_string(r.n) + ",k=" + std::to_string(r.k) + "): " + row.error);
      continue;
    }
    const bool lo_ok = nonpositive_on_positive_axis(build_q(r.k, r.n, r.c0_lo));
    const bool hi_ok = r.hi_is_initial_cap || q_positive_root_count(r.k, r.n, r.c0_hi) >= 1;
    if (!lo_ok || !hi_ok) {
      all_ok = false;
      witnesses.push_back("(n=" + std::to_string(r.n) + ",k=" + std::to_string(r.k) + "): bracket not certified");
    }
    const std::string branch = r.active == ActiveBound::c0 ? "c0" : "c2";
    const double ms = man.reproducible ? 0.0 : row.ms;
    csv << r.n << ',' << r.k << ',' << fmt12(r.c0_lo.to_double()) << ',' << fmt12(r.c0_hi.to_double()) << ','
        << fmt12(r.c2.value.to_long_double()) << ',' << fmt12(r.c1.to_long_double()) << ',' << branch << ','
        << r.iterations << ',' << fmt12(ms) << ',' << (r.c2.value.is_rational() ? "rational" : "surd") << ','
        << r.c0_lo.str() << ',' << r.c0_hi.str() << '\n';
    Json transcript = Json::array();
    for (const auto& s : r.transcript)
      transcript.push_back({{"alpha", s.alpha.str()}, {"positive_roots", s.positive_roots}, {"accepted", s.accepted}});
    Json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["delta"] = r.delta.str();
    j["c0_lo"] = r.c0_lo.str();
    j["c0_hi"] = r.c0_hi.str();
    j["c0_hi_is_initial_cap"] = r.hi_is_initial_cap;
    j["c2"] = r.c2.value.str();
    j["c2_branch"] = r.c2.branch;
    j["c2_decimal"] = fmt12(r.c2.value.to_long_double());
    j["c1"] = r.c1.str();
    j["c1_decimal"] = fmt12(r.c1.to_long_double());
    j["active_branch"] = branch;
    j["iterations"] = r.iterations;
    j["elapsed_ms"] = ms;
    j["transcript"] = transcript;
    j["findings"] = r.findings;
    results.push_back(j);
  }
  man.finished = utc_now();
  Json doc;
  doc["manifest"] = man.to_json();
  doc["results"] = results;
  doc["verdicts"] = {{"all_pairs_certified", all_ok}, {"witnesses", witnesses}};
  const std::string csv_text = manifest_comment(man) + csv.str();
  if (o.out.empty()) {
    out << csv_text;
  } else {
    write_file(o.out, csv_text);
    write_file(companion_json_path(o.out), doc.dump(2) + "\n");
    out << "wrote " << o.out << " and " << companion_json_path(o.out) << " (" << rows.size() << " rows)\n";
  }
  for (const auto& w : witnesses) err << "certification failure " << w << '\n';
  return all_ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// verify

inline int cmd_verify(const VerifyOptions& o, Manifest& man, std::ostream& out, std::ostream&) {
  static const std::vector<std::string> props = {"a1", "a3", "a3-sweep", "a4", "claim1", "sandwich", "all"};
  if (std::find(props.begin(), props.end(), o.prop) == props.end())
    throw UsageError("--prop must be one of a1, a3, a3-sweep, a4, claim1, sandwich, all");
  const Rational delta = parse_rational(o.delta, "--delta");
  if (delta.sign() <= 0) throw UsageError("--delta must be positive");
  const bool all = o.prop == "all";
  std::vector<Report> reports;
  try {
    if (all || o.prop == "a1") reports.push_back(verify_prop_a1(o.k_max > 0 ? o.k_max : 12));
    if (all || o.prop == "a3" || o.prop == "a3-sweep") {
      PropA3Options a3;
      a3.n_sweep_max = o.n_sweep_max;
      a3.fixtures = o.prop != "a3-sweep";
      a3.small_n = o.prop != "a3-sweep";
      a3.symbolic = o.prop != "a3-sweep" && !o.no_symbolic;
      reports.push_back(verify_prop_a3(a3));
    }
    if (all || o.prop == "a4") reports.push_back(verify_prop_a4(o.k_max > 0 ? o.k_max : 8, o.n_max > 0 ? o.n_max : 60));
    if (all || o.prop == "sandwich")
      reports.push_back(verify_alpha_sandwich(o.n_max > 0 ? o.n_max : 12, o.k_max > 0 ? o.k_max : 12, delta));
    if (all || o.prop == "claim1")
      reports.push_back(claim1_zero_order_check(o.n, o.k, parse_rational(o.alpha, "--alpha"), o.samples));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool ok = true;
  Json verdicts = Json::object();
  Json results = Json::array();
  for (const auto& r : reports) {
    out << r << '\n';
    ok = ok && r.passed();
    verdicts[r.name] = r.passed() ? "PASS" : "FAIL";
    results.push_back(report_json(r));
  }
  out << (ok ? "OVERALL: PASS" : "OVERALL: FAIL") << '\n';
  man.finished = utc_now();
  if (!o.out.empty()) {
    Json doc;
    doc["manifest"] = man.to_json();
    doc["results"] = results;
    doc["verdicts"] = verdicts;
    write_file(o.out, doc.dump(2) + "\n");
  }
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// flow

/// Largest alpha certified for the space: c0 in Euclidean space, min(c0, c2) in the sphere.
inline Surd certified_alpha_cap(int epsilon, int n, int k) {
  const BoundsResult b = epsilon == 0 ? c0_bisect(n, k) : c1_combined(n, k);
  return epsilon == 0 ? Surd(b.c0_lo) : b.c1;
}

inline int cmd_flow(const FlowOptions& o, Manifest& man, std::ostream& out, std::ostream& err) {
  FlowConfig cfg;
  if (o.space == "euclidean") cfg.epsilon = 0;
  else if (o.space == "sphere") cfg.epsilon = 1;
  else throw UsageError("--space must be euclidean or sphere");
  cfg.n = o.n;
  cfg.k = o.k;
  const Rational alpha_exact = parse_rational(o.alpha, "--alpha");
  cfg.alpha = alpha_exact.to_double();
  cfg.grid_points = o.grid;
  cfg.safety = o.safety;
  cfg.stop_ratio = o.stop_ratio;
  cfg.snapshot_every = o.snapshot_every;
  if (o.t_end > 0) cfg.t_end = o.t_end;
  if (o.extinction_radius == "u_min") cfg.extinction_radius = EffectiveRadius::u_min;
  else if (o.extinction_radius == "volume") cfg.extinction_radius = EffectiveRadius::volume;
  else throw UsageError("--extinction-radius must be u_min or volume");
  try {
    cfg.profile = Profile::parse(o.profile);
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.strict) {
    if (cfg.n < 3 || cfg.k > cfg.n) throw UsageError("--strict needs 1 <= k <= n, n >= 3");
    const Surd cap = certified_alpha_cap(cfg.epsilon, cfg.n, cfg.k);
    if (alpha_exact < Rational(1, cfg.k) || Surd(alpha_exact) > cap)
      throw UsageError("--strict: alpha=" + alpha_exact.str() + " lies outside the certified range [1/" +
                       std::to_string(cfg.k) + ", " + fmt12(cap.to_long_double()) + "]");
  }
  FlowState initial;
  try {
    initial = make_initial_state(cfg);
  } catch (const ConvexityLossError& e) {
    throw UsageError(std::string("initial profile is not strictly convex: ") + e.what());
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }

  const RunResult res = run_flow(cfg);
  const Report rep = assess_flow(res);

  std::ostringstream csv;
  csv << "t,tau,u_min,u_max,sigma_k_min,sigma_k_max,ratio_max,G_max,C31_monitor,rho_inner,rho_outer\n";
  for (const auto& m : res.snapshots)
    csv << fmt12(m.t) << ',' << fmt12(m.tau) << ',' << fmt12(m.u_min) << ',' << fmt12(m.u_max) << ','
        << fmt12(m.sigma_k_min) << ',' << fmt12(m.sigma_k_max) << ',' << fmt12(m.ratio_max) << ',' << fmt12(m.G_max)
        << ',' << fmt12(m.C31_monitor) << ',' << fmt12(m.rho_inner) << ',' << fmt12(m.rho_outer) << '\n';

  Json summary;
  summary["stop_reason"] = to_string(res.stop);
  summary["steps"] = res.final_state.steps;
  summary["t_final"] = res.final_state.t;
  summary["snapshots"] = res.snapshots.size();
  if (res.has_T_hat) {
    summary["T_hat"] = res.T_hat;
    const SphereModel model = SphereModel::of(cfg);
    summary["T_sphere_model_initial_u_min"] = model.time_to_extinction(res.snapshots.front().u_min);
    bool round = res.rescaled.front().gap == 0;
    if (!round) {
      const LineFit fit = gap_decay_fit(res.rescaled);
      summary["fitted_decay_rate"] = -fit.slope;
      summary["decay_fit_r2"] = fit.r2;
    }
    const auto& last = res.rescaled.back();
    summary["final_tau"] = last.tau;
    summary["final_u_tilde"] = {last.u_tilde_min, last.u_tilde_max};
  }
  summary["monitor"] = {{"max_rel_G_increase", res.monitor.max_rel_G_increase},
                        {"max_rel_sigma_min_decrease", res.monitor.max_rel_sigma_min_decrease},
                        {"initial_ratio", res.monitor.initial_ratio},
                        {"max_ratio", res.monitor.max_ratio},
                        {"initial_C31", res.monitor.initial_C31},
                        {"max_C31", res.monitor.max_C31}};
  if (!res.ok()) {
    summary["failure"] = res.failure;
    summary["last_state"] = {{"t", res.final_state.t}, {"u", res.final_state.u}};
  }
  Json verdicts = Json::object();
  for (const auto& c : rep.checks) verdicts[c.name] = c.passed ? "PASS" : "FAIL";
  man.finished = utc_now();
  Json doc;
  doc["manifest"] = man.to_json();
  doc["results"] = summary;
  doc["verdicts"] = verdicts;

  const std::string csv_text = manifest_comment(man) + csv.str();
  if (o.out.empty()) {
    out << rep;
    out << doc["results"].dump(2) << '\n';
  } else {
    write_file(o.out, csv_text);
    write_file(companion_json_path(o.out), doc.dump(2) + "\n");
    out << rep;
    out << "wrote " << o.out << " and " << companion_json_path(o.out) << '\n';
  }
  if (res.has_T_hat) out << "T_hat = " << fmt12(res.T_hat) << '\n';
  if (!res.ok()) err << "flow failed: " << res.failure << '\n';
  return rep.passed() ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// sturm

inline std::string signs_str(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::string(v[i] > 0 ? "+" : (v[i] < 0 ? "-" : "0"));
  return s + ")";
}

inline int cmd_sturm(const SturmOptions& o, Manifest&, std::ostream& out, std::ostream&) {
  if (o.coeffs.empty()) throw UsageError("--coeffs is required");
  std::vector<std::string> parts;
  std::stringstream ss(o.coeffs);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  Poly p;
  try {
    p = poly_from_strings(parts);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--coeffs: ") + e.what());
  }
  const auto comma = o.interval.find(',');
  if (comma == std::string::npos || o.interval.substr(comma + 1) != "inf")
    throw UsageError("--interval must be '0,inf' or 'a,inf'");
  const Rational left = parse_rational(o.interval.substr(0, comma), "--interval");
  if (p.is_zero()) throw UsageError("--coeffs: the zero polynomial has no finite root count");
  out << "p(x) = " << p << '\n';
  Poly q = p;
  Point left_point = Point::at(left);
  if (left.is_zero()) {
    const Deflated d = poly_deflate_zero_root(p);
    if (d.m > 0) out << "deflated x^" << d.m << ": q(x) = " << d.q << '\n';
    q = d.q;
    left_point = Point::zero_plus();
  } else if (p.eval(left).is_zero()) {
    throw UsageError("interval endpoint " + left.str() + " is a root of p");
  }
  int roots = 0;
  if (q.degree() >= 1) {
    const SturmSeq s = build_sturm(q);
    out << "sequence length " << s.size() << '\n';
    for (std::size_t i = 0; i < s.size(); ++i)
      out << "  p" << i << " (deg " << s.polys[i].degree() << ", scale " << s.scales[i] << ") = " << s.polys[i] << '\n';
    const auto sl = s.signs(left_point);
    const auto si = s.signs(Point::infinity());
    out << "signs at " << left_point.str() << ": " << signs_str(sl) << "  changes " << count_sign_changes(sl) << '\n';
    out << "signs at +inf: " << signs_str(si) << "  changes " << count_sign_changes(si) << '\n';
    roots = count_sign_changes(sl) - count_sign_changes(si);
  } else {
    out << "constant after deflation: no roots\n";
  }
  out << "distinct real roots in (" << left.str() << ", inf): " << roots << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// Entry point

/// Prepends config-file values as flags so that later command-line flags override them.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (path.empty()) return args;
  auto values = load_config(path);
  static const std::vector<std::string> commands = {"bounds", "verify", "flow", "sturm"};
  std::size_t cmd_pos = 0;
  for (std::size_t i = 1; i < args.size() && cmd_pos == 0; ++i)
    if (std::find(commands.begin(), commands.end(), args[i]) != commands.end()) cmd_pos = i;
  if (cmd_pos == 0) {
    if (!values.count("command")) throw UsageError("config file names no command and none was given");
    args.insert(args.begin() + 1, values["command"]);
    cmd_pos = 1;
  }
  values.erase("command");
  std::vector<std::string> injected;
  for (const auto& [k, v] : values) {
    if (v == "true") injected.push_back("--" + k);
    else if (v != "false" && !v.empty()) injected.push_back("--" + k + "=" + v);
  }
  args.insert(args.begin() + static_cast<long>(cmd_pos) + 1, injected.begin(), injected.end());
  return args;
}

inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    args = expand_config(std::move(args));
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App app{"Exact pinching constants for sigma_k^alpha flows and an axisymmetric flow simulator"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));
  bool reproducible = false;
  app.add_flag("--reproducible", reproducible, "Fixed manifest timestamps and zero timings for byte-identical output");
  app.add_option("--config", "Key=value file or manifest JSON (flags override file values)");

  BoundsOptions bo;
  auto* bounds = app.add_subcommand("bounds", "Certified c0 by exact bisection, with c2 and c1");
  bounds->add_option("--n-range", bo.n_range, "n range A..B")->capture_default_str();
  bounds->add_option("--k-range", bo.k_range, "k range A..B (pairs with k > n are skipped)")->capture_default_str();
  bounds->add_option("--delta", bo.delta, "Bisection precision (rational or decimal)")->capture_default_str();
  bounds->add_option("--out", bo.out, "CSV output path; JSON goes next to it");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Machine verification reports");
  verify->add_option("--prop", vo.prop, "a1, a3, a3-sweep, a4, claim1, sandwich or all")->capture_default_str();
  verify->add_option("--k-max", vo.k_max, "Largest k (a1: 12, a4: 8, sandwich: 12)");
  verify->add_option("--n-max", vo.n_max, "Largest n (a4 direct gate: 60, sandwich: 12)");
  verify->add_option("--n-sweep-max", vo.n_sweep_max, "Upper end of the exact sweep")->capture_default_str();
  verify->add_option("--n", vo.n, "claim1: n")->capture_default_str();
  verify->add_option("--k", vo.k, "claim1: k")->capture_default_str();
  verify->add_option("--alpha", vo.alpha, "claim1: alpha (rational)")->capture_default_str();
  verify->add_option("--samples", vo.samples, "claim1: grid points per axis")->capture_default_str();
  verify->add_option("--delta", vo.delta, "sandwich: bisection precision")->capture_default_str();
  verify->add_flag("--no-symbolic", vo.no_symbolic, "a3: skip the Sturm sequence over Q(n)");
  verify->add_option("--out", vo.out, "JSON report path");

  FlowOptions fo;
  auto* flow = app.add_subcommand("flow", "Simulate the axisymmetric sigma_k^alpha flow");
  flow->add_option("--space", fo.space, "euclidean or sphere")->capture_default_str();
  flow->add_option("--n", fo.n, "Hypersurface dimension")->capture_default_str();
  flow->add_option("--k", fo.k, "Order of sigma_k")->capture_default_str();
  flow->add_option("--alpha", fo.alpha, "Power alpha (rational or decimal)")->capture_default_str();
  flow->add_option("--profile", fo.profile, "sphere:r0=R or perturbed:r0=R,e=E")->capture_default_str();
  flow->add_option("--grid", fo.grid, "Grid intervals M on [0, pi] (even)")->capture_default_str();
  flow->add_option("--safety", fo.safety, "Explicit step safety factor")->capture_default_str();
  flow->add_option("--stop-ratio", fo.stop_ratio, "Stop when u_min falls below this fraction of its start")
      ->capture_default_str();
  flow->add_option("--t-end", fo.t_end, "Stop at this time instead (0: off)")->capture_default_str();
  flow->add_option("--snapshot-every", fo.snapshot_every, "Steps between snapshots")->capture_default_str();
  flow->add_option("--extinction-radius", fo.extinction_radius, "u_min or volume")->capture_default_str();
  flow->add_flag("--strict", fo.strict, "Reject alpha outside the certified range");
  flow->add_option("--out", fo.out, "CSV output path; JSON goes next to it");

  SturmOptions so;
  auto* sturm = app.add_subcommand("sturm", "Sturm sequence and root count of a rational polynomial");
  sturm->add_option("--coeffs", so.coeffs, "Comma-separated coefficients, ascending degree")->required();
  sturm->add_option("--interval", so.interval, "0,inf or a,inf")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  Manifest man;
  man.reproducible = reproducible;
  man.started = utc_now();
  CLI::App* sub = app.get_subcommands().front();
  man.command = sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->get_lnames().empty() || opt->get_lnames().front() == "out") continue;
    std::string value;
    if (opt->get_expected_min() == 0) value = opt->count() > 0 ? "true" : "false";
    else if (opt->count() > 0) value = opt->as<std::string>();
    else value = opt->get_default_str();
    man.parameters[opt->get_lnames().front()] = value;
  }

  try {
    if (man.command == "bounds") return cmd_bounds(bo, man, out, err);
    if (man.command == "verify") return cmd_verify(vo, man, out, err);
    if (man.command == "flow") return cmd_flow(fo, man, out, err);
    return cmd_sturm(so, man, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << '\n';
    return kCheckFailed;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace pinchlab::cli

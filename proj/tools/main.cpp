// Command-line front end: verification suites and determinant evaluations
// for the open-chain scalar-product library. Reports are JSON with a stable
// key order and are deterministic for a fixed config and seed; progress and
// timing go to stderr only.

#include <CLI11.hpp>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include <openxyz/bethe.hpp>
#include <openxyz/determinant.hpp>
#include <openxyz/errors.hpp>
#include <openxyz/suites.hpp>
#include <openxyz/vertex.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using oxyz::cx;
using oxyz::ConfigError;
using oxyz::ModelParams;
using oxyz::ScalarKind;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << x;
  return os.str();
}

cx cx_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return cx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cx(j[0].get<double>(), j[1].get<double>());
  throw ConfigError(what + " must be a number or a [re, im] pair");
}

json cx_to_json(cx v) { return json::array({v.real(), v.imag()}); }

std::vector<cx> cx_list_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array");
  std::vector<cx> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(cx_from_json(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

json cx_list_to_json(const std::vector<cx>& v) {
  json out = json::array();
  for (cx x : v) out.push_back(cx_to_json(x));
  return out;
}

cx parse_cx_token(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw ConfigError("cannot parse complex value: " + s);
  if (in >> comma) {
    if (comma != ',' || !(in >> im))
      throw ConfigError("cannot parse complex value: " + s);
  }
  std::string rest;
  if (in >> rest) throw ConfigError("cannot parse complex value: " + s);
  return cx(re, im);
}

std::string kind_name(ScalarKind k) {
  switch (k) {
    case ScalarKind::I_II: return "I-II";
    case ScalarKind::II_I: return "II-I";
    case ScalarKind::I_I: return "I-I";
    case ScalarKind::II_II: return "II-II";
  }
  return "?";
}

struct KindInfo {
  ScalarKind kind;
  bool mixed;
};

// Full tokens name the dual/state pairing directly; the bare family tokens
// are shorthands: for partition-style evaluations they select the mixed
// pairing of that family, for norms and solving they select the matching
// on-shell pairing.
KindInfo parse_kind(const std::string& token, bool onshell_context) {
  if (token == "I-II") return {ScalarKind::I_II, true};
  if (token == "II-I") return {ScalarKind::II_I, true};
  if (token == "I-I") return {ScalarKind::I_I, false};
  if (token == "II-II") return {ScalarKind::II_II, false};
  if (token == "I")
    return onshell_context ? KindInfo{ScalarKind::I_I, false}
                           : KindInfo{ScalarKind::I_II, true};
  if (token == "II")
    return onshell_context ? KindInfo{ScalarKind::II_II, false}
                           : KindInfo{ScalarKind::II_I, true};
  throw ConfigError("unknown kind token: " + token +
                    " (expected I, II, I-I, II-II, I-II, or II-I)");
}

struct Cli {
  std::string config_path;
  std::vector<std::string> suites;
  int nsites = 0;
  int mroots = -1;
  std::string kind;
  std::vector<std::string> u_flags;
  bool solve = false;
  bool force = false;
  long long seed = -1;
  std::string out_path;
  std::string out_csv;
  std::vector<std::string> tol_flags;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml")
    throw ConfigError(
        "TOML configs are not supported by this build; supply the same keys "
        "as a JSON file");
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const std::exception& ex) {
    throw ConfigError("config parse error in " + path + ": " + ex.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  return j;
}

int cfg_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ConfigError(what + " must be an integer");
  return j.get<int>();
}

double cfg_num(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

// Everything a command needs, resolved from the config file with flags
// taking precedence.
struct Resolved {
  json model_over = json::object();
  int nsites = 4;
  int mroots = 2;
  bool n_given = false;
  unsigned seed = 1234;
  bool solve = false;
  bool force = false;
  std::string kind_token;
  std::vector<cx> u;
  std::vector<cx> roots;
  bool u_given = false;
  bool roots_given = false;
  std::vector<std::string> suites;
  std::vector<int> sizes;
  std::map<std::string, double> tol;
  oxyz::SolverConfig solver;
  json solver_json = json::object();
};

Resolved resolve(const Cli& cli, const json& cfg) {
  Resolved r;
  if (cfg.contains("model")) {
    if (!cfg["model"].is_object())
      throw ConfigError("config key 'model' must be an object");
    r.model_over = cfg["model"];
  }

  int n = 0, m = -1;
  if (cfg.contains("N")) n = cfg_int(cfg["N"], "config key 'N'");
  if (cfg.contains("M")) m = cfg_int(cfg["M"], "config key 'M'");
  if (cli.nsites > 0) n = cli.nsites;
  if (cli.mroots >= 0) m = cli.mroots;
  if (n == 0 && m > 0) n = 2 * m;
  if (n == 0) n = 4;
  if (n <= 0 || n % 2 != 0)
    throw ConfigError("N must be a positive even integer, got " +
                      std::to_string(n));
  if (m >= 0 && m != n / 2)
    throw ConfigError("M must equal N/2 for these states (N=" +
                      std::to_string(n) + ", M=" + std::to_string(m) + ")");
  r.nsites = n;
  r.mroots = n / 2;
  r.n_given = cli.nsites > 0 || cfg.contains("N") || cfg.contains("M") ||
              cli.mroots >= 0;

  if (cfg.contains("seed"))
    r.seed = static_cast<unsigned>(cfg_int(cfg["seed"], "config key 'seed'"));
  if (cli.seed >= 0) r.seed = static_cast<unsigned>(cli.seed);

  r.solve = cli.solve || (cfg.contains("solve") && cfg["solve"].is_boolean() &&
                          cfg["solve"].get<bool>());
  r.force = cli.force || (cfg.contains("force") && cfg["force"].is_boolean() &&
                          cfg["force"].get<bool>());

  if (cfg.contains("kind")) {
    if (!cfg["kind"].is_string())
      throw ConfigError("config key 'kind' must be a string");
    r.kind_token = cfg["kind"].get<std::string>();
  }
  if (!cli.kind.empty()) r.kind_token = cli.kind;

  if (cfg.contains("u")) {
    r.u = cx_list_from_json(cfg["u"], "config key 'u'");
    r.u_given = true;
  }
  if (!cli.u_flags.empty()) {
    r.u.clear();
    for (const auto& s : cli.u_flags) r.u.push_back(parse_cx_token(s));
    r.u_given = true;
  }
  if (cfg.contains("roots")) {
    r.roots = cx_list_from_json(cfg["roots"], "config key 'roots'");
    r.roots_given = true;
  }

  if (cfg.contains("suites")) {
    if (!cfg["suites"].is_array())
      throw ConfigError("config key 'suites' must be an array of strings");
    for (const auto& s : cfg["suites"]) {
      if (!s.is_string())
        throw ConfigError("config key 'suites' must be an array of strings");
      r.suites.push_back(s.get<std::string>());
    }
  }
  if (!cli.suites.empty()) r.suites = cli.suites;

  if (cfg.contains("sizes")) {
    if (!cfg["sizes"].is_array())
      throw ConfigError("config key 'sizes' must be an array of integers");
    for (const auto& s : cfg["sizes"])
      r.sizes.push_back(cfg_int(s, "config key 'sizes'"));
  }
  if (cli.nsites > 0) r.sizes = {cli.nsites};

  if (cfg.contains("tol")) {
    if (!cfg["tol"].is_object())
      throw ConfigError("config key 'tol' must be an object");
    for (const auto& [k, v] : cfg["tol"].items())
      r.tol[k] = cfg_num(v, "config key 'tol." + k + "'");
  }
  for (const auto& s : cli.tol_flags) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("--tol expects NAME=VALUE, got: " + s);
    try {
      std::size_t used = 0;
      const double val = std::stod(s.substr(eq + 1), &used);
      if (used != s.size() - eq - 1) throw std::invalid_argument(s);
      r.tol[s.substr(0, eq)] = val;
    } catch (const std::exception&) {
      throw ConfigError("--tol expects NAME=VALUE, got: " + s);
    }
  }

  if (cfg.contains("solver")) {
    const json& sj = cfg["solver"];
    if (!sj.is_object())
      throw ConfigError("config key 'solver' must be an object");
    r.solver_json = sj;
    if (sj.contains("max_iter"))
      r.solver.max_iter = cfg_int(sj["max_iter"], "solver.max_iter");
    if (sj.contains("tol")) r.solver.tol = cfg_num(sj["tol"], "solver.tol");
    if (sj.contains("damping"))
      r.solver.damping = cfg_num(sj["damping"], "solver.damping");
    if (sj.contains("seeds"))
      r.solver.seeds = cfg_int(sj["seeds"], "solver.seeds");
    if (sj.contains("min_separation"))
      r.solver.min_separation =
          cfg_num(sj["min_separation"], "solver.min_separation");
    if (sj.contains("dedup_tol"))
      r.solver.dedup_tol = cfg_num(sj["dedup_tol"], "solver.dedup_tol");
    if (sj.contains("rng_seed"))
      r.solver.rng_seed = static_cast<unsigned>(
          cfg_int(sj["rng_seed"], "solver.rng_seed"));
  }
  return r;
}

// Fixture parameters at the requested size with any config overrides
// applied. In strict mode a z list of the wrong length is an error; the
// multi-size verify path instead keeps the fixture inhomogeneities there.
ModelParams model_from(const json& over, int sites, bool strict) {
  ModelParams p = ModelParams::fixture(sites);
  if (over.contains("tau")) p.tau = cx_from_json(over["tau"], "model.tau");
  if (over.contains("eta")) p.eta = cx_from_json(over["eta"], "model.eta");
  if (over.contains("lambda1"))
    p.lambda1 = cx_from_json(over["lambda1"], "model.lambda1");
  if (over.contains("lambda2"))
    p.lambda2 = cx_from_json(over["lambda2"], "model.lambda2");
  if (over.contains("xi")) p.xi = cx_from_json(over["xi"], "model.xi");
  if (over.contains("xibar"))
    p.xibar = cx_from_json(over["xibar"], "model.xibar");
  if (over.contains("z")) {
    auto zs = cx_list_from_json(over["z"], "model.z");
    if (static_cast<int>(zs.size()) == sites)
      p.z = zs;
    else if (strict)
      throw ConfigError("model.z has " + std::to_string(zs.size()) +
                        " entries but N is " + std::to_string(sites));
  }
  return p;
}

json model_to_json(const ModelParams& p) {
  json j = json::object();
  j["tau"] = cx_to_json(p.tau);
  j["eta"] = cx_to_json(p.eta);
  j["lambda1"] = cx_to_json(p.lambda1);
  j["lambda2"] = cx_to_json(p.lambda2);
  j["xi"] = cx_to_json(p.xi);
  j["xibar"] = cx_to_json(p.xibar);
  j["z"] = cx_list_to_json(p.z);
  return j;
}

std::vector<cx> draw_points(unsigned seed, const std::string& tag,
                            int count) {
  std::mt19937_64 g(seed + fnv1a(tag));
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  std::vector<cx> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double re = 0.6 * unit(g);
    const double im = 0.25 * unit(g);
    out.emplace_back(re, im);
  }
  return out;
}

json tol_to_json(const std::map<std::string, double>& tol) {
  json j = json::object();
  for (const auto& [k, v] : tol) j[k] = v;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file: " + path);
  f << text;
}

void emit_report(json& report, const Cli& cli) {
  report["digest"] = hex64(fnv1a(report["inputs"].dump()));
  std::string text = report.dump(2);
  text += "\n";
  if (cli.out_path.empty()) {
    std::cout << text;
  } else {
    write_text(cli.out_path, text);
    std::cerr << "report written to " << cli.out_path << "\n";
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Picks the first canonical solver set that the determinant formulas accept.
struct SolveOutcome {
  std::vector<cx> v;
  double residual = 0.0;
  int sets_found = 0;
  int generic_sets = 0;
};

SolveOutcome solve_roots(const ModelParams& p, oxyz::BetheFamily fam, int m,
                         const oxyz::SolverConfig& cfg) {
  const auto sets = oxyz::solve_bae(p, fam, m, cfg);
  SolveOutcome out;
  out.sets_found = static_cast<int>(sets.size());
  for (const auto& s : sets) {
    if (!oxyz::roots_generic(p, s.v)) continue;
    if (out.generic_sets == 0) {
      out.v = s.v;
      out.residual = s.residual;
    }
    ++out.generic_sets;
  }
  if (out.generic_sets == 0)
    throw oxyz::NonConvergent(
        "solver found no on-shell root sets the determinant formulas "
        "accept");
  return out;
}

int cmd_verify(const Resolved& r, const Cli& cli) {
  std::vector<std::string> names =
      r.suites.empty() ? oxyz::suite_names() : r.suites;
  const auto known = oxyz::suite_names();
  for (const auto& n : names)
    if (std::find(known.begin(), known.end(), n) == known.end())
      throw ConfigError("unknown suite: " + n);

  oxyz::SuiteOptions opt;
  const json over = r.model_over;
  opt.model = [over](int sites) { return model_from(over, sites, false); };
  opt.sizes = r.sizes;
  opt.seed = r.seed;
  opt.solver = r.solver;
  opt.tol = r.tol;

  json records = json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& name : names) {
    const auto results = oxyz::run_suite(name, opt);
    int spass = 0;
    double ms = 0.0;
    for (const auto& c : results) {
      json rec = json::object();
      rec["suite"] = c.suite;
      rec["check"] = c.name;
      rec["pass"] = c.pass;
      rec["skipped"] = c.skipped;
      rec["residual"] = c.residual;
      rec["tol"] = c.tol;
      rec["detail"] = c.detail;
      records.push_back(rec);
      if (c.skipped)
        ++skipped;
      else if (c.pass)
        ++passed;
      else
        ++failed;
      if (c.pass || c.skipped) ++spass;
      ms += c.wall_ms;
    }
    std::ostringstream line;
    line << "suite " << name << ": " << spass << "/" << results.size()
         << " checks ok (" << std::fixed << std::setprecision(1) << ms
         << " ms)";
    std::cerr << line.str() << "\n";
  }

  json report = json::object();
  report["command"] = "verify";
  json inputs = json::object();
  inputs["suites"] = names;
  inputs["sizes"] = r.sizes;
  inputs["seed"] = r.seed;
  inputs["model"] = r.model_over;
  inputs["solver"] = r.solver_json;
  inputs["tol"] = tol_to_json(r.tol);
  report["inputs"] = inputs;
  report["records"] = records;
  json summary = json::object();
  summary["checks"] = passed + failed + skipped;
  summary["passed"] = passed;
  summary["failed"] = failed;
  summary["skipped"] = skipped;
  report["summary"] = summary;
  report["status"] = failed == 0 ? "pass" : "fail";
  emit_report(report, cli);

  if (!cli.out_csv.empty()) {
    std::ostringstream csv;
    csv << "suite,check,pass,skipped,residual,tol,detail\n";
    for (const auto& rec : records)
      csv << rec["suite"].get<std::string>() << ','
          << rec["check"].get<std::string>() << ','
          << (rec["pass"].get<bool>() ? "true" : "false") << ','
          << (rec["skipped"].get<bool>() ? "true" : "false") << ','
          << fmt(rec["residual"].get<double>()) << ','
          << fmt(rec["tol"].get<double>()) << ','
          << csv_quote(rec["detail"].get<std::string>()) << '\n';
    write_text(cli.out_csv, csv.str());
  }
  return failed == 0 ? 0 : 1;
}

json oracle_entry(const ModelParams& p, ScalarKind kind,
                  const std::vector<cx>& u, const std::vector<cx>& v,
                  cx value, json& warnings) {
  if (p.N() > 6) return json("too large");
  const cx ladder = oxyz::scalar_product_ladder(p, kind, u, v);
  const double gap =
      std::abs(value - ladder) / std::max(std::abs(ladder), 1e-30);
  json j = json::object();
  j["value"] = cx_to_json(ladder);
  j["gap"] = gap;
  if (gap > 1e-6)
    warnings.push_back("determinant and direct ladder evaluation disagree "
                       "(relative gap " +
                       sci(gap) + ")");
  return j;
}

int cmd_scalar(const Resolved& r, const Cli& cli) {
  if (r.kind_token.empty())
    throw ConfigError("scalar requires --kind (or config key 'kind')");
  const KindInfo ki = parse_kind(r.kind_token, false);
  const int m = r.mroots;
  ModelParams p = model_from(r.model_over, r.nsites, true);
  p.require_valid();

  std::vector<cx> u = r.u;
  if (!r.u_given) u = draw_points(r.seed, "scalar-u", m);
  if (static_cast<int>(u.size()) != m)
    throw ConfigError("expected " + std::to_string(m) + " u values, got " +
                      std::to_string(u.size()));

  json warnings = json::array();
  json solver_info;
  std::vector<cx> v = r.roots;
  if (ki.mixed) {
    if (r.solve)
      throw ConfigError(
          "mixed kinds carry no on-shell condition; give 'roots' in the "
          "config or pick kind I-I or II-II for --solve");
    if (!r.roots_given) v = draw_points(r.seed, "scalar-v", m);
  } else if (r.solve) {
    const auto fam = oxyz::family_of(ki.kind);
    const auto sol = solve_roots(p, fam, m, r.solver);
    v = sol.v;
    solver_info = json::object();
    solver_info["sets_found"] = sol.sets_found;
    solver_info["generic_sets"] = sol.generic_sets;
    solver_info["residual"] = sol.residual;
  } else if (!r.roots_given) {
    throw ConfigError(
        "kind " + kind_name(ki.kind) +
        " needs on-shell roots: give 'roots' in the config or pass --solve");
  }
  if (static_cast<int>(v.size()) != m)
    throw ConfigError("expected " + std::to_string(m) + " roots, got " +
                      std::to_string(v.size()));

  oxyz::DetValue det{};
  if (ki.mixed) {
    std::vector<cx> ubar = u;
    ubar.insert(ubar.end(), v.begin(), v.end());
    det = oxyz::partition_function(p, ki.kind, ubar);
  } else {
    const auto fam = oxyz::family_of(ki.kind);
    const double resid = oxyz::bae_residual_norm(p, fam, v);
    if (r.force && resid > 1e-8)
      warnings.push_back("roots are off shell (equation residual " +
                         sci(resid) +
                         "); the determinant no longer represents the "
                         "scalar product");
    det = oxyz::scalar_product_det(p, ki.kind, u, v, r.force);
  }

  json report = json::object();
  report["command"] = "scalar";
  json inputs = json::object();
  inputs["kind"] = kind_name(ki.kind);
  inputs["N"] = p.N();
  inputs["M"] = m;
  inputs["model"] = model_to_json(p);
  inputs["u"] = cx_list_to_json(u);
  inputs["roots"] = cx_list_to_json(v);
  inputs["solve"] = r.solve;
  inputs["force"] = r.force;
  inputs["seed"] = r.seed;
  report["inputs"] = inputs;
  json results = json::object();
  results["value"] = cx_to_json(det.value);
  results["condition"] = det.condition;
  if (!solver_info.is_null()) results["solver"] = solver_info;
  results["oracle"] = oracle_entry(p, ki.kind, u, v, det.value, warnings);
  results["warnings"] = warnings;
  report["results"] = results;
  report["status"] = "ok";
  emit_report(report, cli);

  if (!cli.out_csv.empty()) {
    std::ostringstream csv;
    csv << "kind,M,value_re,value_im,condition\n"
        << kind_name(ki.kind) << ',' << m << ',' << fmt(det.value.real())
        << ',' << fmt(det.value.imag()) << ',' << fmt(det.condition) << '\n';
    write_text(cli.out_csv, csv.str());
  }
  return 0;
}

int cmd_norm(const Resolved& r, const Cli& cli) {
  if (r.kind_token.empty())
    throw ConfigError("norm requires --kind (or config key 'kind')");
  const KindInfo ki = parse_kind(r.kind_token, true);
  if (ki.mixed)
    throw ConfigError("norms are defined for kinds I-I and II-II only");
  const int m = r.mroots;
  ModelParams p = model_from(r.model_over, r.nsites, true);
  p.require_valid();

  json warnings = json::array();
  json solver_info;
  std::vector<cx> v = r.roots;
  if (r.solve) {
    const auto fam = oxyz::family_of(ki.kind);
    const auto sol = solve_roots(p, fam, m, r.solver);
    v = sol.v;
    solver_info = json::object();
    solver_info["sets_found"] = sol.sets_found;
    solver_info["generic_sets"] = sol.generic_sets;
    solver_info["residual"] = sol.residual;
  } else if (!r.roots_given) {
    throw ConfigError(
        "norm needs on-shell roots: give 'roots' in the config or pass "
        "--solve");
  }
  if (static_cast<int>(v.size()) != m)
    throw ConfigError("expected " + std::to_string(m) + " roots, got " +
                      std::to_string(v.size()));

  const auto fam = oxyz::family_of(ki.kind);
  const double resid = oxyz::bae_residual_norm(p, fam, v);
  if (r.force && resid > 1e-8)
    warnings.push_back("roots are off shell (equation residual " +
                       sci(resid) +
                       "); the determinant no longer represents the norm");
  const oxyz::DetValue det = oxyz::norm_det(p, ki.kind, v, r.force);

  json report = json::object();
  report["command"] = "norm";
  json inputs = json::object();
  inputs["kind"] = kind_name(ki.kind);
  inputs["N"] = p.N();
  inputs["M"] = m;
  inputs["model"] = model_to_json(p);
  inputs["roots"] = cx_list_to_json(v);
  inputs["solve"] = r.solve;
  inputs["force"] = r.force;
  inputs["seed"] = r.seed;
  report["inputs"] = inputs;
  json results = json::object();
  results["value"] = cx_to_json(det.value);
  results["condition"] = det.condition;
  if (!solver_info.is_null()) results["solver"] = solver_info;
  results["oracle"] = oracle_entry(p, ki.kind, v, v, det.value, warnings);
  results["warnings"] = warnings;
  report["results"] = results;
  report["status"] = "ok";
  emit_report(report, cli);

  if (!cli.out_csv.empty()) {
    std::ostringstream csv;
    csv << "kind,M,value_re,value_im,condition\n"
        << kind_name(ki.kind) << ',' << m << ',' << fmt(det.value.real())
        << ',' << fmt(det.value.imag()) << ',' << fmt(det.condition) << '\n';
    write_text(cli.out_csv, csv.str());
  }
  return 0;
}

int cmd_spectrum(const Resolved& r, const Cli& cli) {
  const int m = r.mroots;
  ModelParams p = model_from(r.model_over, r.nsites, true);
  p.require_valid();

  std::vector<cx> probes = r.u;
  if (!r.u_given) probes = draw_points(r.seed, "spectrum-u", 3);
  if (probes.empty()) throw ConfigError("spectrum needs at least one u value");

  double match_tol = 1e-6;
  if (auto it = r.tol.find("eigenvalue-in-spectrum"); it != r.tol.end())
    match_tol = it->second;

  const long dim = 1L << p.N();
  std::vector<Eigen::VectorXcd> dense;
  dense.reserve(probes.size());
  for (cx u : probes) {
    const oxyz::Mat t = oxyz::transfer_matrix(p, u);
    Eigen::ComplexEigenSolver<oxyz::Mat> es(t, false);
    dense.push_back(es.eigenvalues());
  }

  json families = json::array();
  json notes = json::array();
  bool any_sets = false;
  bool all_matched = true;
  for (auto fam : {oxyz::BetheFamily::One, oxyz::BetheFamily::Two}) {
    const auto sets = oxyz::solve_bae(p, fam, m, r.solver);
    json fj = json::object();
    fj["family"] = fam == oxyz::BetheFamily::One ? "I" : "II";
    fj["sets_found"] = static_cast<int>(sets.size());
    json sets_json = json::array();
    for (const auto& s : sets) {
      if (!oxyz::roots_generic(p, s.v)) continue;
      any_sets = true;
      json sj = json::object();
      sj["roots"] = cx_list_to_json(s.v);
      sj["residual"] = s.residual;
      json matches = json::array();
      for (std::size_t k = 0; k < probes.size(); ++k) {
        const cx lam = oxyz::transfer_eigenvalue(p, fam, probes[k], s.v);
        const double scale =
            std::max(dense[k].cwiseAbs().maxCoeff(), 1e-30);
        double best = std::numeric_limits<double>::infinity();
        for (long i = 0; i < dim; ++i)
          best = std::min(best, std::abs(lam - dense[k](i)));
        const double gap = best / scale;
        json mj = json::object();
        mj["u"] = cx_to_json(probes[k]);
        mj["eigenvalue"] = cx_to_json(lam);
        mj["gap"] = gap;
        mj["matched"] = gap <= match_tol;
        if (gap > match_tol) all_matched = false;
        matches.push_back(mj);
      }
      sj["matches"] = matches;
      sets_json.push_back(sj);
    }
    fj["generic_sets"] = sets_json;
    families.push_back(fj);
  }
  if (!any_sets)
    notes.push_back(
        "no usable on-shell root sets found; the match set is empty");

  json report = json::object();
  report["command"] = "spectrum";
  json inputs = json::object();
  inputs["N"] = p.N();
  inputs["M"] = m;
  inputs["model"] = model_to_json(p);
  inputs["u"] = cx_list_to_json(probes);
  inputs["seed"] = r.seed;
  inputs["match_tol"] = match_tol;
  report["inputs"] = inputs;
  json results = json::object();
  results["families"] = families;
  if (dim <= 64) {
    json spectra = json::array();
    for (std::size_t k = 0; k < probes.size(); ++k) {
      std::vector<cx> eig(dense[k].data(), dense[k].data() + dim);
      std::sort(eig.begin(), eig.end(), [](cx a, cx b) {
        return a.real() != b.real() ? a.real() < b.real()
                                    : a.imag() < b.imag();
      });
      json ej = json::object();
      ej["u"] = cx_to_json(probes[k]);
      ej["eigenvalues"] = cx_list_to_json(eig);
      spectra.push_back(ej);
    }
    results["spectra"] = spectra;
  }
  results["notes"] = notes;
  report["results"] = results;
  report["status"] = !any_sets || all_matched ? "ok" : "fail";
  emit_report(report, cli);

  if (!cli.out_csv.empty()) {
    std::ostringstream csv;
    csv << "family,set,u_re,u_im,eigenvalue_re,eigenvalue_im,gap,matched\n";
    for (const auto& fj : families) {
      int set_idx = 0;
      for (const auto& sj : fj["generic_sets"]) {
        for (const auto& mj : sj["matches"])
          csv << fj["family"].get<std::string>() << ',' << set_idx << ','
              << fmt(mj["u"][0].get<double>()) << ','
              << fmt(mj["u"][1].get<double>()) << ','
              << fmt(mj["eigenvalue"][0].get<double>()) << ','
              << fmt(mj["eigenvalue"][1].get<double>()) << ','
              << fmt(mj["gap"].get<double>()) << ','
              << (mj["matched"].get<bool>() ? "true" : "false") << '\n';
        ++set_idx;
      }
    }
    write_text(cli.out_csv, csv.str());
  }
  return !any_sets || all_matched ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Elliptic open-chain scalar products: verification suites, "
      "determinant evaluations, and transfer-matrix spectra"};
  app.require_subcommand(1);
  Cli cli;

  auto add_common = [&cli](CLI::App* sub) {
    sub->add_option("--config", cli.config_path,
                    "JSON configuration file (flags take precedence)");
    sub->add_option("--N", cli.nsites, "number of chain sites (even)");
    sub->add_option("--M", cli.mroots, "number of roots (must equal N/2)");
    sub->add_option("--seed", cli.seed,
                    "seed for deterministic parameter draws");
    sub->add_option("--out", cli.out_path, "write the JSON report here");
    sub->add_option("--out-csv", cli.out_csv, "write a CSV summary here");
    sub->add_option("--tol", cli.tol_flags,
                    "override a check tolerance, NAME=VALUE (repeatable)");
  };

  CLI::App* verify =
      app.add_subcommand("verify", "run the verification suites");
  add_common(verify);
  verify->add_option("--suite", cli.suites,
                     "suite to run (repeatable; default: all)");

  CLI::App* scalar = app.add_subcommand(
      "scalar", "evaluate a scalar-product determinant against the ladder");
  add_common(scalar);
  scalar->add_option("--kind", cli.kind,
                     "pairing: I-I, II-II, I-II, II-I (I and II choose the "
                     "mixed pairing of that family)");
  scalar->add_option("--u", cli.u_flags,
                     "dual-state parameter 're,im' (repeatable)");
  scalar->add_flag("--solve", cli.solve,
                   "solve the equations for on-shell roots");
  scalar->add_flag("--force", cli.force,
                   "evaluate even when the roots are off shell");

  CLI::App* norm =
      app.add_subcommand("norm", "evaluate an on-shell norm determinant");
  add_common(norm);
  norm->add_option("--kind", cli.kind,
                   "pairing: I-I or II-II (I and II are shorthands)");
  norm->add_flag("--solve", cli.solve,
                 "solve the equations for on-shell roots");
  norm->add_flag("--force", cli.force,
                 "evaluate even when the roots are off shell");

  CLI::App* spectrum = app.add_subcommand(
      "spectrum",
      "compare formula eigenvalues with the dense transfer spectrum");
  add_common(spectrum);
  spectrum->add_option("--u", cli.u_flags,
                       "spectral probe 're,im' (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const json cfg = load_config(cli.config_path);
    const Resolved r = resolve(cli, cfg);
    if (verify->parsed()) return cmd_verify(r, cli);
    if (scalar->parsed()) return cmd_scalar(r, cli);
    if (norm->parsed()) return cmd_norm(r, cli);
    return cmd_spectrum(r, cli);
  } catch (const ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const oxyz::NumericalError& ex) {
    std::cerr << "numerical abort: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
}

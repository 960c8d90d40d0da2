#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "latsum/bench.hpp"
#include "latsum/epstein.hpp"
#include "latsum/lattice.hpp"
#include "latsum/manybody.hpp"
#include "latsum/oracle.hpp"
#include "latsum/phase.hpp"

using json = nlohmann::ordered_json;
using namespace latsum;

namespace {

constexpr const char* kVersion = "1.0.0";

struct UsageError : Error {
  explicit UsageError(const std::string& w) : Error("usage", w) {}
};

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() || !std::isfinite(v))
      throw UsageError(std::string("malformed ") + what + " list '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (double v : parse_list(text, what)) {
    if (v != std::floor(v)) throw UsageError(std::string("integer expected in ") + what + " list");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

/// Options shared by every subcommand.
struct Common {
  bool json = false;
  std::string out;
  int threads = default_thread_count();
  bool seedless = false;
  std::string config_file;
  std::vector<std::string> sets;
  std::vector<std::pair<std::string, std::string>> quick;

  void add(CLI::App* app) {
    app->add_flag("--json", json, "Emit JSON");
    app->add_option("--out", out, "Write primary output to this file");
    app->add_option("--threads", threads, "Worker threads (default LATSUM_THREADS or 1)");
    app->add_flag("--seedless", seedless, "Assert a fully deterministic run (no RNG is used anywhere)");
    app->add_option("--config", config_file, "Quadrature config file with key = value lines");
    app->add_option("--set", sets, "Override one config key, key=value (repeatable)");
    for (const auto& [flag, key] : {std::pair{"--gauss-order", "gauss_order"}, {"--epsilon", "epsilon"},
                                     {"--taylor-order", "taylor_order"}, {"--rtol", "adaptive_rel_tol"},
                                     {"--radial-mode", "radial_mode"}}) {
      const std::string k = key;
      app->add_option_function<std::string>(flag, [this, k](const std::string& v) { quick.emplace_back(k, v); },
                                            "Quadrature " + k);
    }
  }

  QuadratureConfig quad() const {
    QuadratureConfig q;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw UsageError("cannot read config file " + config_file);
      std::stringstream ss;
      ss << in.rdbuf();
      q = QuadratureConfig::from_kv(ss.str());
    }
    apply(q);
    return q;
  }

  void apply(QuadratureConfig& q) const {
    for (const auto& [k, v] : quick) q.set(k, v);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
      q.set(s.substr(0, eq), s.substr(eq + 1));
    }
    if (threads < 1) throw UsageError("--threads must be positive");
    q.threads = threads;
    q.validate();
  }
};

struct RunManifest {
  RunManifest(std::string sub, std::string cfg, std::string in)
      : subcommand(std::move(sub)), config(std::move(cfg)), inputs(std::move(in)) {}

  std::string subcommand;
  std::string config;
  std::string inputs;
  std::vector<std::pair<std::string, double>> stages;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::string input_hash() const {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(subcommand + "\n" + inputs + "\n" + config)));
    return buf;
  }

  void stage(const std::string& name, double seconds) { stages.emplace_back(name, seconds); }

  double wall() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); }

  json to_json() const {
    json j;
    j["tool"] = "latsum";
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    j["inputs"] = inputs;
    j["input_hash"] = input_hash();
    j["config"] = config;
    json st = json::object();
    for (const auto& [k, v] : stages) st[k] = v;
    j["stage_seconds"] = st;
    j["wall_seconds"] = wall();
    return j;
  }

  /// Header comment lines; timing comes last so primary content stays comparable.
  std::string csv_header() const {
    std::ostringstream os;
    os << "# latsum " << kVersion << "\n# subcommand: " << subcommand << "\n# inputs: " << inputs
       << "\n# input_hash: " << input_hash() << "\n";
    std::istringstream cfg(config);
    std::string line;
    while (std::getline(cfg, line))
      if (!line.empty()) os << "# config: " << line << "\n";
    return os.str();
  }

  std::string csv_timing() const {
    std::ostringstream os;
    for (const auto& [k, v] : stages) os << "# stage_seconds " << k << ": " << fmt17(v) << "\n";
    os << "# wall_seconds: " << fmt17(wall()) << "\n";
    return os.str();
  }
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + c.out);
  f << text;
}

std::string config_text(const ManyBodyConfig& cfg) {
  std::string s = cfg.quad.to_kv();
  s += "force_integral = " + std::string(cfg.force_integral ? "true" : "false") + "\n";
  s += "error_estimate = " + std::string(cfg.error_estimate ? "true" : "false") + "\n";
  return s;
}

json nu_json(const std::vector<double>& nu) {
  json a = json::array();
  for (double v : nu) a.push_back(v);
  return a;
}

std::string join(const std::vector<double>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + fmt17(v[i]);
  return s;
}

// ---- zeta -----------------------------------------------------------------

struct ZetaArgs {
  Common common;
  std::string lattice, nu;
  bool force_integral = false;
  bool no_error = false;
  std::string precision = "double";
};

template <typename T>
int run_zeta(const ZetaArgs& a, const LatticeSpec& spec, const std::vector<double>& nu, const ManyBodyConfig& cfg,
             RunManifest& m) {
  const auto lat = spec.build<T>();
  const auto r = many_body_zeta<T>(lat, std::vector<T>(nu.begin(), nu.end()), cfg);
  m.stage("zeta", r.wall_time);
  if (a.common.json) {
    json j;
    j["value"] = static_cast<double>(r.value);
    j["n"] = r.n;
    j["lattice"] = spec.to_string();
    j["nu"] = nu_json(nu);
    j["config"] = config_text(cfg);
    j["error_estimate"] = static_cast<double>(r.error_estimate);
    j["wall_time"] = r.wall_time;
    j["evaluations"] = r.evaluations;
    j["tail_warnings"] = r.tail_warnings;
    j["integral_path"] = r.integral_path;
    j["manifest"] = m.to_json();
    emit(a.common, j.dump(2) + "\n");
  } else {
    emit(a.common, "value " + fmt17(static_cast<double>(r.value)) + "\nerror_estimate " +
                       fmt17(static_cast<double>(r.error_estimate)) + "\n");
  }
  if (r.tail_warnings > 0)
    std::cerr << "warning: " << r.tail_warnings << " rays with Taylor truncation above the tolerance\n";
  return 0;
}

int cmd_zeta(const ZetaArgs& a) {
  const auto spec = parse_lattice_spec(a.lattice);
  const auto nu = parse_list(a.nu, "nu");
  ManyBodyConfig cfg;
  cfg.quad = a.common.quad();
  cfg.force_integral = a.force_integral;
  cfg.error_estimate = !a.no_error;
  RunManifest m{"zeta", config_text(cfg), "lattice=" + spec.to_string() + " nu=" + join(nu, ',') + " precision=" + a.precision};
  if (a.precision == "double") return run_zeta<double>(a, spec, nu, cfg, m);
  if (a.precision == "long") return run_zeta<long double>(a, spec, nu, cfg, m);
  throw UsageError("--precision must be double or long");
}

// ---- epstein --------------------------------------------------------------

struct EpsteinArgs {
  Common common;
  std::string lattice, k;
  double nu = 0;
  std::string part = "value";
  bool reg = false;
};

int cmd_epstein(EpsteinArgs a) {
  if (a.reg) {
    if (a.part != "value" && a.part != "regular") throw UsageError("--reg conflicts with --part " + a.part);
    a.part = "regular";
  }
  const auto spec = parse_lattice_spec(a.lattice);
  const auto lat = spec.build<double>();
  Vector<double> k = Vector<double>::Zero(lat.dim());
  if (!a.k.empty()) {
    const auto kv = parse_list(a.k, "k");
    if (static_cast<int>(kv.size()) != lat.dim()) throw UsageError("--k needs one entry per dimension");
    for (int i = 0; i < lat.dim(); ++i) k(i) = kv[static_cast<size_t>(i)];
  }
  QuadratureConfig q = a.common.quad();
  EpsteinOptions eo;
  eo.lambda_scale = q.lambda_scale;
  RunManifest m{"epstein", q.to_kv(), "lattice=" + spec.to_string() + " nu=" + fmt17(a.nu) + " k=" + a.k + " part=" + a.part};
  const EpsteinZeta<double> z(lat, a.nu, eo);
  double v;
  if (a.part == "value") v = z.value(k);
  else if (a.part == "regular") v = z.regular(BrillouinZone<double>(lat).reduce(k));
  else if (a.part == "singular") v = z.singular(k);
  else throw UsageError("--part must be value, regular or singular");
  if (a.common.json) {
    json j;
    j["value"] = v;
    j["part"] = a.part;
    j["lattice"] = spec.to_string();
    j["nu"] = a.nu;
    j["manifest"] = m.to_json();
    emit(a.common, j.dump(2) + "\n");
  } else {
    emit(a.common, "value " + fmt17(v) + "\n");
  }
  return 0;
}

// ---- atm ------------------------------------------------------------------

struct AtmArgs {
  Common common;
  std::string lattice;
  bool no_error = false;
};

int cmd_atm(const AtmArgs& a) {
  const auto spec = parse_lattice_spec(a.lattice);
  const int d = spec.build<double>().dim();
  ManyBodyConfig cfg;
  cfg.quad = atm_default_config(d);
  // Long double in 1D: the golden value needs more than double rounding room.
  const bool extended = d == 1;
  if (extended) cfg.quad.adaptive_rel_tol = 1e-18;
  a.common.apply(cfg.quad);
  cfg.error_estimate = !a.no_error;
  RunManifest m{"atm", config_text(cfg), "lattice=" + spec.to_string() + (extended ? " precision=long" : " precision=double")};
  AtmResult<double> r;
  if (extended) {
    const auto rl = atm_cohesive_energy<long double>(spec.build<long double>(), cfg);
    r = {static_cast<double>(rl.value),     static_cast<double>(rl.zeta_333),       static_cast<double>(rl.zeta_m155),
         static_cast<double>(rl.zeta_135),  static_cast<double>(rl.error_estimate), rl.wall_time};
  } else {
    r = atm_cohesive_energy<double>(spec.build<double>(), cfg);
  }
  m.stage("atm", r.wall_time);
  if (a.common.json) {
    json j;
    j["value"] = r.value;
    j["zeta_3_3_3"] = r.zeta_333;
    j["zeta_-1_5_5"] = r.zeta_m155;
    j["zeta_1_3_5"] = r.zeta_135;
    j["error_estimate"] = r.error_estimate;
    j["lattice"] = spec.to_string();
    j["manifest"] = m.to_json();
    emit(a.common, j.dump(2) + "\n");
  } else {
    emit(a.common, "value " + fmt17(r.value) + "\nerror_estimate " + fmt17(r.error_estimate) + "\nzeta(3,3,3) " +
                       fmt17(r.zeta_333) + "\nzeta(-1,5,5) " + fmt17(r.zeta_m155) + "\nzeta(1,3,5) " +
                       fmt17(r.zeta_135) + "\n");
  }
  return 0;
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
  Common common;
  std::string lattice, nu;
  int L = 10;
  bool force = false;
  bool atm = false;
  bool series = false;
};

int cmd_oracle(const OracleArgs& a) {
  const auto spec = parse_lattice_spec(a.lattice);
  const auto t0 = std::chrono::steady_clock::now();
  std::string what;
  long double v = 0;
  std::vector<double> nu;
  if (a.atm) {
    what = "atm";
    v = direct_sum_atm<long double>(spec.build<long double>(), a.L, a.force);
  } else {
    if (a.nu.empty()) throw UsageError("--nu is required unless --atm is given");
    nu = parse_list(a.nu, "nu");
    const std::vector<long double> nl(nu.begin(), nu.end());
    if (a.series) {
      if (spec.build<double>().dim() != 1 || !spec.named || spec.scale != 1)
        throw UsageError("the series oracle is for the unit integer lattice");
      what = "series";
      v = series_many_body_1d<long double>(nl);
    } else {
      what = "direct";
      v = direct_sum_zeta<long double>(spec.build<long double>(), nl, a.L, a.force);
    }
  }
  RunManifest m{"oracle", "", "lattice=" + spec.to_string() + " method=" + what + " nu=" + join(nu, ',') +
                                  " L=" + std::to_string(a.L)};
  m.stage("oracle", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  if (a.common.json) {
    json j;
    j["value"] = static_cast<double>(v);
    j["method"] = what;
    j["lattice"] = spec.to_string();
    j["nu"] = nu_json(nu);
    j["L"] = a.L;
    j["manifest"] = m.to_json();
    emit(a.common, j.dump(2) + "\n");
  } else {
    emit(a.common, "value " + fmt17(static_cast<double>(v)) + "\n");
  }
  return 0;
}

// ---- phase ----------------------------------------------------------------

struct PhaseArgs {
  Common common;
  std::string lj = "12,6";
  std::string p = "0";
  std::string lambda = "0";
  bool boundary = false;
  double k_fcc = NAN, k_bcc = NAN;
};

int cmd_phase(const PhaseArgs& a) {
  const auto ljv = parse_list(a.lj, "lj");
  if (ljv.size() != 2) throw UsageError("--lj expects n,m");
  const LJParams lj{ljv[0], ljv[1]};
  const auto p_grid = parse_grid(a.p);
  const auto l_grid = parse_grid(a.lambda);
  ManyBodyConfig cfg;
  cfg.quad = atm_default_config(3);
  a.common.apply(cfg.quad);
  cfg.error_estimate = false;
  RunManifest m{"phase", config_text(cfg), "lj=" + a.lj + " p=" + a.p + " lambda=" + a.lambda +
                                               (a.boundary ? " boundary" : "")};
  const auto fcc = named_lattice<double>(LatticeName::fcc), bcc = named_lattice<double>(LatticeName::bcc);
  auto t0 = std::chrono::steady_clock::now();
  auto energetics = [&](const Lattice<double>& lat, double k) {
    return std::isnan(k) ? lattice_energetics(lat, lj, cfg) : lattice_energetics_with_k(lat, lj, k);
  };
  const PhaseScanner scanner(energetics(fcc, a.k_fcc), energetics(bcc, a.k_bcc));
  m.stage("lattice_constants", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  t0 = std::chrono::steady_clock::now();
  std::ostringstream os;
  json j;
  if (a.boundary) {
    const auto b = scanner.boundary(p_grid, l_grid, a.common.threads);
    os << "p,lambda_crit\n";
    json rows = json::array();
    for (const auto& pt : b) {
      os << fmt17(pt.p) << "," << (pt.lambda_crit ? fmt17(*pt.lambda_crit) : "nan") << "\n";
      rows.push_back({{"p", pt.p}, {"lambda_crit", pt.lambda_crit ? json(*pt.lambda_crit) : json(nullptr)}});
    }
    j["boundary"] = rows;
  } else {
    const auto pts = scanner.scan(p_grid, l_grid, a.common.threads);
    os << "p,lambda,H_fcc,H_bcc,R_fcc,R_bcc,winner\n";
    json rows = json::array();
    for (const auto& pt : pts) {
      if (!pt.ok) {
        os << fmt17(pt.p) << "," << fmt17(pt.lambda) << ",nan,nan,nan,nan,error: " << pt.error << "\n";
        rows.push_back({{"p", pt.p}, {"lambda", pt.lambda}, {"error", pt.error}});
        continue;
      }
      os << fmt17(pt.p) << "," << fmt17(pt.lambda) << "," << fmt17(pt.H_fcc) << "," << fmt17(pt.H_bcc) << ","
         << fmt17(pt.R_fcc) << "," << fmt17(pt.R_bcc) << "," << to_string(pt.winner) << "\n";
      rows.push_back({{"p", pt.p},
                      {"lambda", pt.lambda},
                      {"H_fcc", pt.H_fcc},
                      {"H_bcc", pt.H_bcc},
                      {"R_fcc", pt.R_fcc},
                      {"R_bcc", pt.R_bcc},
                      {"winner", to_string(pt.winner)}});
    }
    j["points"] = rows;
  }
  m.stage("scan", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  std::ostringstream consts;
  consts << "# K_fcc: " << fmt17(scanner.fcc().k_atm) << "\n# K_bcc: " << fmt17(scanner.bcc().k_atm) << "\n";
  if (a.common.json) {
    j["K_fcc"] = scanner.fcc().k_atm;
    j["K_bcc"] = scanner.bcc().k_atm;
    j["manifest"] = m.to_json();
    emit(a.common, j.dump(2) + "\n");
  } else {
    emit(a.common, m.csv_header() + consts.str() + os.str() + m.csv_timing());
  }
  return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  Common common;
  std::string name;
  std::string lattices;
  int stride = 1;
  int steps = 20;
  double nu = 3;
  int n_min = 2, n_max = 51;
};

std::vector<LatticeName> lattice_list(const std::string& text, std::vector<LatticeName> fallback) {
  if (text.empty()) return fallback;
  std::vector<LatticeName> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_lattice_name(item));
  return out;
}

int cmd_bench(const BenchArgs& a) {
  BenchOptions opt;
  opt.cfg.quad = a.common.quad();
  opt.threads = a.common.threads;
  opt.stride = a.stride;
  opt.steps = a.steps;
  if (opt.stride < 1 || opt.steps < 0) throw UsageError("--stride must be positive and --steps nonnegative");
  const std::string inputs = "name=" + a.name + " lattices=" + a.lattices + " stride=" + std::to_string(a.stride) +
                             " steps=" + std::to_string(a.steps) + " nu=" + fmt17(a.nu) +
                             " n=" + std::to_string(a.n_min) + ".." + std::to_string(a.n_max);
  RunManifest m{"bench", config_text(opt.cfg), inputs};
  const std::vector<LatticeName> two_d{LatticeName::square, LatticeName::hexagonal};
  const std::vector<LatticeName> all{LatticeName::integer_1d, LatticeName::square, LatticeName::hexagonal};
  std::ostringstream os;
  json j;
  const auto t0 = std::chrono::steady_clock::now();
  if (a.name == "n_scaling" || a.name == "runtime") {
    if (a.n_min < 1 || a.n_max < a.n_min) throw UsageError("need 1 <= n-min <= n-max");
    std::vector<int> ns;
    for (int n = a.n_min; n <= a.n_max; ++n) ns.push_back(n);
    const bool runtime = a.name == "runtime";
    os << (runtime ? "lattice,n,wall_time_s\n" : "lattice,n,value,normalized\n");
    json rows = json::array();
    for (auto lat : lattice_list(a.lattices, runtime ? std::vector<LatticeName>{LatticeName::hexagonal} : two_d)) {
      const std::string ln(to_string(lat));
      for (const auto& r : bench_n_scaling(lat, a.nu, ns, opt)) {
        if (runtime) {
          os << ln << "," << r.n << "," << fmt17(r.wall_time) << "\n";
          rows.push_back({{"lattice", ln}, {"n", r.n}, {"wall_time_s", r.wall_time}});
        } else {
          os << ln << "," << r.n << "," << fmt17(r.value) << "," << fmt17(r.normalized) << "\n";
          rows.push_back({{"lattice", ln}, {"n", r.n}, {"value", r.value}, {"normalized", r.normalized}});
        }
      }
    }
    j["rows"] = rows;
  } else {
    std::vector<BenchRow> rows;
    if (a.name == "one_body_grid") rows = bench_one_body(lattice_list(a.lattices, all), opt);
    else if (a.name == "two_body_grid") rows = bench_two_body(lattice_list(a.lattices, all), opt);
    else if (a.name == "three_body_1d") rows = bench_three_body_1d(opt);
    else if (a.name == "meromorphic_1d") rows = bench_meromorphic_1d(opt);
    else if (a.name == "three_body_2d") rows = bench_three_body_2d(lattice_list(a.lattices, two_d), opt);
    else if (a.name == "four_five_body") rows = bench_four_five_body(opt);
    else throw UsageError("unknown benchmark '" + a.name + "'");
    os << "lattice,n,nu,value,reference,E,status\n";
    json jr = json::array();
    double worst = 0;
    for (const auto& r : rows) {
      os << r.lattice << "," << r.nu.size() << "," << join(r.nu, ';') << "," << fmt17(r.value) << ","
         << fmt17(r.reference) << "," << fmt17(r.error) << "," << (r.ok ? "ok" : r.failure) << "\n";
      json row{{"lattice", r.lattice}, {"nu", nu_json(r.nu)}};
      if (r.ok) {
        row["value"] = r.value;
        row["reference"] = r.reference;
        row["E"] = r.error;
        worst = std::max(worst, r.error);
      } else {
        row["error"] = r.failure;
      }
      jr.push_back(row);
    }
    j["rows"] = jr;
    j["max_E"] = worst;
  }
  m.stage("bench", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  if (a.common.json) {
    j["name"] = a.name;
    j["manifest"] = m.to_json();
    emit(a.common, j.dump(2) + "\n");
  } else {
    emit(a.common, m.csv_header() + os.str() + m.csv_timing());
  }
  return 0;
}

// ---- table ----------------------------------------------------------------

struct TableArgs {
  Common common;
  std::string n = "2,3,4,5,6,8,10,16,32,51";
  std::string nu = "2,3";
};

int cmd_table(const TableArgs& a) {
  ManyBodyConfig cfg;
  cfg.quad = a.common.quad();
  cfg.error_estimate = false;
  const auto ns = parse_int_list(a.n, "n");
  const auto nus = parse_list(a.nu, "nu");
  RunManifest m{"table", config_text(cfg), "n=" + a.n + " nu=" + a.nu};
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = table_square(ns, nus, cfg);
  m.stage("table", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  if (a.common.json) {
    json j;
    json jr = json::array();
    for (const auto& r : rows) jr.push_back({{"n", r.n}, {"nu", r.nu}, {"value", r.value}});
    j["lattice"] = "square";
    j["rows"] = jr;
    j["manifest"] = m.to_json();
    emit(a.common, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "nu,n,value\n";
    for (const auto& r : rows) os << fmt15(r.nu) << "," << r.n << "," << fmt15(r.value) << "\n";
    emit(a.common, m.csv_header() + os.str() + m.csv_timing());
  }
  return 0;
}

void report_error(bool as_json, const std::string& kind, const std::string& message) {
  std::cerr << "error (" << kind << "): " << message << "\n";
  if (as_json) {
    json j;
    j["error"] = {{"kind", kind}, {"message", message}};
    std::cout << j.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latsum: many-body lattice zeta functions via Epstein zeta products"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ZetaArgs za;
  auto* zeta = app.add_subcommand("zeta", "Evaluate zeta^(n)_Lambda(nu) for the cycle graph");
  za.common.add(zeta);
  zeta->add_option("--lattice", za.lattice, "Z, sq, hex, fcc, bcc (optionally '*scale') or 'd=2;A=r1;r2'")->required();
  zeta->add_option("--nu", za.nu, "Comma-separated exponents")->required();
  zeta->add_flag("--force-integral", za.force_integral, "Use the integral also for n = 1, 2");
  zeta->add_flag("--no-error-estimate", za.no_error, "Skip the error-estimate rerun");
  zeta->add_option("--precision", za.precision, "double or long");

  EpsteinArgs ea;
  auto* eps = app.add_subcommand("epstein", "Evaluate the Epstein zeta function Z_{Lambda,nu}(k)");
  ea.common.add(eps);
  eps->add_option("--lattice", ea.lattice, "Lattice spec")->required();
  eps->add_option("--nu", ea.nu, "Exponent")->required();
  eps->add_option("--k", ea.k, "Wave vector, comma-separated (default 0)");
  eps->add_option("--part", ea.part, "value, regular or singular");
  eps->add_flag("--reg", ea.reg, "Same as --part regular");

  AtmArgs aa;
  auto* atm = app.add_subcommand("atm", "ATM cohesive energy of a lattice");
  aa.common.add(atm);
  atm->add_option("--lattice", aa.lattice, "Lattice spec (d <= 3)")->required();
  atm->add_flag("--no-error-estimate", aa.no_error, "Skip the error-estimate rerun");

  OracleArgs oa;
  auto* orc = app.add_subcommand("oracle", "Reference values by direct summation or the 1D series");
  oa.common.add(orc);
  orc->add_option("--lattice", oa.lattice, "Lattice spec")->required();
  orc->add_option("--nu", oa.nu, "Comma-separated exponents");
  orc->add_option("--L", oa.L, "Truncation: A{-L..L}^d");
  orc->add_flag("--force", oa.force, "Allow more than 1e10 terms");
  orc->add_flag("--atm", oa.atm, "Direct ATM cohesive energy instead of a zeta value");
  orc->add_flag("--series", oa.series, "1D shifted-series oracle (unit integer lattice)");

  PhaseArgs pa;
  auto* ph = app.add_subcommand("phase", "LJ + lambda ATM fcc/bcc enthalpy scan");
  pa.common.add(ph);
  ph->add_option("--lj", pa.lj, "Exponents n,m");
  ph->add_option("--p", pa.p, "Pressure grid a:b:step or list");
  ph->add_option("--lambda", pa.lambda, "ATM coupling grid a:b:step or list");
  ph->add_flag("--boundary", pa.boundary, "Emit only (p, lambda_crit) pairs");
  ph->add_option("--k-fcc", pa.k_fcc, "Known fcc ATM constant (skips its computation)");
  ph->add_option("--k-bcc", pa.k_bcc, "Known bcc ATM constant (skips its computation)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Benchmark grids against reference values");
  ba.common.add(bench);
  bench->add_option("name", ba.name, "one_body_grid, two_body_grid, three_body_1d, meromorphic_1d, three_body_2d, "
                                     "four_five_body, n_scaling, runtime")
      ->required();
  bench->add_option("--lattices", ba.lattices, "Comma-separated lattice names");
  bench->add_option("--stride", ba.stride, "Keep every stride-th grid value per axis");
  bench->add_option("--steps", ba.steps, "Number of 1/20 steps in the three-body grids");
  bench->add_option("--nu", ba.nu, "Exponent for n_scaling and runtime");
  bench->add_option("--n-min", ba.n_min, "Smallest body count for n_scaling and runtime");
  bench->add_option("--n-max", ba.n_max, "Largest body count for n_scaling and runtime");

  TableArgs ta;
  auto* table = app.add_subcommand("table", "Square-lattice many-body zeta table");
  ta.common.add(table);
  table->add_option("--n", ta.n, "Body counts");
  table->add_option("--nu", ta.nu, "Exponents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  bool as_json = false;
  for (const Common* c : {&za.common, &ea.common, &aa.common, &oa.common, &pa.common, &ba.common, &ta.common})
    as_json = as_json || c->json;
  try {
    if (*zeta) return cmd_zeta(za);
    if (*eps) return cmd_epstein(ea);
    if (*atm) return cmd_atm(aa);
    if (*orc) return cmd_oracle(oa);
    if (*ph) return cmd_phase(pa);
    if (*bench) return cmd_bench(ba);
    if (*table) return cmd_table(ta);
  } catch (const Error& e) {
    report_error(as_json, e.kind(), e.what());
    if (e.kind() == "usage") std::cerr << app.help();
    return 2;
  } catch (const std::exception& e) {
    report_error(as_json, "internal", e.what());
    return 1;
  }
  return 1;
}

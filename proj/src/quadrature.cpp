#include "latsum/quadrature.hpp"

#include <cstdlib>
#include <iomanip>
#include <sstream>

namespace latsum {

std::string to_string(RadialMode m) {
  switch (m) {
    case RadialMode::automatic: return "automatic";
    case RadialMode::split: return "split";
    case RadialMode::full_adaptive: return "full_adaptive";
  }
  return "?";
}

RadialMode parse_radial_mode(const std::string& s) {
  if (s == "automatic" || s == "auto") return RadialMode::automatic;
  if (s == "split") return RadialMode::split;
  if (s == "full_adaptive" || s == "full") return RadialMode::full_adaptive;
  throw DomainError("unknown radial mode '" + s + "'");
}

void QuadratureConfig::validate() const {
  if (gauss_order < 2) throw DomainError("gauss_order must be at least 2");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw DomainError("epsilon must lie in (0, 1/2)");
  if (taylor_order < 0 || taylor_order % 2 != 0) throw DomainError("taylor_order must be even and nonnegative");
  if (!(adaptive_rel_tol > 0.0)) throw DomainError("adaptive_rel_tol must be positive");
  if (!(adaptive_abs_tol >= 0.0)) throw DomainError("adaptive_abs_tol must be nonnegative");
  if (adaptive_max_depth < 1) throw DomainError("adaptive_max_depth must be positive");
  if (!(lambda_scale > 0.0)) throw DomainError("lambda_scale must be positive");
  if (threads < 1) throw DomainError("threads must be positive");
}

std::string QuadratureConfig::to_kv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "gauss_order = " << gauss_order << '\n'
     << "epsilon = " << epsilon << '\n'
     << "taylor_order = " << taylor_order << '\n'
     << "max_taylor_order = " << max_taylor_order << '\n'
     << "adaptive_rel_tol = " << adaptive_rel_tol << '\n'
     << "adaptive_abs_tol = " << adaptive_abs_tol << '\n'
     << "adaptive_max_depth = " << adaptive_max_depth << '\n'
     << "radial_mode = " << to_string(radial_mode) << '\n'
     << "general_log_recurrence = " << (general_log_recurrence ? "true" : "false") << '\n'
     << "lambda_scale = " << lambda_scale << '\n';
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) throw DomainError("bad value for " + key + ": '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != static_cast<double>(static_cast<int>(x))) throw DomainError("integer expected for " + key);
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw DomainError("boolean expected for " + key);
}

}  // namespace

void QuadratureConfig::set(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "gauss_order") gauss_order = to_int(key, v);
  else if (key == "epsilon") epsilon = to_double(key, v);
  else if (key == "taylor_order") taylor_order = to_int(key, v);
  else if (key == "max_taylor_order") max_taylor_order = to_int(key, v);
  else if (key == "adaptive_rel_tol" || key == "rtol") adaptive_rel_tol = to_double(key, v);
  else if (key == "adaptive_abs_tol") adaptive_abs_tol = to_double(key, v);
  else if (key == "adaptive_max_depth") adaptive_max_depth = to_int(key, v);
  else if (key == "radial_mode") radial_mode = parse_radial_mode(v);
  else if (key == "general_log_recurrence") general_log_recurrence = to_bool(key, v);
  else if (key == "lambda_scale") lambda_scale = to_double(key, v);
  else if (key == "threads") threads = to_int(key, v);
  else throw DomainError("unknown configuration key '" + key + "'");
}

QuadratureConfig QuadratureConfig::from_kv(const std::string& text) {
  QuadratureConfig cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("expected key = value, got '" + line + "'");
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

std::vector<DuffyCell> duffy_cells(int dim) {
  if (dim < 1 || dim > kMaxDim) throw DomainError("dimension out of range");
  std::vector<DuffyCell> cells;
  for (int mask = 0; mask < (1 << (dim - 1)); ++mask) {
    for (int j = 0; j < dim; ++j) {
      DuffyCell c;
      c.dim = dim;
      c.pyramid = j;
      for (int i = 0; i < dim - 1; ++i) c.signs[static_cast<size_t>(i)] = (mask >> i & 1) ? -1 : 1;
      cells.push_back(c);
    }
  }
  return cells;
}

int default_thread_count() {
  if (const char* env = std::getenv("LATSUM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

template class ProductIntegrator<double>;
template class ProductIntegrator<long double>;

}  // namespace latsum

#include "latsum/lattice.hpp"

#include <cctype>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <vector>

namespace latsum {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

long double parse_real(std::string_view s) {
  const std::string str(trim(s));
  if (str.empty()) throw InvalidLattice("empty matrix entry");
  char* end = nullptr;
  const long double v = std::strtold(str.c_str(), &end);
  if (end != str.c_str() + str.size()) throw InvalidLattice("bad matrix entry '" + str + "'");
  return v;
}

}  // namespace

LatticeName parse_lattice_name(std::string_view name) {
  const std::string n = lower(trim(name));
  if (n == "z" || n == "integer" || n == "integer_1d" || n == "chain") return LatticeName::integer_1d;
  if (n == "sq" || n == "square" || n == "z2") return LatticeName::square;
  if (n == "hex" || n == "hexagonal" || n == "triangular") return LatticeName::hexagonal;
  if (n == "fcc") return LatticeName::fcc;
  if (n == "bcc") return LatticeName::bcc;
  throw InvalidLattice("unknown lattice name '" + std::string(name) + "'");
}

std::string_view to_string(LatticeName name) {
  switch (name) {
    case LatticeName::integer_1d: return "integer_1d";
    case LatticeName::square: return "square";
    case LatticeName::hexagonal: return "hexagonal";
    case LatticeName::fcc: return "fcc";
    case LatticeName::bcc: return "bcc";
  }
  return "?";
}

LatticeSpec parse_lattice_spec(std::string_view text, long double scale) {
  LatticeSpec spec;
  spec.scale = scale;
  std::string_view t = trim(text);
  if (const size_t star = t.rfind('*'); star != std::string_view::npos) {
    spec.scale *= parse_real(t.substr(star + 1));
    if (!(spec.scale > 0)) throw InvalidLattice("lattice scale must be positive");
    t = trim(t.substr(0, star));
  }
  if (t.find('=') == std::string_view::npos) {
    spec.named = true;
    spec.name = parse_lattice_name(t);
    spec.dim = named_lattice<double>(spec.name).dim();
    return spec;
  }
  // d=2;A=1,0.5;0,0.866
  spec.named = false;
  const auto parts = split(t, ';');
  if (parts.size() < 2) throw InvalidLattice("explicit lattice needs 'd=<n>;A=<row>;<row>...'");
  const auto head = trim(parts[0]);
  if (head.substr(0, 2) != "d=") throw InvalidLattice("explicit lattice must start with 'd='");
  const long double dv = parse_real(head.substr(2));
  spec.dim = static_cast<int>(dv);
  if (spec.dim < 1 || spec.dim > kMaxDim || static_cast<long double>(spec.dim) != dv)
    throw InvalidLattice("lattice dimension must be an integer in 1..4");
  std::vector<std::string_view> rows(parts.begin() + 1, parts.end());
  auto first = trim(rows[0]);
  if (first.substr(0, 2) != "A=") throw InvalidLattice("expected 'A=' after dimension");
  rows[0] = first.substr(2);
  if (static_cast<int>(rows.size()) != spec.dim) throw InvalidLattice("matrix row count does not match d");
  for (int i = 0; i < spec.dim; ++i) {
    const auto cols = split(rows[static_cast<size_t>(i)], ',');
    if (static_cast<int>(cols.size()) != spec.dim) throw InvalidLattice("matrix column count does not match d");
    for (int j = 0; j < spec.dim; ++j) spec.rows[static_cast<size_t>(i * spec.dim + j)] = parse_real(cols[static_cast<size_t>(j)]);
  }
  // Validate regularity now rather than at first use.
  (void)spec.build<long double>();
  return spec;
}

std::string LatticeSpec::to_string() const {
  std::ostringstream os;
  os << std::setprecision(21);
  if (named) {
    os << latsum::to_string(name);
    if (scale != 1.0L) os << "*" << scale;
    return os.str();
  }
  os << "d=" << dim << ";A=";
  for (int i = 0; i < dim; ++i) {
    if (i) os << ';';
    for (int j = 0; j < dim; ++j) {
      if (j) os << ',';
      os << rows[static_cast<size_t>(i * dim + j)];
    }
  }
  if (scale != 1.0L) os << "*" << scale;
  return os.str();
}

}  // namespace latsum

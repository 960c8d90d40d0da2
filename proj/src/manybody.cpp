#include "latsum/manybody.hpp"

namespace latsum {

QuadratureConfig atm_default_config(int dim) {
  QuadratureConfig q;
  q.radial_mode = RadialMode::split;
  q.epsilon = dim == 1 ? 1.0 / 32.0 : 1.0 / 16.0;
  q.taylor_order = 16;
  q.max_taylor_order = 20;
  return q;
}

std::vector<TableRow> table_square(const std::vector<int>& n_list, const std::vector<double>& nu_list,
                                   const ManyBodyConfig& cfg) {
  const auto sq = named_lattice<double>(LatticeName::square);
  std::vector<TableRow> rows;
  for (double nu : nu_list) {
    for (int n : n_list) {
      if (n < 1) throw DomainError("body count must be positive");
      const auto r = many_body_zeta<double>(sq, std::vector<double>(static_cast<size_t>(n), nu), cfg);
      rows.push_back({n, nu, r.value});
    }
  }
  return rows;
}

}  // namespace latsum

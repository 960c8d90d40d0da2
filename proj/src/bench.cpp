#include "latsum/bench.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "latsum/oracle.hpp"
#include "latsum/parallel.hpp"

namespace latsum {

double error_metric(double value, double reference) {
  const double abs_err = std::abs(value - reference);
  if (reference == 0) return abs_err;
  return std::min(abs_err, abs_err / std::abs(reference));
}

std::vector<std::string> bench_names() {
  return {"one_body_grid", "two_body_grid", "three_body_1d", "meromorphic_1d",
          "three_body_2d", "four_five_body", "n_scaling",     "runtime"};
}

namespace {

struct Task {
  LatticeName lattice;
  std::vector<double> nu;
};

using Evaluator = std::function<void(const Task&, BenchRow&)>;

std::vector<BenchRow> run_tasks(const std::vector<Task>& tasks, const BenchOptions& opt, const Evaluator& eval) {
  std::vector<BenchRow> rows(tasks.size());
  parallel_for(tasks.size(), opt.threads, [&](std::size_t i) {
    BenchRow& r = rows[i];
    r.lattice = std::string(to_string(tasks[i].lattice));
    r.nu = tasks[i].nu;
    try {
      eval(tasks[i], r);
      r.error = error_metric(r.value, r.reference);
    } catch (const Error& e) {
      r.ok = false;
      r.failure = std::string(e.kind()) + ": " + e.what();
      r.value = r.reference = r.error = std::numeric_limits<double>::quiet_NaN();
    }
  });
  return rows;
}

ManyBodyConfig serial(const BenchOptions& opt) {
  ManyBodyConfig c = opt.cfg;
  c.quad.threads = 1;
  c.error_estimate = false;
  return c;
}

/// Sorted triples from one axis grid, taking every stride-th value.
std::vector<std::vector<double>> sorted_triples(const std::vector<double>& axis, int stride) {
  std::vector<double> a;
  for (std::size_t i = 0; i < axis.size(); i += static_cast<std::size_t>(std::max(stride, 1))) a.push_back(axis[i]);
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i; j < a.size(); ++j)
      for (std::size_t k = j; k < a.size(); ++k) out.push_back({a[i], a[j], a[k]});
  return out;
}

std::vector<double> axis(double lo, double step, int count, double offset = 0) {
  std::vector<double> v;
  for (int j = 0; j <= count; ++j) v.push_back(lo + j * step + offset);
  return v;
}

}  // namespace

std::vector<BenchRow> bench_one_body(const std::vector<LatticeName>& lattices, const BenchOptions& opt) {
  std::vector<Task> tasks;
  for (auto name : lattices) {
    const int d = named_lattice<double>(name).dim();
    for (int j = 1; j <= 100; ++j) tasks.push_back({name, {d + j / 10.0}});
  }
  ManyBodyConfig c = serial(opt);
  c.force_integral = true;
  return run_tasks(tasks, opt, [&](const Task& t, BenchRow& r) {
    r.value = many_body_zeta<double>(named_lattice<double>(t.lattice), t.nu, c).value;
    r.reference = 0;
  });
}

std::vector<BenchRow> bench_two_body(const std::vector<LatticeName>& lattices, const BenchOptions& opt) {
  std::vector<Task> tasks;
  for (auto name : lattices) {
    const int d = named_lattice<double>(name).dim();
    for (int j = 1; j <= 100; ++j) tasks.push_back({name, {d + j / 10.0, d + j / 10.0}});
  }
  ManyBodyConfig c = serial(opt);
  c.force_integral = true;
  return run_tasks(tasks, opt, [&](const Task& t, BenchRow& r) {
    const auto lat = named_lattice<double>(t.lattice);
    r.value = many_body_zeta<double>(lat, t.nu, c).value;
    EpsteinOptions eo;
    eo.lambda_scale = c.quad.lambda_scale;
    r.reference = EpsteinZeta<double>(lat, t.nu[0] + t.nu[1], eo).value(zero_vector<double>(lat.dim()));
  });
}

std::vector<BenchRow> bench_three_body_1d(const BenchOptions& opt) {
  std::vector<Task> tasks;
  for (auto& nu : sorted_triples(axis(3.0, 1.0 / 20, opt.steps), opt.stride)) tasks.push_back({LatticeName::integer_1d, nu});
  const ManyBodyConfig c = serial(opt);
  const auto z = named_lattice<double>(LatticeName::integer_1d);
  const auto zl = named_lattice<long double>(LatticeName::integer_1d);
  return run_tasks(tasks, opt, [&](const Task& t, BenchRow& r) {
    r.value = many_body_zeta<double>(z, t.nu, c).value;
    r.reference = static_cast<double>(
        direct_sum_zeta<long double>(zl, std::vector<long double>(t.nu.begin(), t.nu.end()), 1000));
  });
}

std::vector<BenchRow> bench_meromorphic_1d(const BenchOptions& opt) {
  std::vector<Task> tasks;
  // Exact grid values -2 + j/20 + 1/50 in long double for the oracle.
  for (auto& nu : sorted_triples(axis(-2.0, 1.0 / 20, 100, 1.0 / 50), opt.stride))
    tasks.push_back({LatticeName::integer_1d, nu});
  const ManyBodyConfig c = serial(opt);
  const auto z = named_lattice<double>(LatticeName::integer_1d);
  return run_tasks(tasks, opt, [&](const Task& t, BenchRow& r) {
    std::vector<long double> nl;
    for (double v : t.nu) nl.push_back(std::round((static_cast<long double>(v) + 2) * 100) / 100 - 2);
    r.value = many_body_zeta<double>(z, t.nu, c).value;
    r.reference = static_cast<double>(series_many_body_1d<long double>(nl));
  });
}

std::vector<BenchRow> bench_three_body_2d(const std::vector<LatticeName>& lattices, const BenchOptions& opt) {
  std::vector<Task> tasks;
  const auto triples = sorted_triples(axis(5.0, 1.0 / 20, opt.steps), opt.stride);
  for (auto name : lattices)
    for (auto& nu : triples) tasks.push_back({name, nu});
  const ManyBodyConfig c = serial(opt);
  return run_tasks(tasks, opt, [&](const Task& t, BenchRow& r) {
    const auto lat = named_lattice<double>(t.lattice);
    r.value = many_body_zeta<double>(lat, t.nu, c).value;
    r.reference = direct_sum_zeta<double>(lat, t.nu, 60);
  });
}

std::vector<BenchRow> bench_four_five_body(const BenchOptions& opt) {
  std::vector<Task> tasks;
  for (int j = 0; j <= 100; j += std::max(opt.stride, 1)) tasks.push_back({LatticeName::hexagonal, std::vector<double>(4, 12 + j / 5.0)});
  for (int j = 0; j <= 100; j += std::max(opt.stride, 1)) tasks.push_back({LatticeName::hexagonal, std::vector<double>(5, 26 + j / 5.0)});
  const ManyBodyConfig c = serial(opt);
  const auto hex = named_lattice<double>(LatticeName::hexagonal);
  return run_tasks(tasks, opt, [&](const Task& t, BenchRow& r) {
    r.value = many_body_zeta<double>(hex, t.nu, c).value;
    r.reference = direct_sum_zeta<double>(hex, t.nu, t.nu.size() == 4 ? 6 : 3);
  });
}

std::vector<ScalingRow> bench_n_scaling(LatticeName lattice, double nu, const std::vector<int>& ns,
                                        const BenchOptions& opt) {
  const auto lat = named_lattice<double>(lattice);
  ManyBodyConfig c = opt.cfg;
  c.quad.threads = opt.threads;
  c.error_estimate = false;
  EpsteinOptions eo;
  eo.lambda_scale = c.quad.lambda_scale;
  const double z0 = EpsteinZeta<double>(lat, nu, eo).value(zero_vector<double>(lat.dim()));
  std::vector<ScalingRow> rows;
  for (int n : ns) {
    const auto r = many_body_zeta<double>(lat, std::vector<double>(static_cast<std::size_t>(n), nu), c);
    rows.push_back({n, r.value, r.value / std::pow(z0, n), r.wall_time});
  }
  return rows;
}

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("linear fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - f.intercept - f.slope * x[i];
    ssr += e * e;
  }
  f.r2 = syy > 0 ? 1 - ssr / syy : 1;
  return f;
}

}  // namespace latsum

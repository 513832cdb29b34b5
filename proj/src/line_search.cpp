#include "learnaug/line_search.hpp"

#include "learnaug/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace learnaug::line_search {

void LineSearchConfig::validate() const {
  if (!(b >= 2.0) || !std::isfinite(b)) {
    throw std::invalid_argument("line search: base b must be >= 2");
  }
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("line search: rho must be >= 0");
  }
}

double int_power(double b, int n) {
  if (n < 0) return 1.0 / int_power(b, -n);
  double result = 1.0;
  double base = b;
  unsigned e = static_cast<unsigned>(n);
  while (e != 0) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

PredictionDecomposition decompose_prediction(double y, double b) {
  if (y == 0.0 || !std::isfinite(y)) {
    throw std::invalid_argument("decompose_prediction: y must be finite and nonzero");
  }
  if (!(b >= 2.0)) throw std::invalid_argument("decompose_prediction: b must be >= 2");

  const double a = std::abs(y);
  // Log estimate, then fix up against the exact power ladder.
  int k = static_cast<int>(std::ceil(std::log(a) / std::log(b)));
  while (int_power(b, k) < a) ++k;
  while (int_power(b, k - 1) >= a) --k;

  PredictionDecomposition d;
  d.k_y = k;
  d.gamma_y = int_power(b, k) / a;
  const int parity = (k % 2 == 0) ? 1 : -1;
  d.s0 = parity * (y > 0.0 ? 1 : -1);
  return d;
}

int bracket_index(double x, double y, double b) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw std::invalid_argument("bracket_index: x and y must be positive");
  }
  int j = static_cast<int>(std::ceil(std::log(x / y) / (2.0 * std::log(b))));
  while (y * int_power(b, 2 * j) < x) ++j;
  while (y * int_power(b, 2 * j - 2) >= x) --j;
  return j;
}

SearchTrace simulate_search(double x, double y, double b, bool record_turn_points,
                            long iteration_cap) {
  if (!(std::abs(x) >= 1.0) || !std::isfinite(x)) {
    throw std::invalid_argument("simulate_search: target must satisfy |x| >= 1");
  }
  if (x < 0.0) {
    x = -x;
    y = -y;
  }
  const PredictionDecomposition d = decompose_prediction(y, b);
  const double a = std::abs(y);

  SearchTrace trace;
  double travelled = 0.0;
  for (long i = 0; i < iteration_cap; ++i) {
    const double turn = a * int_power(b, static_cast<int>(i - d.k_y));
    if (record_turn_points) trace.turn_points.push_back(turn);
    const int direction = (i % 2 == 0) ? d.s0 : -d.s0;
    if (direction > 0 && turn >= x) {
      trace.distance = 2.0 * travelled + x;
      trace.final_iteration = i;
      return trace;
    }
    travelled += turn;
  }
  throw std::runtime_error("simulate_search: iteration cap " + std::to_string(iteration_cap) +
                           " exceeded");
}

double closed_form_distance(double x, double y, double b) {
  if (!(std::abs(x) >= 1.0)) {
    throw std::invalid_argument("closed_form_distance: target must satisfy |x| >= 1");
  }
  if (x < 0.0) {
    x = -x;
    y = -y;
  }
  if (!(y > 0.0)) {
    throw std::invalid_argument("closed_form_distance: prediction on the wrong side of the origin");
  }
  const PredictionDecomposition d = decompose_prediction(y, b);
  const int j = bracket_index(x, y, b);
  // b^(k_y + 2j) / gamma_y == y b^(2j)
  const double last_turn = y * int_power(b, 2 * j);
  return x + 2.0 / (b - 1.0) * (last_turn - 1.0 / d.gamma_y);
}

PerturbedPrediction perturb_prediction(double y, double rho, double u) {
  if (!(rho >= 0.0)) throw std::invalid_argument("perturb_prediction: rho must be >= 0");
  PerturbedPrediction p;
  p.y = y;
  p.xi = sample_pareto_tail(u);
  p.y_tilde = (1.0 + rho * p.xi) * y;
  return p;
}

double consistency_bound(double b) { return (b + 1.0) / (b - 1.0); }

double robustness_bound(double b) { return 1.0 + 2.0 * b * b / (b - 1.0); }

std::optional<double> theorem1_bound(double x, double y, double b, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) return std::nullopt;
  if (x < 0.0) {
    x = -x;
    y = -y;
  }
  const double eta = std::abs(x - y);
  const double base = (b + 1.0 + 2.0 * rho) / (b - 1.0);
  if (y >= x) return base + 2.0 * (1.0 + rho) / (b - 1.0) * eta / x;
  if (rho == 0.0) return robustness_bound(b);
  return base + 4.0 * (b + 1.0) / rho * eta / x;
}

RatioStats expected_ratio_mc(double x, double y, const LineSearchConfig& config,
                             std::uint64_t trials, SeededStream& stream) {
  config.validate();
  if (trials < 1) throw std::invalid_argument("expected_ratio_mc: trials must be >= 1");
  const double scale = std::abs(x);
  RatioStats stats;
  if (config.rho == 0.0) {
    const double ratio = search_distance(x, y, config.b) / scale;
    for (std::uint64_t t = 0; t < trials; ++t) stats.accumulate(ratio);
    return stats;
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double y_tilde = perturb_prediction(y, config.rho, stream.uniform()).y_tilde;
    stats.accumulate(search_distance(x, y_tilde, config.b) / scale);
  }
  return stats;
}

BrittlenessProbe brittleness_probe(double b, double epsilon, double x, int grid_points) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("brittleness_probe: epsilon must be > 0");
  if (!(x >= 1.0)) throw std::invalid_argument("brittleness_probe: x must be >= 1");
  if (grid_points < 2) throw std::invalid_argument("brittleness_probe: need at least 2 grid points");

  const double lo = std::max(x / (b * b), (1.0 - epsilon) * x);
  const double gap = x - lo;
  BrittlenessProbe probe;
  probe.proof_floor = robustness_bound(b) - 2.0 / ((b - 1.0) * x);

  // Offsets below x shrink geometrically from the full gap down to 1e-12 of it.
  double top = lo;
  for (int i = 0; i < grid_points; ++i) {
    const double offset = gap * std::pow(10.0, -12.0 * i / (grid_points - 1));
    const double y = x - offset;
    if (!(y < x)) continue;
    top = std::max(top, y);
    const double ratio = closed_form_distance(x, y, b) / x;
    if (ratio > probe.worst_ratio) {
      probe.worst_ratio = ratio;
      probe.worst_y = y;
    }
  }
  probe.grid_slack = 2.0 * b * b / (b - 1.0) * (x - top) / x;
  return probe;
}

std::vector<Figure2Row> figure2_sweep(double x, double b, const std::vector<double>& rho_grid,
                                      const std::vector<double>& y_over_x_grid,
                                      std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
  const std::size_t per_rho = y_over_x_grid.size();
  return run_cells(rho_grid.size() * per_rho, jobs, [&](std::size_t cell) {
    Figure2Row row;
    row.rho = rho_grid[cell / per_rho];
    row.y_over_x = y_over_x_grid[cell % per_rho];
    const double y = row.y_over_x * x;
    SeededStream stream(seed, cell);
    row.stats = expected_ratio_mc(x, y, LineSearchConfig{b, row.rho}, trials, stream);
    row.bound = theorem1_bound(x, y, b, row.rho);
    return row;
  });
}

}  // namespace learnaug::line_search

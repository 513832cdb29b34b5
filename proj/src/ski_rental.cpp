#include "learnaug/ski_rental.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "learnaug/parallel.hpp"

namespace learnaug::ski {

void SkiConfig::validate() const {
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("ski: buy cost b must be > 0");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("ski: rho must lie in [0, 1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("ski: lambda must lie in (0, 1]");
  if (lambda == 0.0 && rho != 0.0) {
    throw std::invalid_argument("ski: lambda = 0 is only defined with rho = 0");
  }
}

double SkiConfig::beta() const {
  if (rho == 0.0) return 1.0;
  return 1.0 + rho * (1.0 / lambda - 1.0);
}

void PredictionModelQ::validate() const {
  if (!(Q >= 0.5 && Q <= 1.0)) throw std::invalid_argument("ski: Q must lie in [1/2, 1]");
}

double buy_time(double y, const SkiConfig& config) {
  return y >= config.b ? config.lambda * config.b : config.beta() * config.b;
}

SkiOutcome cost(double x, double y, const SkiConfig& config) {
  if (!(x > 0.0)) throw std::invalid_argument("ski: season length x must be > 0");
  const double planned = buy_time(y, config);
  SkiOutcome out;
  if (x < planned) {
    out.buy_time = std::numeric_limits<double>::infinity();
    out.cost = x;
  } else {
    out.buy_time = planned;
    out.cost = planned + config.b;
  }
  out.opt = std::min(x, config.b);
  out.ratio = out.cost / out.opt;
  out.eta = std::abs(x - y);
  return out;
}

double theorem3_bound(double x, double y, const SkiConfig& config) {
  const double robust = 1.0 + 1.0 / config.lambda;
  const double eta = std::abs(x - y);
  if (eta == 0.0) return std::min(robust, 1.0 + config.lambda);
  if (config.rho == 0.0) return robust;
  const double smooth =
      (1.0 + config.lambda) + (1.0 + config.lambda / config.rho) * eta / std::min(x, config.b);
  return std::min(robust, smooth);
}

double exact_average_ratio(double x, const SkiConfig& config, const PredictionModelQ& model) {
  const double same = cost(x, PredictionModelQ::y_same(x, config.b), config).ratio;
  if (model.Q == 1.0) return same;
  const double opposite = cost(x, PredictionModelQ::y_opposite(x, config.b), config).ratio;
  return model.Q * same + (1.0 - model.Q) * opposite;
}

double theorem4_bound(const SkiConfig& config, double Q) {
  const double l = config.lambda;
  const double first = 2.0 + (1.0 / l - 1.0) * ((1.0 - Q) * config.rho - Q * l);
  const double second = 1.0 + (1.0 - Q) / l;
  return std::max(first, second);
}

double corollary_lambda_star(double Q) {
  const double a = 1.0 / Q - 1.0;
  return 0.5 * std::sqrt(a * (1.0 / Q + 3.0)) - 0.5 * a;
}

double corollary_bound(double Q) {
  return (3.0 - Q) / 2.0 + 0.5 * std::sqrt((1.0 - Q) * (1.0 + 3.0 * Q));
}

double prior_bound(double Q) { return 1.0 + 2.0 * std::sqrt(Q * (1.0 - Q)); }

std::vector<Figure5Row> gaussian_sweep(double b, double lambda, const std::vector<double>& rho_grid,
                                       const std::vector<double>& sigma_grid,
                                       const std::vector<double>& x_grid, std::uint64_t trials,
                                       std::uint64_t seed, unsigned jobs) {
  if (trials < 1) throw std::invalid_argument("gaussian_sweep: trials must be >= 1");
  if (x_grid.empty() || sigma_grid.empty() || rho_grid.empty()) {
    throw std::invalid_argument("gaussian_sweep: grids must be nonempty");
  }
  for (double rho : rho_grid) SkiConfig{b, lambda, rho}.validate();

  const std::size_t per_row = x_grid.size();
  const std::size_t row_count = rho_grid.size() * sigma_grid.size();
  const auto stats = run_cells(row_count * per_row, jobs, [&](std::size_t cell) {
    const std::size_t row = cell / per_row;
    const SkiConfig config{b, lambda, rho_grid[row / sigma_grid.size()]};
    const double sigma = sigma_grid[row % sigma_grid.size()];
    const double x = x_grid[cell % per_row];
    SeededStream stream(seed, cell);
    RatioStats acc;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const double y = sigma > 0.0 ? stream.normal(x, sigma) : x;
      acc.accumulate(cost(x, y, config).ratio);
    }
    return acc;
  });

  std::vector<Figure5Row> rows(row_count);
  for (std::size_t row = 0; row < row_count; ++row) {
    Figure5Row& out = rows[row];
    out.rho = rho_grid[row / sigma_grid.size()];
    out.sigma = sigma_grid[row % sigma_grid.size()];
    out.robustness_bound = 1.0 + 1.0 / lambda;
    for (std::size_t i = 0; i < per_row; ++i) {
      const RatioStats& s = stats[row * per_row + i];
      if (i == 0 || s.mean() > out.worst.mean()) {
        out.worst = s;
        out.worst_x = x_grid[i];
      }
    }
  }
  return rows;
}

std::vector<Figure6Row> bernoulli_sweep(double b, double lambda, const std::vector<double>& rho_grid,
                                        const std::vector<double>& q_grid, std::uint64_t trials,
                                        std::uint64_t seed, unsigned jobs) {
  if (trials < 1) throw std::invalid_argument("bernoulli_sweep: trials must be >= 1");
  for (double rho : rho_grid) SkiConfig{b, lambda, rho}.validate();
  for (double q : q_grid) PredictionModelQ{q}.validate();

  return run_cells(rho_grid.size() * q_grid.size(), jobs, [&](std::size_t cell) {
    Figure6Row row;
    row.rho = rho_grid[cell / q_grid.size()];
    row.Q = q_grid[cell % q_grid.size()];
    const SkiConfig config{b, lambda, row.rho};
    SeededStream stream(seed, cell);
    for (std::uint64_t t = 0; t < trials; ++t) {
      const double x = 1.0 + (4.0 * b - 1.0) * stream.uniform();
      const bool same_side = stream.uniform() <= row.Q;
      const double y = same_side ? PredictionModelQ::y_same(x, b) : PredictionModelQ::y_opposite(x, b);
      row.stats.accumulate(cost(x, y, config).ratio);
    }
    return row;
  });
}

std::vector<double> default_x_grid(double b, std::size_t points) {
  std::vector<double> grid;
  grid.reserve(points);
  for (std::size_t i = 1; i <= points; ++i) {
    grid.push_back(5.0 * b * static_cast<double>(i) / static_cast<double>(points));
  }
  return grid;
}

}  // namespace learnaug::ski

#include "learnaug/one_max.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "learnaug/grid.hpp"
#include "learnaug/parallel.hpp"

namespace learnaug::one_max {

namespace {
constexpr double kLeftLimit = 1e-9;
}  // namespace

void OneMaxConfig::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("one-max: lambda must lie in [0, 1]");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw std::invalid_argument("one-max: rho must be >= 0");
  if (!(theta > 1.0) || !std::isfinite(theta)) throw std::invalid_argument("one-max: theta must be > 1");
}

ParetoPoint solve_pareto(double lambda, double theta) {
  OneMaxConfig{lambda, 0.0, theta}.validate();
  const double a = 1.0 - lambda;
  const double r = (a + std::sqrt(a * a + 4.0 * theta * lambda)) / (2.0 * theta);
  return ParetoPoint{1.0 / (theta * r), r};
}

PriceSequence::PriceSequence(std::vector<double> prices, double theta) : prices_(std::move(prices)) {
  if (prices_.empty()) throw std::invalid_argument("price sequence must be nonempty");
  for (double p : prices_) {
    if (!(p >= 1.0 && p <= theta)) throw std::invalid_argument("price outside [1, theta]");
  }
  p_star_ = *std::max_element(prices_.begin(), prices_.end());
}

double threshold(const OneMaxConfig& config, double y, const ParetoPoint& pareto) {
  if (!(y >= 1.0 && y <= config.theta)) {
    throw std::invalid_argument("threshold: prediction outside [1, theta]");
  }
  const double inv_c = 1.0 / pareto.c;
  const double inv_r = 1.0 / pareto.r;
  if (y < inv_c) return inv_c;
  if (y < inv_r) return config.lambda / pareto.r + (1.0 - config.lambda) * pareto.c * y;
  return inv_r;
}

ThresholdRealization randomized_threshold(const OneMaxConfig& config, double y,
                                          const ParetoPoint& pareto, double u) {
  ThresholdRealization t;
  t.phi = threshold(config, y, pareto);
  t.u = u;
  t.randomized = y >= 1.0 / pareto.r;
  t.phi_tilde = t.randomized ? std::exp(-config.rho * u) / pareto.r : t.phi;
  return t;
}

double run_instance(const PriceSequence& prices, double threshold_value) {
  for (double p : prices.prices()) {
    if (p >= threshold_value) return p;
  }
  return prices.prices().back();
}

PriceSequence adversarial_instance(double p_star, int n, double theta) {
  if (n < 2) throw std::invalid_argument("adversarial_instance: n must be >= 2");
  if (!(p_star >= 1.0 && p_star <= theta)) {
    throw std::invalid_argument("adversarial_instance: p_star outside [1, theta]");
  }
  std::vector<double> prices;
  prices.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) {
    prices.push_back(1.0 + static_cast<double>(i) / static_cast<double>(n - 1) * (p_star - 1.0));
  }
  prices.back() = p_star;
  prices.push_back(1.0);
  return PriceSequence(std::move(prices), theta);
}

double run_ramp_instance(const PriceSequence& ramp_instance, double threshold_value) {
  const auto prices = ramp_instance.prices();
  const auto ramp = prices.first(prices.size() - 1);
  const auto it = std::lower_bound(ramp.begin(), ramp.end(), threshold_value);
  return it != ramp.end() ? *it : prices.back();
}

double worst_case_payoff(double p_star, double threshold_value) {
  return p_star >= threshold_value ? threshold_value : 1.0;
}

double log_scaled_max_price(double p_star, const ParetoPoint& pareto) {
  return -std::log(pareto.r * p_star);
}

double robustness_floor(double rho, const ParetoPoint& pareto) {
  if (rho == 0.0) return pareto.r;
  return -std::expm1(-rho) / rho * pareto.r;
}

double exact_expected_ratio(double p_star, const OneMaxConfig& config, const ParetoPoint& pareto) {
  const double rho = config.rho;
  if (rho == 0.0) {
    return p_star >= 1.0 / pareto.r ? 1.0 / (pareto.r * p_star) : 1.0 / p_star;
  }
  const double s = log_scaled_max_price(p_star, pareto);
  const double s_clamped = std::clamp(s, 0.0, rho);
  // U >= s/rho: payoff e^(-rho U)/r, ratio e^s e^(-rho U).  U < s/rho: payoff 1.
  const double accepted = std::exp(s) * (std::exp(-s_clamped) - std::exp(-rho)) / rho;
  const double fallback = (s_clamped / rho) / p_star;
  return accepted + fallback;
}

double proof_lower_expression(double p_star, const OneMaxConfig& config,
                              const ParetoPoint& pareto) {
  const double rho = config.rho;
  const double s = log_scaled_max_price(p_star, pareto);
  if (rho == 0.0) return s <= 0.0 ? pareto.c : pareto.r;
  if (s <= 0.0) return pareto.c * (-std::expm1(-rho)) / rho;
  if (s >= rho) return pareto.r * std::expm1(rho) / rho;
  return pareto.c * (std::exp(-s) - std::exp(-rho)) / rho + pareto.r * std::expm1(s) / rho;
}

double smoothness_lower_bound(double y, double p_star, const OneMaxConfig& config,
                              const ParetoPoint& pareto) {
  const double c = pareto.c;
  const double r = pareto.r;
  const double lambda = config.lambda;
  const double rho = config.rho;
  const double rel_error = std::abs(p_star - y) / p_star;
  constexpr double kNone = -std::numeric_limits<double>::infinity();

  if (y < 1.0 / c) return c - c * rel_error;
  if (y < 1.0 / r) {
    if (lambda == 0.0) return kNone;
    return c - (1.0 - lambda) * std::max(1.0, c / lambda) * c * rel_error;
  }
  if (rho == 0.0) return rel_error == 0.0 ? c : kNone;
  return (-std::expm1(-rho) / rho) * c - (c - r) / rho * rel_error;
}

double lemma_bounds(double y, double p_star, const OneMaxConfig& config, const ParetoPoint& pareto) {
  return std::max(smoothness_lower_bound(y, p_star, config, pareto),
                  robustness_floor(config.rho, pareto));
}

RatioStats expected_ratio_mc(double p_star, double y, const OneMaxConfig& config,
                             const ParetoPoint& pareto, std::uint64_t trials, SeededStream& stream) {
  RatioStats stats;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double u = stream.uniform();
    const double phi = randomized_threshold(config, y, pareto, u).phi_tilde;
    stats.accumulate(worst_case_payoff(p_star, phi) / p_star);
  }
  return stats;
}

std::vector<double> p_star_grid(const OneMaxConfig& config, const ParetoPoint& pareto,
                                std::size_t points) {
  std::vector<double> breakpoints;
  for (double v : {1.0 / pareto.r, std::exp(-config.rho) / pareto.r}) {
    if (v > 1.0 && v < config.theta &&
        std::find(breakpoints.begin(), breakpoints.end(), v) == breakpoints.end()) {
      breakpoints.push_back(v);
      // The rho = 0 worst case is the limit from below, not the breakpoint itself.
      const double left = v * (1.0 - kLeftLimit);
      if (left > 1.0) breakpoints.push_back(left);
    }
  }
  const std::size_t base = points > breakpoints.size() + 2 ? points - breakpoints.size() : 2;
  std::vector<double> grid = linspace(1.0, config.theta, base);
  grid.insert(grid.end(), breakpoints.begin(), breakpoints.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<Figure3Row> figure3_sweep(double lambda, double theta, const std::vector<double>& rho_grid,
                                      const std::vector<double>& sigma_grid, std::uint64_t trials,
                                      std::uint64_t seed, unsigned jobs,
                                      const Figure3Options& options) {
  if (trials < 1) throw std::invalid_argument("figure3_sweep: trials must be >= 1");
  const ParetoPoint pareto = solve_pareto(lambda, theta);

  struct Cell {
    std::size_t row;
    double p_star;
    double sigma;
    double rho;
  };
  std::vector<Cell> cells;
  std::vector<Figure3Row> rows;
  for (double rho : rho_grid) {
    const OneMaxConfig config{lambda, rho, theta};
    config.validate();
    const std::vector<double> grid = p_star_grid(config, pareto, options.p_star_points);
    for (double sigma : sigma_grid) {
      if (!(sigma >= 0.0)) throw std::invalid_argument("figure3_sweep: sigma must be >= 0");
      Figure3Row row;
      row.sigma = sigma;
      row.rho = rho;
      row.robustness_floor = robustness_floor(rho, pareto);
      for (double p : grid) cells.push_back({rows.size(), p, sigma, rho});
      rows.push_back(row);
    }
  }

  const auto stats = run_cells(cells.size(), jobs, [&](std::size_t i) {
    const Cell& cell = cells[i];
    const OneMaxConfig config{lambda, cell.rho, theta};
    const PriceSequence instance = adversarial_instance(cell.p_star, options.ramp_length, theta);
    SeededStream stream(seed, i);
    RatioStats acc;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const double noise = cell.sigma * (2.0 * stream.uniform() - 1.0);
      const double y = std::clamp(cell.p_star + noise, 1.0, theta);
      const double phi = randomized_threshold(config, y, pareto, stream.uniform()).phi_tilde;
      acc.accumulate(run_ramp_instance(instance, phi) / cell.p_star);
    }
    return acc;
  });

  std::vector<bool> seen(rows.size(), false);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Figure3Row& row = rows[cells[i].row];
    if (!seen[cells[i].row] || stats[i].mean() < row.worst.mean()) {
      seen[cells[i].row] = true;
      row.worst = stats[i];
      row.worst_p_star = cells[i].p_star;
    }
  }
  return rows;
}

}  // namespace learnaug::one_max

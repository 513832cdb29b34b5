#pragma once

#include <cstdint>
#include <vector>

#include "learnaug/sampling.hpp"

namespace learnaug::ski {

/// Buy cost b, trust lambda and smoothness knob rho.
///
/// lambda lies in (0, 1]; lambda = 0 is admitted only together with rho = 0,
/// where the late buy time is b itself.
struct SkiConfig {
  double b = 1.0;
  double lambda = 0.5;
  double rho = 0.0;

  void validate() const;
  /// beta = 1 + rho (1/lambda - 1), in [1, 1/lambda].
  double beta() const;
};

struct SkiOutcome {
  /// +inf when the season ends before the planned purchase.
  double buy_time = 0.0;
  double cost = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
  double eta = 0.0;
};

/// Bernoulli-Q prediction model: the prediction falls on the same side of b
/// as x with probability Q.
struct PredictionModelQ {
  double Q = 1.0;

  void validate() const;
  /// Representatives; the policy only looks at 1{y >= b}.
  static double y_same(double x, double b) { return x >= b ? 2.0 * b : 0.5 * b; }
  static double y_opposite(double x, double b) { return x >= b ? 0.5 * b : 2.0 * b; }
};

/// lambda b when y >= b, beta b otherwise.
double buy_time(double y, const SkiConfig& config);

/// Rent until the buy time, then pay b. Requires x > 0.
SkiOutcome cost(double x, double y, const SkiConfig& config);

/// min(1 + 1/lambda, (1 + lambda) + (1 + lambda/rho) eta / min(x, b)).
/// The smoothness term is dropped when rho = 0 and eta > 0.
double theorem3_bound(double x, double y, const SkiConfig& config);

/// Q ratio(x, y_same) + (1 - Q) ratio(x, y_opposite).
double exact_average_ratio(double x, const SkiConfig& config, const PredictionModelQ& model);

/// max(2 + (1/lambda - 1)((1-Q) rho - Q lambda), 1 + (1-Q)/lambda).
double theorem4_bound(const SkiConfig& config, double Q);

/// Trust level balancing the two terms of theorem4_bound at rho = 0.
double corollary_lambda_star(double Q);
/// (3 - Q)/2 + sqrt((1-Q)(1+3Q))/2.
double corollary_bound(double Q);
/// 1 + 2 sqrt(Q (1-Q)), the earlier guarantee for the rho = 1 policy.
double prior_bound(double Q);

struct Figure5Row {
  double sigma = 0.0;
  double rho = 0.0;
  double worst_x = 0.0;
  RatioStats worst;  // stats of the x cell with the largest mean
  double robustness_bound = 0.0;
};

/// For each (rho, sigma): max over x_grid of the mean ratio with prediction
/// y = x + N(0, sigma^2). Rows ordered rho-major; one stream per
/// (rho, sigma, x) cell.
std::vector<Figure5Row> gaussian_sweep(double b, double lambda, const std::vector<double>& rho_grid,
                                       const std::vector<double>& sigma_grid,
                                       const std::vector<double>& x_grid, std::uint64_t trials,
                                       std::uint64_t seed, unsigned jobs);

struct Figure6Row {
  double Q = 0.0;
  double rho = 0.0;
  RatioStats stats;
};

/// Mean ratio with x ~ U[1, 4b] and the prediction on the correct side of b
/// with probability Q. Rows ordered rho-major; one stream per (rho, Q) cell.
std::vector<Figure6Row> bernoulli_sweep(double b, double lambda, const std::vector<double>& rho_grid,
                                        const std::vector<double>& q_grid, std::uint64_t trials,
                                        std::uint64_t seed, unsigned jobs);

/// (0, 5b] sampled at `points` evenly spaced values 5b i / points.
std::vector<double> default_x_grid(double b, std::size_t points = 100);

}  // namespace learnaug::ski

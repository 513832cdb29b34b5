#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "learnaug/sampling.hpp"

namespace learnaug::one_max {

/// Prices are normalised to [1, theta]; lambda is the trust in the prediction
/// and rho scales the randomisation of the top threshold.
struct OneMaxConfig {
  double lambda = 0.5;
  double rho = 0.0;
  double theta = 2.0;

  void validate() const;
};

/// Consistency / robustness pair on the Pareto front.
struct ParetoPoint {
  double c = 1.0;
  double r = 1.0;
};

/// Unique positive solution of 1/c = theta r and 1/c = lambda/r + 1 - lambda.
/// Eliminating c gives theta r^2 - (1-lambda) r - lambda = 0; we take the
/// positive root in closed form.
ParetoPoint solve_pareto(double lambda, double theta);

/// Validated, nonempty sequence of prices in [1, theta].
class PriceSequence {
 public:
  PriceSequence(std::vector<double> prices, double theta);

  std::span<const double> prices() const { return prices_; }
  double p_star() const { return p_star_; }
  std::size_t size() const { return prices_.size(); }

 private:
  std::vector<double> prices_;
  double p_star_ = 0.0;
};

struct ThresholdRealization {
  double phi = 0.0;        // deterministic threshold
  double phi_tilde = 0.0;  // threshold actually used
  double u = 1.0;          // the uniform draw
  bool randomized = false; // true on the y >= 1/r branch
};

/// Piecewise threshold: 1/c below 1/c, the linear interpolation
/// lambda/r + (1-lambda) c y in between, and 1/r from 1/r upward.
/// Throws std::invalid_argument for y outside [1, theta].
double threshold(const OneMaxConfig& config, double y, const ParetoPoint& pareto);

/// On y >= 1/r the threshold becomes e^(-rho u)/r; elsewhere it is unchanged.
ThresholdRealization randomized_threshold(const OneMaxConfig& config, double y,
                                          const ParetoPoint& pareto, double u);

/// First price at least `threshold_value`, else the last price.
double run_instance(const PriceSequence& prices, double threshold_value);

/// Ramp 1 -> p_star over n prices followed by a final price of 1.
PriceSequence adversarial_instance(double p_star, int n, double theta);

/// Same answer as run_instance on an adversarial_instance, by binary search
/// over the ramp.
double run_ramp_instance(const PriceSequence& ramp_instance, double threshold_value);

/// Limit payoff of the ramp instance as n grows: the threshold itself when
/// p_star reaches it, otherwise the floor price 1.
double worst_case_payoff(double p_star, double threshold_value);

/// s = -ln(r p_star).
double log_scaled_max_price(double p_star, const ParetoPoint& pareto);

/// ((1 - e^-rho)/rho) r, with the rho -> 0 limit r.
double robustness_floor(double rho, const ParetoPoint& pareto);

/// Exact E_U[worst_case_payoff(p_star, e^(-rho U)/r)] / p_star, i.e. the
/// expected ratio on the randomised branch against the worst-case instance.
/// rho = 0 gives the deterministic threshold 1/r.
double exact_expected_ratio(double p_star, const OneMaxConfig& config, const ParetoPoint& pareto);

/// Lower-bound expression used in the robustness/smoothness argument:
///   c (e^-s - e^-rho)/rho + r (e^s - 1)/rho   with s clamped to [0, rho].
/// Never exceeds exact_expected_ratio; equal at p_star = theta.
double proof_lower_expression(double p_star, const OneMaxConfig& config,
                              const ParetoPoint& pareto);

/// Error-dependent lower bound on the expected ratio for prediction y, per
/// branch of y (below 1/c, between 1/c and 1/r, from 1/r up). Returns -inf
/// where the branch carries no guarantee (lambda = 0 in the middle branch,
/// rho = 0 with nonzero error on the top branch).
double smoothness_lower_bound(double y, double p_star, const OneMaxConfig& config,
                              const ParetoPoint& pareto);

/// max(smoothness_lower_bound, robustness_floor).
double lemma_bounds(double y, double p_star, const OneMaxConfig& config, const ParetoPoint& pareto);

/// Monte-Carlo estimate of the quantity exact_expected_ratio computes, for
/// an arbitrary prediction y.
RatioStats expected_ratio_mc(double p_star, double y, const OneMaxConfig& config,
                             const ParetoPoint& pareto, std::uint64_t trials, SeededStream& stream);

/// `points` values on [1, theta], always containing 1/r and e^-rho/r when
/// those fall inside the interval, each with a neighbour (1 - 1e-9) below it.
std::vector<double> p_star_grid(const OneMaxConfig& config, const ParetoPoint& pareto,
                                std::size_t points = 512);

struct Figure3Row {
  double sigma = 0.0;
  double rho = 0.0;
  double worst_p_star = 0.0;
  RatioStats worst;  // stats of the p_star cell with the smallest mean
  double robustness_floor = 0.0;
};

struct Figure3Options {
  int ramp_length = 64;
  std::size_t p_star_points = 512;
};

/// For each (rho, sigma): min over the p_star grid of the mean ratio of the
/// ramp instance under prediction clamp(p_star + U[-sigma, sigma], 1, theta).
/// Rows ordered rho-major; cell (rho, sigma, p_star) has its own stream.
std::vector<Figure3Row> figure3_sweep(double lambda, double theta, const std::vector<double>& rho_grid,
                                      const std::vector<double>& sigma_grid, std::uint64_t trials,
                                      std::uint64_t seed, unsigned jobs,
                                      const Figure3Options& options = {});

}  // namespace learnaug::one_max

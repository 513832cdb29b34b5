#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "learnaug/sampling.hpp"

namespace learnaug::line_search {

/// Geometric search with a prediction: base b >= 2 and perturbation scale rho.
///
/// rho in [0, 1] is the range covered by the smoothness guarantee; larger rho
/// is accepted for exploration but bound evaluators refuse to certify it.
struct LineSearchConfig {
  double b = 2.0;
  double rho = 0.0;

  void validate() const;
  bool certified() const { return rho >= 0.0 && rho <= 1.0; }
};

/// Turn-point bookkeeping derived from a prediction y.
///
/// k_y is the smallest integer with |y| <= b^k_y, so b^(k_y-2) < |y| <= b^k_y
/// and gamma_y = b^k_y / |y| lies in [1, b).
struct PredictionDecomposition {
  int k_y = 0;
  double gamma_y = 1.0;
  int s0 = 1;
};

struct SearchTrace {
  double distance = 0.0;
  long final_iteration = 0;
  /// d_0..d_m; empty when the caller asked for distance only.
  std::vector<double> turn_points;
};

struct PerturbedPrediction {
  double y = 0.0;
  double xi = 0.0;
  double y_tilde = 0.0;
};

/// b^n by repeated squaring. Both the simulation and the closed form use it,
/// so exact ties (x == y b^2j) resolve the same way on both routes.
double int_power(double b, int n);

PredictionDecomposition decompose_prediction(double y, double b);

/// The bracket index j with 1 <= (y/x) b^(2j) < b^2 (x, y > 0).
int bracket_index(double x, double y, double b);

inline constexpr long kDefaultIterationCap = 1'000'000;

/// Runs the alternating search for target x with prediction y.
/// Throws std::invalid_argument for |x| < 1 or y == 0 and std::runtime_error
/// when the iteration cap is exceeded.
SearchTrace simulate_search(double x, double y, double b, bool record_turn_points = true,
                            long iteration_cap = kDefaultIterationCap);

/// Traveled distance only; same loop as simulate_search without the trace.
inline double search_distance(double x, double y, double b) {
  return simulate_search(x, y, b, false).distance;
}

/// Exact distance from the geometric-sum formula
///   x + 2/(b-1) (b^(k_y+2j)/gamma_y - 1/gamma_y).
/// Requires sign(x) == sign(y); throws std::invalid_argument otherwise.
double closed_form_distance(double x, double y, double b);

PerturbedPrediction perturb_prediction(double y, double rho, double u);

double consistency_bound(double b);
double robustness_bound(double b);

/// Upper bound on E[distance]/|x| for the perturbed prediction.
///
/// Empty for rho outside [0, 1]. With rho = 0, y < x and a nonzero error the
/// smoothness branch is vacuous and the robustness constant is returned.
std::optional<double> theorem1_bound(double x, double y, double b, double rho);

/// Mean of distance(x, (1 + rho xi) y)/|x| over `trials` draws from `stream`.
RatioStats expected_ratio_mc(double x, double y, const LineSearchConfig& config,
                             std::uint64_t trials, SeededStream& stream);

struct BrittlenessProbe {
  double worst_ratio = 0.0;
  double worst_y = 0.0;
  /// (1 + 2b^2/(b-1)) - 2/((b-1) x): the lower bound the sup must reach.
  double proof_floor = 0.0;
  /// Ratio lost because the grid stops short of y = x.
  double grid_slack = 0.0;
};

/// Worst deterministic ratio for y in [max(x/b^2, (1-eps) x), x).
BrittlenessProbe brittleness_probe(double b, double epsilon, double x, int grid_points = 4096);

struct Figure2Row {
  double y_over_x = 0.0;
  double rho = 0.0;
  RatioStats stats;
  std::optional<double> bound;
};

/// Expected ratio over a grid of y/x for each rho; rows ordered rho-major.
/// Cell i draws from SeededStream(seed, i).
std::vector<Figure2Row> figure2_sweep(double x, double b, const std::vector<double>& rho_grid,
                                      const std::vector<double>& y_over_x_grid,
                                      std::uint64_t trials, std::uint64_t seed, unsigned jobs);

}  // namespace learnaug::line_search

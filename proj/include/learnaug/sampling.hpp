#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace learnaug {

/// Deterministic random stream keyed by (seed, stream_id).
///
/// Every sweep cell owns one stream, so results do not depend on how cells
/// are scheduled across workers.
class SeededStream {
 public:
  SeededStream(std::uint64_t seed, std::uint64_t stream_id);

  /// Next value in (0, 1]. Never returns 0.
  double uniform();

  /// Next draw from N(mean, stddev^2).
  double normal(double mean, double stddev);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

inline double uniform_draw(SeededStream& stream) { return stream.uniform(); }

/// Inverse of the tail Pr(xi >= t) = 1/(1+t)^2, i.e. 1/sqrt(u) - 1.
/// Throws std::domain_error unless u is in (0, 1].
double sample_pareto_tail(double u);

/// Pr(xi >= t) = 1/(1+t)^2 for t >= 0.
double pareto_tail_probability(double t);

/// One-pass mean / variance accumulator (Welford), mergeable across workers.
class RatioStats {
 public:
  void accumulate(double ratio);
  void merge(const RatioStats& other);

  std::uint64_t n() const { return n_; }
  double mean() const { return mean_; }
  double m2() const { return m2_; }

  /// Sample variance; absent for n < 2.
  std::optional<double> variance() const;
  /// Standard error of the mean, sqrt(m2 / (n (n-1))); absent for n < 2.
  std::optional<double> se() const;
  /// se() or 0 when absent; handy in "mean <= bound + 3 se" checks.
  double se_or_zero() const { return se().value_or(0.0); }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

inline RatioStats accumulate(RatioStats stats, double ratio) {
  stats.accumulate(ratio);
  return stats;
}

}  // namespace learnaug

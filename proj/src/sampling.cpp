#include "learnaug/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace learnaug {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32),
                    0x6c61u};
  return std::mt19937_64(seq);
}

}  // namespace

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

double SeededStream::uniform() {
  // 53 random bits k -> (k + 1) 2^-53, so the smallest value is 2^-53.
  const std::uint64_t k = engine_() >> 11;
  return static_cast<double>(k + 1) * 0x1.0p-53;
}

double SeededStream::normal(double mean, double stddev) {
  return normal_(engine_, std::normal_distribution<double>::param_type(mean, stddev));
}

double sample_pareto_tail(double u) {
  if (!(u > 0.0) || u > 1.0) {
    throw std::domain_error("sample_pareto_tail: u must lie in (0, 1]");
  }
  return 1.0 / std::sqrt(u) - 1.0;
}

double pareto_tail_probability(double t) {
  if (t <= 0.0) return 1.0;
  const double s = 1.0 + t;
  return 1.0 / (s * s);
}

void RatioStats::accumulate(double ratio) {
  ++n_;
  const double delta = ratio - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (ratio - mean_);
}

void RatioStats::merge(const RatioStats& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double total = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  n_ += other.n_;
}

std::optional<double> RatioStats::variance() const {
  if (n_ < 2) return std::nullopt;
  return m2_ / static_cast<double>(n_ - 1);
}

std::optional<double> RatioStats::se() const {
  if (n_ < 2) return std::nullopt;
  const double n = static_cast<double>(n_);
  return std::sqrt(m2_ / (n * (n - 1.0)));
}

}  // namespace learnaug

#include "learnaug/grid.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace learnaug {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {lo};
  out.reserve(count);
  const double span = hi - lo;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(lo + span * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > 0.0)) {
    throw std::invalid_argument("logspace: bounds must be positive");
  }
  std::vector<double> out = linspace(std::log(lo), std::log(hi), count);
  for (double& v : out) v = std::exp(v);
  if (!out.empty()) {
    out.front() = lo;
    out.back() = hi;
  }
  return out;
}

namespace {

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  }
  return value;
}

// Drops accumulated step error: 0.1 * 3 becomes 0.3, not 0.30000000000000004.
double snap(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
  double out = v;
  std::from_chars(buf.data(), res.ptr, out);
  return out;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty grid");

  if (text.find(':') != std::string_view::npos) {
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
      throw std::invalid_argument("range must be start:stop:step, got '" + std::string(text) + "'");
    }
    const double start = parse_number(text.substr(0, first));
    const double stop = parse_number(text.substr(first + 1, second - first - 1));
    const double step = parse_number(text.substr(second + 1));
    if (!(step > 0.0) || stop < start) {
      throw std::invalid_argument("range needs step > 0 and stop >= start: '" + std::string(text) + "'");
    }
    const double span = (stop - start) / step;
    const auto steps = static_cast<std::size_t>(std::floor(span + 1e-9));
    std::vector<double> out;
    out.reserve(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
      out.push_back(snap(start + static_cast<double>(i) * step));
    }
    if (std::abs(span - std::round(span)) < 1e-9) out.back() = stop;
    return out;
  }

  std::vector<double> out;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = text.find(',', pos);
    out.push_back(parse_number(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace learnaug

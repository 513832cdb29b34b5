#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace learnaug {

/// `count` evenly spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// `count` log-spaced points from lo to hi inclusive (lo, hi > 0).
std::vector<double> logspace(double lo, double hi, std::size_t count);

/// Parses "start:stop:step" or a comma-separated list ("0.05,0.5,5").
/// A range yields start + i*step for i = 0..round((stop-start)/step).
/// Throws std::invalid_argument on malformed input.
std::vector<double> parse_grid(std::string_view text);

}  // namespace learnaug

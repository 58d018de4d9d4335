#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "thetasum/numerics.hpp"

namespace thetasum {

/// Parses the command-line complex literal RE{+|-}IMi (decimal or exponent
/// notation), e.g. "-2+0i", "1.5e0-0.25i". Both parts are required; throws
/// std::invalid_argument on anything else.
Complex parse_complex(std::string_view s);

/// 17-significant-digit formatting ('.' decimal separator, locale-free).
std::string format_double(double x);
std::string format_complex(Complex z);  // RE{+|-}IMi

// Runtime defaults, overridable by a key = value config file and then by
// command-line flags.
struct Config {
  double series_tol = 1e-12;
  double dual_tol = 1e-12;
  double quad_tol = 1e-9;
  double peak_log_budget = 27.631021115928552;  // ln 1e12
  std::size_t max_terms = 10'000'000;
  std::size_t quad_max_panels = 1 << 14;
  double band_scale = 1e-9;   // band width = band_scale * max(1, |z|)
  double min_margin = 1e-3;   // contour angle selection
  int threads = 0;            // 0 = hardware concurrency
};

/// Parses key = value lines ('#' comments, blank lines allowed); unknown keys
/// and malformed values throw std::invalid_argument.
Config parse_config(std::string_view text, Config base = {});
Config load_config_file(const std::filesystem::path& path, Config base = {});

}  // namespace thetasum

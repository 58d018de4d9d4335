#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "thetasum/geometry.hpp"
#include "thetasum/numerics.hpp"
#include "thetasum/summation.hpp"

namespace thetasum {

struct GridSpec {
  double re_min = -30.0, re_max = 30.0;
  double im_min = -30.0, im_max = 30.0;
  std::size_t cols = 400, rows = 400;

  void validate() const;  // throws std::invalid_argument
  // pixel centers; row 0 is the top row (im_max side)
  Complex pixel_center(std::size_t row, std::size_t col) const;
  // column/row of the pixel containing z (unchecked)
  std::size_t col_of(double re) const;
  std::size_t row_of(double im) const;
};

// eps_k = eps_start * ratio^k, k = 0 .. steps-1
struct SweepSpec {
  double eps_start = 0.5;
  double ratio = 0.5;
  std::size_t steps = 10;

  void validate() const;
  double eps_at(std::size_t k) const;
};

struct ScanOptions {
  double band_scale = 1e-9;       // band width = band_scale * max(1, |z|)
  bool heat = false;              // sample log10 max |f_eps| per pixel
  SweepSpec heat_schedule{0.5, 0.5, 10};
  int threads = 0;                // 0 = hardware concurrency
};

struct ScanSummary {
  GridSpec grid;
  std::size_t inside = 0, outside = 0, boundary = 0;
  double crossing_positive_re = 0.0;  // curve crossing of the real axis, t = 0
  double crossing_negative_re = 0.0;  // t = +/- pi
  bool heat = false;

  std::string to_text() const;
};

struct ScanResult {
  GridSpec grid;
  std::vector<std::uint8_t> verdict;  // row-major; RegionLabel values
  std::vector<double> heat_log10;     // empty unless options.heat
  ScanSummary summary;
};

/// Row-parallel region scan; rows are merged in order, so the result is
/// byte-identical regardless of the worker count.
ScanResult scan_region(const GridSpec& grid, const ScanOptions& options = {});

// Deterministic renderers (fixed number formatting, no timestamps).
std::string render_scan_svg(const ScanResult& scan);
std::string render_heat_pgm(const ScanResult& scan);  // P2, 8-bit, log10 in [-2, 8]

/// CSV for an eps sweep at fixed z: header eps,re,im,abs_err,strategy; the
/// abs_err column is |value - 1/(1-z)|. z must differ from 1.
std::string sweep_csv(Complex z, const SweepSpec& sweep, SummingMethod method,
                      const TruncationPolicy& policy);

/// Writes through a temp file in the same directory and renames into place;
/// an interrupted call never leaves a partial file at the target path.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace thetasum

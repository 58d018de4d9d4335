#include "thetasum/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "thetasum/evaluate.hpp"
#include "thetasum/io.hpp"

namespace thetasum {

void GridSpec::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max))
    throw std::invalid_argument("GridSpec: require re_min < re_max and im_min < im_max");
  if (cols == 0 || rows == 0 || cols * rows > 100'000'000ULL)
    throw std::invalid_argument("GridSpec: require 1 <= cols*rows <= 1e8");
}

Complex GridSpec::pixel_center(std::size_t row, std::size_t col) const {
  double dx = (re_max - re_min) / static_cast<double>(cols);
  double dy = (im_max - im_min) / static_cast<double>(rows);
  return {re_min + (static_cast<double>(col) + 0.5) * dx,
          im_max - (static_cast<double>(row) + 0.5) * dy};
}

std::size_t GridSpec::col_of(double re) const {
  double dx = (re_max - re_min) / static_cast<double>(cols);
  auto c = static_cast<long long>(std::floor((re - re_min) / dx));
  return static_cast<std::size_t>(std::clamp<long long>(c, 0, static_cast<long long>(cols) - 1));
}

std::size_t GridSpec::row_of(double im) const {
  double dy = (im_max - im_min) / static_cast<double>(rows);
  auto r = static_cast<long long>(std::floor((im_max - im) / dy));
  return static_cast<std::size_t>(std::clamp<long long>(r, 0, static_cast<long long>(rows) - 1));
}

void SweepSpec::validate() const {
  if (!(eps_start > 0.0)) throw std::invalid_argument("SweepSpec: eps_start must be > 0");
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("SweepSpec: ratio must be in (0,1)");
  if (steps == 0) throw std::invalid_argument("SweepSpec: steps must be >= 1");
}

double SweepSpec::eps_at(std::size_t k) const { return eps_start * std::pow(ratio, static_cast<double>(k)); }

namespace {

// Light double-precision estimate of log10 |f_eps(z)| for heat maps: the
// direct series inside the closed unit disc, H minus the geometric-ish tail
// outside. Visual precision only.
double heat_log10_f(Complex z, double eps) {
  double r = std::abs(z);
  if (r <= 1.0) {
    if (r == 0.0) return 0.0;
    KahanAccumulator<double> re, im;
    double lnr = std::log(r), phi = std::arg(z);
    for (int n = 0;; ++n) {
      double lt = -eps * n * n + n * lnr;
      double m = std::exp(lt);
      re.add(m * std::cos(n * phi));
      im.add(m * std::sin(n * phi));
      if (n > 0 && m < 1e-14) break;
      if (n > 2'000'000) break;
    }
    double v = std::hypot(re.value(), im.value());
    return v > 0 ? std::log10(v) : -300.0;
  }

  LogMagnitude h = eval_H_log(dual_coordinate(z), eps, 1e-9);
  // visual-precision negative tail in plain double
  Complex tail{0.0, 0.0};
  {
    Complex w = 1.0 / z, wp{1.0, 0.0};
    for (int m = 1; m <= 400000; ++m) {
      wp *= w;
      Complex t2 = std::exp(-eps * m * m) * wp;
      tail += t2;
      if (std::abs(t2) < 1e-13) break;
    }
  }
  LogMagnitude t = LogMagnitude::from_complex(tail);
  // combine H - tail in whichever domain is representable
  if (h.log_abs > t.log_abs + 40.0) return h.log10_abs();
  if (t.log_abs > h.log_abs + 40.0) return t.log10_abs();
  double scale = std::max(h.log_abs, t.log_abs);
  Complex sum = std::polar(std::exp(h.log_abs - scale), h.phase) -
                std::polar(std::exp(t.log_abs - scale), t.phase);
  double a = std::abs(sum);
  if (a == 0.0) return -300.0;
  return (scale + std::log(a)) / 2.30258509299404568402;
}

const char* verdict_color(RegionLabel l) {
  switch (l) {
    case RegionLabel::InsideG: return "#ffffff";
    case RegionLabel::OutsideG: return "#c9d4e8";
    case RegionLabel::BoundaryBand: return "#444444";
  }
  return "#000000";
}

void append_num(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  out += buf;
}

}  // namespace

ScanResult scan_region(const GridSpec& grid, const ScanOptions& options) {
  grid.validate();
  options.heat_schedule.validate();

  ScanResult res;
  res.grid = grid;
  res.verdict.assign(grid.rows * grid.cols, 0);
  if (options.heat) res.heat_log10.assign(grid.rows * grid.cols, 0.0);

  unsigned hw = std::thread::hardware_concurrency();
  unsigned n_workers = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                           : std::max(1u, hw);
  n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(grid.rows));

  auto work_rows = [&](std::size_t r0, std::size_t r1) {
    for (std::size_t i = r0; i < r1; ++i) {
      for (std::size_t j = 0; j < grid.cols; ++j) {
        Complex z = grid.pixel_center(i, j);
        RegionVerdict v = classify_f(z, options.band_scale * std::max(1.0, std::abs(z)));
        res.verdict[i * grid.cols + j] = static_cast<std::uint8_t>(v.label);
        if (options.heat) {
          double best = -300.0;
          for (std::size_t k = 0; k < options.heat_schedule.steps; ++k)
            best = std::max(best, heat_log10_f(z, options.heat_schedule.eps_at(k)));
          res.heat_log10[i * grid.cols + j] = best;
        }
      }
    }
  };

  if (n_workers <= 1) {
    work_rows(0, grid.rows);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    std::size_t chunk = (grid.rows + n_workers - 1) / n_workers;
    for (unsigned w = 0; w < n_workers; ++w) {
      std::size_t r0 = std::min<std::size_t>(w * chunk, grid.rows);
      std::size_t r1 = std::min<std::size_t>(r0 + chunk, grid.rows);
      if (r0 < r1) pool.emplace_back(work_rows, r0, r1);
    }
    for (auto& t : pool) t.join();
  }

  ScanSummary& s = res.summary;
  s.grid = grid;
  s.heat = options.heat;
  for (std::uint8_t v : res.verdict) {
    if (v == static_cast<std::uint8_t>(RegionLabel::InsideG)) ++s.inside;
    else if (v == static_cast<std::uint8_t>(RegionLabel::OutsideG)) ++s.outside;
    else ++s.boundary;
  }
  s.crossing_positive_re = heart_curve_point(0.0).real();
  s.crossing_negative_re = heart_curve_point(kPi).real();
  return res;
}

std::string ScanSummary::to_text() const {
  std::string out;
  out += "re_min=" + format_double(grid.re_min) + "\n";
  out += "re_max=" + format_double(grid.re_max) + "\n";
  out += "im_min=" + format_double(grid.im_min) + "\n";
  out += "im_max=" + format_double(grid.im_max) + "\n";
  out += "cols=" + std::to_string(grid.cols) + "\n";
  out += "rows=" + std::to_string(grid.rows) + "\n";
  out += "inside=" + std::to_string(inside) + "\n";
  out += "outside=" + std::to_string(outside) + "\n";
  out += "boundary=" + std::to_string(boundary) + "\n";
  out += "curve_crossing_positive_re=" + format_double(crossing_positive_re) + "\n";
  out += "curve_crossing_negative_re=" + format_double(crossing_negative_re) + "\n";
  out += "heat=" + std::string(heat ? "1" : "0") + "\n";
  return out;
}

std::string render_scan_svg(const ScanResult& scan) {
  const GridSpec& g = scan.grid;
  const double sx = static_cast<double>(g.cols) / (g.re_max - g.re_min);
  const double sy = static_cast<double>(g.rows) / (g.im_max - g.im_min);
  auto px = [&](double re) { return (re - g.re_min) * sx; };
  auto py = [&](double im) { return (g.im_max - im) * sy; };

  std::string out;
  out.reserve(scan.verdict.size() / 8 + 65536);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + std::to_string(g.cols) +
         " " + std::to_string(g.rows) + "\">\n";

  // verdict raster, run-length merged per row
  out += "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < g.rows; ++i) {
    std::size_t j = 0;
    while (j < g.cols) {
      std::uint8_t v = scan.verdict[i * g.cols + j];
      std::size_t j2 = j + 1;
      while (j2 < g.cols && scan.verdict[i * g.cols + j2] == v) ++j2;
      out += "<rect x=\"" + std::to_string(j) + "\" y=\"" + std::to_string(i) + "\" width=\"" +
             std::to_string(j2 - j) + "\" height=\"1\" fill=\"" +
             verdict_color(static_cast<RegionLabel>(v)) + "\"/>\n";
      j = j2;
    }
  }
  out += "</g>\n";

  // axes
  out += "<line x1=\"0\" y1=\"";
  append_num(out, py(0.0));
  out += "\" x2=\"" + std::to_string(g.cols) + "\" y2=\"";
  append_num(out, py(0.0));
  out += "\" stroke=\"#999999\" stroke-width=\"0.6\"/>\n";
  out += "<line x1=\"";
  append_num(out, px(0.0));
  out += "\" y1=\"0\" x2=\"";
  append_num(out, px(0.0));
  out += "\" y2=\"" + std::to_string(g.rows) + "\" stroke=\"#999999\" stroke-width=\"0.6\"/>\n";

  // unit circle (red), as in the reference figures
  out += "<ellipse cx=\"";
  append_num(out, px(0.0));
  out += "\" cy=\"";
  append_num(out, py(0.0));
  out += "\" rx=\"";
  append_num(out, sx);
  out += "\" ry=\"";
  append_num(out, sy);
  out += "\" fill=\"none\" stroke=\"#cc0000\" stroke-width=\"1\"/>\n";

  // heart curve (blue)
  out += "<polyline fill=\"none\" stroke=\"#0033cc\" stroke-width=\"1.2\" points=\"";
  const int kSamples = 2000;
  for (int k = 0; k <= kSamples; ++k) {
    double t = -kPi + 2.0 * kPi * k / kSamples;
    Complex c = heart_curve_point(t);
    if (k) out += ' ';
    append_num(out, px(c.real()));
    out += ',';
    append_num(out, py(c.imag()));
  }
  out += "\"/>\n</svg>\n";
  return out;
}

std::string render_heat_pgm(const ScanResult& scan) {
  if (scan.heat_log10.empty())
    throw std::invalid_argument("render_heat_pgm: scan was produced without heat data");
  const GridSpec& g = scan.grid;
  std::string out = "P2\n" + std::to_string(g.cols) + " " + std::to_string(g.rows) + "\n255\n";
  constexpr double kLo = -2.0, kHi = 8.0;
  for (std::size_t i = 0; i < g.rows; ++i) {
    for (std::size_t j = 0; j < g.cols; ++j) {
      double v = (scan.heat_log10[i * g.cols + j] - kLo) / (kHi - kLo);
      int gray = static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
      out += std::to_string(gray);
      out += j + 1 == g.cols ? '\n' : ' ';
    }
  }
  return out;
}

std::string sweep_csv(Complex z, const SweepSpec& sweep, SummingMethod method,
                      const TruncationPolicy& policy) {
  sweep.validate();
  if (z == Complex{1.0, 0.0})
    throw std::invalid_argument("sweep_csv: target 1/(1-z) undefined at z = 1");
  Complex target = 1.0 / (1.0 - z);
  std::string out = "eps,re,im,abs_err,strategy\n";
  for (std::size_t k = 0; k < sweep.steps; ++k) {
    double eps = sweep.eps_at(k);
    EvalResult r = eval_auto(z, eps, method, policy);
    out += format_double(eps) + "," + format_double(r.value.real()) + "," +
           format_double(r.value.imag()) + "," + format_double(std::abs(r.value - target)) + "," +
           strategy_name(r.strategy) + "\n";
  }
  return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  fs::path tmp = path;
  tmp += ".tmp";
  if (!dir.empty() && !fs::exists(dir))
    throw std::invalid_argument("write_text_atomic: directory does not exist: " + dir.string());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open temp file: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("atomic rename failed: " + ec.message());
  }
}

}  // namespace thetasum

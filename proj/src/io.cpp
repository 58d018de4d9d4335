#include "thetasum/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace thetasum {

namespace {

double parse_finite_double(std::string_view s, const char* what) {
  // from_chars accepts '-' but not an explicit '+'
  double sign = 1.0;
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
    if (!s.empty() && s.front() == '-') s = {};  // reject "+-"
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw std::invalid_argument(std::string(what) + ": cannot parse '" + std::string(s) + "'");
  return sign * v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Complex parse_complex(std::string_view s) {
  if (s.size() < 4 || s.back() != 'i')
    throw std::invalid_argument("complex literal must have the form RE{+|-}IMi: '" +
                                std::string(s) + "'");
  std::string_view body = s.substr(0, s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size() - 1; k >= 1; --k) {
    char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos)
    throw std::invalid_argument("complex literal must have the form RE{+|-}IMi: '" +
                                std::string(s) + "'");
  double re = parse_finite_double(body.substr(0, split), "complex real part");
  std::string_view ims = body.substr(split);
  if (ims.size() < 2)
    throw std::invalid_argument("complex literal has an empty imaginary part: '" +
                                std::string(s) + "'");
  double im = parse_finite_double(ims, "complex imaginary part");
  return {re, im};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  std::string out = format_double(z.real());
  if (!(z.imag() < 0.0)) out += '+';
  out += format_double(z.imag());
  out += 'i';
  return out;
}

Config parse_config(std::string_view text, Config base) {
  Config cfg = base;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key{trim(line.substr(0, eq))};
    std::string_view val = trim(line.substr(eq + 1));
    auto dval = [&] { return parse_finite_double(val, key.c_str()); };
    if (key == "series_tol") cfg.series_tol = dval();
    else if (key == "dual_tol") cfg.dual_tol = dval();
    else if (key == "quad_tol") cfg.quad_tol = dval();
    else if (key == "peak_log_budget") cfg.peak_log_budget = dval();
    else if (key == "max_terms") cfg.max_terms = static_cast<std::size_t>(dval());
    else if (key == "quad_max_panels") cfg.quad_max_panels = static_cast<std::size_t>(dval());
    else if (key == "band_scale") cfg.band_scale = dval();
    else if (key == "min_margin") cfg.min_margin = dval();
    else if (key == "threads") cfg.threads = static_cast<int>(dval());
    else throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

Config load_config_file(const std::filesystem::path& path, Config base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

}  // namespace thetasum

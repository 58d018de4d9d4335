// theta_sum: regularized evaluation of the geometric Taylor series, region
// classification against the heart-shaped summability domain, eps sweeps,
// and figure-style region scans.
//
// Exit codes: 0 success, 2 malformed flags or inputs, 3 requested strategy
// infeasible at the given point, 1 failed verification suite.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "thetasum/acceptance.hpp"
#include "thetasum/evaluate.hpp"
#include "thetasum/geometry.hpp"
#include "thetasum/io.hpp"
#include "thetasum/scan.hpp"

namespace {

using namespace thetasum;

SummingMethod parse_method(const std::string& s) {
  if (s == "theta") return SummingMethod::Theta;
  if (s == "gammaratio") return SummingMethod::GammaRatio;
  if (s == "lindelof") return SummingMethod::Lindelof;
  if (s == "mittagleffler") return SummingMethod::MittagLeffler;
  throw CLI::ValidationError("--method", "expected theta|gammaratio|lindelof|mittagleffler");
}

StrategyChoice parse_strategy(const std::string& s) {
  if (s == "auto") return StrategyChoice::Auto;
  if (s == "series") return StrategyChoice::Series;
  if (s == "dual") return StrategyChoice::Dual;
  if (s == "contour") return StrategyChoice::Contour;
  throw CLI::ValidationError("--strategy", "expected auto|series|dual|contour");
}

struct CommonFlags {
  std::string config_path;
  std::optional<double> tol;
  std::optional<double> peak_log_budget;
  std::optional<int> threads;
};

Config resolve_config(const CommonFlags& fl) {
  Config cfg;
  if (const char* env = std::getenv("THETA_SUM_CONFIG"); env && *env)
    cfg = load_config_file(env, cfg);
  if (!fl.config_path.empty()) cfg = load_config_file(fl.config_path, cfg);
  if (fl.tol) {
    cfg.series_tol = *fl.tol;
    cfg.dual_tol = *fl.tol;
  }
  if (fl.peak_log_budget) cfg.peak_log_budget = *fl.peak_log_budget;
  if (fl.threads) cfg.threads = *fl.threads;
  return cfg;
}

TruncationPolicy policy_of(const Config& cfg) {
  return {cfg.series_tol, cfg.peak_log_budget, cfg.max_terms};
}

QuadratureSpec quad_of(const Config& cfg) {
  return {cfg.quad_tol, 0.0, cfg.quad_max_panels};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"theta summation engine for the geometric series"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  CommonFlags fl;
  app.add_option("--config", fl.config_path, "config file (key = value lines)");
  app.add_option("--tol", fl.tol, "series/dual truncation tolerance");
  app.add_option("--peak-log-budget", fl.peak_log_budget, "cancellation guard, ln scale");
  app.add_option("--threads", fl.threads, "scan worker threads (0 = auto)");

  // eval
  auto* c_eval = app.add_subcommand("eval", "evaluate the regularized sum at one point");
  std::string z_str, method_str = "theta", strategy_str = "auto";
  double eps = 0.0;
  c_eval->add_option("--z", z_str, "point, RE{+|-}IMi (e.g. -2+0i)")->required();
  c_eval->add_option("--eps", eps, "regularization parameter, > 0")->required();
  c_eval->add_option("--method", method_str, "theta|gammaratio|lindelof|mittagleffler");
  c_eval->add_option("--strategy", strategy_str, "auto|series|dual|contour");

  // sweep
  auto* c_sweep = app.add_subcommand("sweep", "CSV of values along a geometric eps schedule");
  std::string sweep_out;
  SweepSpec sweep;
  c_sweep->add_option("--z", z_str, "point, RE{+|-}IMi")->required();
  c_sweep->add_option("--eps-start", sweep.eps_start, "first eps")->required();
  c_sweep->add_option("--ratio", sweep.ratio, "schedule ratio in (0,1)")->required();
  c_sweep->add_option("--steps", sweep.steps, "schedule length")->required();
  c_sweep->add_option("--method", method_str, "summing method");
  c_sweep->add_option("--out", sweep_out, "output CSV path")->required();

  // scan
  auto* c_scan = app.add_subcommand("scan", "region scan; writes <out>.svg, <out>.summary.txt");
  GridSpec grid;
  std::string scan_out;
  bool heat = false;
  c_scan->add_option("--re-min", grid.re_min)->required();
  c_scan->add_option("--re-max", grid.re_max)->required();
  c_scan->add_option("--im-min", grid.im_min)->required();
  c_scan->add_option("--im-max", grid.im_max)->required();
  c_scan->add_option("--cols", grid.cols)->required();
  c_scan->add_option("--rows", grid.rows)->required();
  c_scan->add_option("--out", scan_out, "output path prefix")->required();
  c_scan->add_flag("--heat", heat, "also write <out>.pgm with sampled max |f_eps|");

  // classify
  auto* c_classify = app.add_subcommand("classify", "region verdict for one point");
  std::optional<double> band;
  c_classify->add_option("--z", z_str, "point, RE{+|-}IMi")->required();
  c_classify->add_option("--band", band, "boundary band width (absolute)");

  // verify
  auto* c_verify = app.add_subcommand("verify", "run the verification suites");
  std::string suite_filter;
  c_verify->add_option("--suite", suite_filter, "only suites whose name contains this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? 0 : 2;
  }

  try {
    Config cfg = resolve_config(fl);

    if (*c_eval) {
      Complex z = parse_complex(z_str);
      if (!(eps > 0.0)) throw std::invalid_argument("--eps must be > 0");
      SummingMethod method = parse_method(method_str);
      StrategyChoice strategy = parse_strategy(strategy_str);
      EvalResult r = eval_with_strategy(z, eps, strategy, method, policy_of(cfg), quad_of(cfg));
      std::printf("value_re=%s value_im=%s abs_err=%s strategy=%s work=%zu\n",
                  format_double(r.value.real()).c_str(), format_double(r.value.imag()).c_str(),
                  format_double(r.abs_error_estimate).c_str(), strategy_name(r.strategy),
                  r.terms_or_nodes_used);
      return 0;
    }

    if (*c_sweep) {
      Complex z = parse_complex(z_str);
      std::string csv = sweep_csv(z, sweep, parse_method(method_str), policy_of(cfg));
      write_text_atomic(sweep_out, csv);
      std::printf("wrote %s (%zu rows)\n", sweep_out.c_str(), sweep.steps);
      return 0;
    }

    if (*c_scan) {
      grid.validate();
      ScanOptions opt;
      opt.band_scale = cfg.band_scale;
      opt.heat = heat;
      opt.threads = cfg.threads;
      ScanResult scan = scan_region(grid, opt);
      write_text_atomic(scan_out + ".svg", render_scan_svg(scan));
      write_text_atomic(scan_out + ".summary.txt", scan.summary.to_text());
      if (heat) write_text_atomic(scan_out + ".pgm", render_heat_pgm(scan));
      std::printf("wrote %s.svg, %s.summary.txt%s\n", scan_out.c_str(), scan_out.c_str(),
                  heat ? (", " + scan_out + ".pgm").c_str() : "");
      return 0;
    }

    if (*c_classify) {
      Complex z = parse_complex(z_str);
      RegionVerdict v = classify_f(z, band ? *band : cfg.band_scale * std::max(1.0, std::abs(z)));
      std::string witness = "-";
      if (v.witness_z1) {
        witness = "[";
        for (std::size_t i = 0; i < v.witness_z1->size(); ++i)
          witness += (i ? "," : "") + std::to_string((*v.witness_z1)[i]);
        witness += "]";
      }
      std::printf("label=%s margin=%s witness_z1=%s\n", region_label_name(v.label),
                  format_double(v.margin).c_str(), witness.c_str());
      return 0;
    }

    if (*c_verify) {
      auto results = run_acceptance(suite_filter, argv[0]);
      std::size_t failed = 0;
      for (const auto& r : results) {
        std::printf("%s %2d %-34s %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        if (!r.passed) ++failed;
      }
      std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
      return failed == 0 ? 0 : 1;
    }
  } catch (const InfeasibleCancellation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const NoValidAngle& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const MarginTooSmall& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const NonConvergence& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const EvalOverflow& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::domain_error& e) {
    // domain violations of a fixed strategy (e.g. dual at |z| <= 1)
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}

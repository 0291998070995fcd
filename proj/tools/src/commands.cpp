#include "spheredet/cli/commands.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>
#include <sstream>

#include "spheredet/asymptotics.hpp"
#include "spheredet/dirac.hpp"
#include "spheredet/laplace.hpp"
#include "spheredet/quadrature.hpp"
#include "spheredet/special_values.hpp"

namespace spheredet::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

// Raised while computing the row for a given n.
struct RowFailure {
  int n;
  std::exception_ptr error;
};

// Evaluates fn over ns with up to `jobs` threads; results come back in input
// order. The first failing n (in input order) is rethrown as RowFailure.
template <typename Row>
std::vector<Row> map_rows(const std::vector<int>& ns, int jobs, const std::function<Row(int)>& fn) {
  std::vector<std::optional<Row>> slots(ns.size());
  std::vector<std::exception_ptr> errors(ns.size());
  auto work = [&](std::size_t i) {
    try {
      slots[i] = fn(ns[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (jobs <= 1) {
    for (std::size_t i = 0; i < ns.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> pool;
    for (int t = 0; t < jobs; ++t) {
      pool.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i = next++; i < ns.size(); i = next++) work(i);
      }));
    }
    for (auto& f : pool) f.get();
  }
  std::vector<Row> rows;
  rows.reserve(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (errors[i]) throw RowFailure{ns[i], errors[i]};
    rows.push_back(std::move(*slots[i]));
  }
  return rows;
}

// Maps a failure at n to an exit code, printing the reason.
int report_failure(const RowFailure& f, std::ostream& err) {
  try {
    std::rethrow_exception(f.error);
  } catch (const std::invalid_argument& e) {
    err << "error: n=" << f.n << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    err << "error: n=" << f.n << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "non-convergence: n=" << f.n << ": " << e.what() << '\n';
    return kNonConvergence;
  }
}

// Streams to --out when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : target_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw ConfigError("cannot open output file: " + path);
      target_ = &file_;
    }
  }
  std::ostream& stream() { return *target_; }

 private:
  std::ofstream file_;
  std::ostream* target_;
};

void write_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void write_json(std::ostream& os, const ordered_json& doc) { os << doc.dump(2) << '\n'; }

laplace::Operator parse_operator(const std::string& s) {
  if (s == "ordinary") return laplace::Operator::Ordinary;
  if (s == "yamabe") return laplace::Operator::Yamabe;
  if (s == "custom") return laplace::Operator::Custom;
  throw ConfigError("unknown operator: " + s);
}

// ---- det ------------------------------------------------------------------

struct DiracRow {
  dirac::DiracReport r;
};

int det_dirac(const RunConfig& cfg, const std::vector<int>& ns, std::ostream& os) {
  const Precision prec = cfg.prec;
  auto rows = map_rows<DiracRow>(ns, cfg.jobs, [prec](int n) { return DiracRow{dirac::dirac_det(n, prec)}; });
  const std::string p = std::to_string(prec);
  if (cfg.format == Format::Csv) {
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
      const auto& r = row.r;
      cells.push_back({std::to_string(r.n), p, decimal(r.zeta_zero, prec), decimal(r.zeta_prime_zero, prec),
                       decimal(r.phase, prec), decimal(r.abs_det, prec)});
    }
    write_csv(os, {"n", "prec", "zeta0", "zetaprime0", "phase", "absdet"}, cells);
  } else {
    ordered_json doc;
    doc["command"] = "det";
    doc["target"] = "dirac";
    doc["prec"] = prec;
    doc["rows"] = ordered_json::array();
    for (const auto& row : rows) {
      const auto& r = row.r;
      doc["rows"].push_back({{"n", r.n},
                             {"zeta0", decimal(r.zeta_zero, prec)},
                             {"zeta0_exact", spheredet::to_string(r.zeta_zero_exact)},
                             {"zetaprime0", decimal(r.zeta_prime_zero, prec)},
                             {"zetaprime0_error", r.error_bound.to_string(3)},
                             {"phase", decimal(r.phase, prec)},
                             {"absdet", decimal(r.abs_det, prec)},
                             {"distance_to_one", decimal(r.distance_to_one, prec)}});
    }
    write_json(os, doc);
  }
  return kOk;
}

int det_laplace(const RunConfig& cfg, const std::vector<int>& ns, std::ostream& os) {
  const Precision prec = cfg.prec;
  const auto op = cfg.op;
  const auto alpha = cfg.alpha;
  const bool rescaled = cfg.rescaled;
  auto rows = map_rows<laplace::LaplaceReport>(ns, cfg.jobs, [=](int n) {
    if (rescaled) return laplace::rescaled_det(n, prec);
    return laplace::laplace_det(laplace::make_params(n, op, alpha), prec);
  });
  const std::string p = std::to_string(prec);
  if (cfg.format == Format::Csv) {
    std::vector<std::string> header{"n", "prec", "operator", "alpha", "zetaprime0", "error", "correction", "det"};
    if (rescaled) {
      for (const char* h : {"loglambda", "rescaled_det", "rescaled_zetaprime0"}) header.emplace_back(h);
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) {
      std::vector<std::string> c{std::to_string(r.params.n),
                                 p,
                                 laplace::to_string(r.params.op),
                                 spheredet::to_string(r.params.alpha),
                                 decimal(r.zeta_prime_zero, prec),
                                 r.error_bound.to_string(3),
                                 spheredet::to_string(r.correction),
                                 decimal(r.det, prec)};
      if (rescaled) {
        c.push_back(decimal(r.log_lambda, prec));
        c.push_back(decimal(r.rescaled_det, prec));
        c.push_back(decimal(r.rescaled_zeta_prime_zero, prec));
      }
      cells.push_back(std::move(c));
    }
    write_csv(os, header, cells);
  } else {
    ordered_json doc;
    doc["command"] = "det";
    doc["target"] = "laplace";
    doc["operator"] = laplace::to_string(op);
    doc["prec"] = prec;
    doc["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j{{"n", r.params.n},
                     {"alpha", spheredet::to_string(r.params.alpha)},
                     {"has_kernel", r.params.has_kernel},
                     {"zetaprime0", decimal(r.zeta_prime_zero, prec)},
                     {"error", r.error_bound.to_string(3)},
                     {"correction", spheredet::to_string(r.correction)},
                     {"kernel_term", decimal(r.kernel_term, prec)},
                     {"det", decimal(r.det, prec)}};
      if (rescaled) {
        j["loglambda"] = decimal(r.log_lambda, prec);
        j["rescaled_det"] = decimal(r.rescaled_det, prec);
        j["rescaled_zetaprime0"] = decimal(r.rescaled_zeta_prime_zero, prec);
      }
      doc["rows"].push_back(std::move(j));
    }
    write_json(os, doc);
  }
  return kOk;
}

// ---- fit ------------------------------------------------------------------

std::vector<asymptotics::FitPoint> fit_sequence(const RunConfig& cfg, const std::vector<int>& ns) {
  const Precision prec = cfg.prec;
  if (cfg.target == "synthetic") {
    // 3 (3/4)^n, planted rate log(3/4)
    std::vector<asymptotics::FitPoint> pts;
    for (int n : ns) pts.push_back({static_cast<double>(n), 3.0 * std::pow(0.75, n)});
    return pts;
  }
  std::function<double(int)> value;
  if (cfg.target == "dirac") {
    value = [prec](int n) { return dirac::dirac_zeta_prime_zero(n, prec).value.to_double(); };
  } else if (cfg.rescaled) {
    const double limit = 1.0 + special::log_two_pi(64).to_double();
    value = [prec, limit](int n) {
      return laplace::rescaled_det(n, prec).rescaled_zeta_prime_zero.to_double() - limit;
    };
  } else {
    const auto op = cfg.op;
    const auto alpha = cfg.alpha;
    value = [=](int n) {
      return laplace::laplace_zeta_prime_zero(laplace::make_params(n, op, alpha), prec).value.to_double();
    };
  }
  auto vals = map_rows<double>(ns, cfg.jobs, value);
  std::vector<asymptotics::FitPoint> pts;
  for (std::size_t i = 0; i < ns.size(); ++i) pts.push_back({static_cast<double>(ns[i]), vals[i]});
  return pts;
}

}  // namespace

std::string decimal(const Real& x, Precision prec) {
  const int digits = std::max(6, static_cast<int>(std::floor(static_cast<double>(prec) * 0.30102999566398120)) - 3);
  return x.to_string(digits);
}

NRange parse_range(std::string_view text) {
  auto parse_int = [&text](std::string_view s) {
    if (s.empty()) throw ConfigError("bad range: " + std::string(text));
    int v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw ConfigError("bad range: " + std::string(text));
      v = v * 10 + (c - '0');
      if (v > 1000000) throw ConfigError("range bound too large: " + std::string(text));
    }
    return v;
  };
  const auto dots = text.find("..");
  NRange r;
  if (dots == std::string_view::npos) {
    r.lo = r.hi = parse_int(text);
  } else {
    r.lo = parse_int(text.substr(0, dots));
    r.hi = parse_int(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw ConfigError("empty range: " + std::string(text));
  return r;
}

std::vector<int> selected_ns(const RunConfig& cfg) {
  std::vector<int> ns;
  for (int n = cfg.n.lo; n <= cfg.n.hi; ++n) {
    if (cfg.odd_only && n % 2 == 0) continue;
    ns.push_back(n);
  }
  return ns;
}

Precision default_precision() {
  if (const char* env = std::getenv("SPHEREDET_PREC")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 64) return static_cast<Precision>(v);
  }
  return 128;
}

void validate(const RunConfig& cfg) {
  if (cfg.prec < 64) throw ConfigError("precision must be >= 64 bits");
  if (cfg.jobs < 1) throw ConfigError("--jobs must be >= 1");
  if (cfg.command == "verify") return;
  if (selected_ns(cfg).empty()) throw ConfigError("n-range selects no values");
  const bool laplace_target = cfg.target == "laplace";
  if (cfg.alpha && (!laplace_target || cfg.op != laplace::Operator::Custom)) {
    throw ConfigError("--alpha requires the laplace target with --operator custom");
  }
  if (laplace_target && cfg.op == laplace::Operator::Custom && !cfg.alpha) {
    throw ConfigError("--operator custom requires --alpha p/q");
  }
  if (cfg.rescaled) {
    if (!laplace_target || cfg.op != laplace::Operator::Ordinary) {
      throw ConfigError("--rescaled applies to the ordinary laplace operator only");
    }
    for (int n : selected_ns(cfg)) {
      if (n % 2 == 0) throw ConfigError("--rescaled needs odd n (add --odd-only); got n=" + std::to_string(n));
    }
  }
  if (cfg.n.lo < (cfg.target == "synthetic" ? 0 : 2)) throw ConfigError("n must be >= 2");
}

int cmd_det(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    Sink sink(cfg.out, out);
    const auto ns = selected_ns(cfg);
    if (cfg.target == "dirac") return det_dirac(cfg, ns, sink.stream());
    if (cfg.target == "laplace") return det_laplace(cfg, ns, sink.stream());
    throw ConfigError("det target must be dirac or laplace");
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const RowFailure& f) {
    return report_failure(f, err);
  }
}

int cmd_fit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    if (cfg.target != "dirac" && cfg.target != "laplace" && cfg.target != "synthetic") {
      throw ConfigError("fit target must be dirac, laplace or synthetic");
    }
    asymptotics::FitModel model;
    if (cfg.model == "exp") {
      model = asymptotics::FitModel::Exponential;
    } else if (cfg.model == "power") {
      model = asymptotics::FitModel::PowerLaw;
    } else {
      throw ConfigError("--model must be exp or power");
    }
    const auto ns = selected_ns(cfg);
    if (ns.size() < 4) throw ConfigError("fit needs at least 4 data points");
    Sink sink(cfg.out, out);
    auto pts = fit_sequence(cfg, ns);
    asymptotics::RateFit fit;
    try {
      fit = asymptotics::rate_fit(pts, model, cfg.n.lo, cfg.n.hi);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    std::string label = cfg.target;
    if (cfg.target == "laplace") label += cfg.rescaled ? "-rescaled-gap" : std::string("-") + laplace::to_string(cfg.op);
    std::ostream& os = sink.stream();
    if (cfg.format == Format::Csv) {
      write_csv(os, {"target", "model", "window_lo", "window_hi", "points", "slope", "intercept", "residual_norm"},
                {{label, cfg.model, std::to_string(cfg.n.lo), std::to_string(cfg.n.hi), std::to_string(fit.points),
                  fmt_double(fit.slope), fmt_double(fit.intercept), fmt_double(fit.residual_norm)}});
    } else {
      ordered_json doc{{"command", "fit"},
                       {"target", label},
                       {"model", cfg.model},
                       {"prec", cfg.prec},
                       {"window_lo", cfg.n.lo},
                       {"window_hi", cfg.n.hi},
                       {"points", fit.points},
                       {"slope", fmt_double(fit.slope)},
                       {"intercept", fmt_double(fit.intercept)},
                       {"residual_norm", fmt_double(fit.residual_norm)}};
      ordered_json res = ordered_json::array();
      for (double r : fit.residuals) res.push_back(fmt_double(r));
      doc["residuals"] = std::move(res);
      write_json(os, doc);
    }
    if (cfg.target == "synthetic" && std::fabs(fit.slope - std::log(0.75)) > 1e-3) {
      err << "synthetic self-test failed: slope " << fit.slope << '\n';
      return kVerifyFailed;
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const RowFailure& f) {
    return report_failure(f, err);
  }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    Sink sink(cfg.out, out);
    std::vector<Check> checks;
    try {
      checks = run_suite(cfg.suite, cfg.prec);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      err << "non-convergence: " << e.what() << '\n';
      return kNonConvergence;
    }
    std::ostream& os = sink.stream();
    std::size_t failed = 0;
    for (const auto& c : checks) failed += c.passed ? 0 : 1;
    if (cfg.format == Format::Csv) {
      std::vector<std::vector<std::string>> cells;
      for (const auto& c : checks) {
        cells.push_back({c.suite, c.name, c.passed ? "pass" : "FAIL", fmt_double(c.measured), fmt_double(c.threshold),
                         c.detail});
      }
      write_csv(os, {"suite", "check", "status", "measured", "threshold", "detail"}, cells);
    } else {
      ordered_json doc{{"command", "verify"}, {"suite", cfg.suite}, {"prec", cfg.prec}};
      ordered_json arr = ordered_json::array();
      for (const auto& c : checks) {
        arr.push_back({{"suite", c.suite},
                       {"check", c.name},
                       {"passed", c.passed},
                       {"measured", fmt_double(c.measured)},
                       {"threshold", fmt_double(c.threshold)},
                       {"detail", c.detail}});
      }
      doc["checks"] = std::move(arr);
      doc["failed"] = failed;
      write_json(os, doc);
    }
    err << (failed == 0 ? "pass" : "FAIL") << ": " << checks.size() - failed << "/" << checks.size()
        << " checks passed\n";
    return failed == 0 ? kOk : kVerifyFailed;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeta-regularized determinants on round spheres"};
  app.name("spheredet");
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.prec = default_precision();
  std::string n_text;
  std::string op_text = "ordinary";
  std::string alpha_text;
  std::string format_text = "csv";
  long prec = cfg.prec;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", n_text, "dimension range a..b (inclusive)");
    sub->add_option("--prec", prec, "precision in bits (>= 64; default $SPHEREDET_PREC or 128)");
    sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "write output to this file");
    sub->add_option("--jobs", cfg.jobs, "worker threads across n");
  };

  auto* det = app.add_subcommand("det", "determinant tables");
  det->add_option("target", cfg.target, "dirac or laplace")->required()->check(CLI::IsMember({"dirac", "laplace"}));
  add_common(det);
  det->add_option("--operator", op_text, "ordinary, yamabe or custom");
  det->add_option("--alpha", alpha_text, "alpha as p/q (custom operator)");
  det->add_flag("--odd-only", cfg.odd_only, "keep odd n only");
  det->add_flag("--rescaled", cfg.rescaled, "unit-volume rescaling (ordinary, odd n)");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify);
  verify->add_option("--suite", cfg.suite, "suite name")->check(CLI::IsMember(suite_names()));

  auto* fit = app.add_subcommand("fit", "least-squares rate fit of log|value|");
  fit->add_option("target", cfg.target, "dirac, laplace or synthetic")
      ->required()
      ->check(CLI::IsMember({"dirac", "laplace", "synthetic"}));
  add_common(fit);
  fit->add_option("--operator", op_text, "ordinary, yamabe or custom");
  fit->add_option("--alpha", alpha_text, "alpha as p/q (custom operator)");
  fit->add_flag("--odd-only", cfg.odd_only, "keep odd n only");
  fit->add_flag("--rescaled", cfg.rescaled, "fit the gap of the rescaled zeta'(0) to its limit");
  fit->add_option("--model", cfg.model, "exp (against n) or power (against log n)")
      ->check(CLI::IsMember({"exp", "power"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    cfg.command = det->parsed() ? "det" : verify->parsed() ? "verify" : "fit";
    if (!n_text.empty()) {
      cfg.n = parse_range(n_text);
      cfg.n_given = true;
    } else if (cfg.command == "fit") {
      cfg.n = {10, 40};
    }
    cfg.op = parse_operator(op_text);
    if (!alpha_text.empty()) {
      auto q = parse_rational(alpha_text);
      if (!q) throw ConfigError("--alpha must be a rational p/q, got " + alpha_text);
      cfg.alpha = *q;
    }
    cfg.format = format_text == "json" ? Format::Json : Format::Csv;
    if (prec < 64) throw ConfigError("precision must be >= 64 bits");
    cfg.prec = static_cast<Precision>(prec);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  if (cfg.command == "det") return cmd_det(cfg, out, err);
  if (cfg.command == "verify") return cmd_verify(cfg, out, err);
  return cmd_fit(cfg, out, err);
}

}  // namespace spheredet::cli

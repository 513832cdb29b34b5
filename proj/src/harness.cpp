#include "learnaug/harness.hpp"

#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "learnaug/grid.hpp"
#include "learnaug/line_search.hpp"
#include "learnaug/one_max.hpp"
#include "learnaug/ski_rental.hpp"

namespace learnaug::harness {
namespace {

struct ExperimentInfo {
  Experiment experiment;
  std::string_view name;
  std::string_view header;
};

constexpr std::array<ExperimentInfo, 5> kExperiments{{
    {Experiment::LineFigure2, "line-figure2", "y_over_x,rho,mean,se,n,thm1_bound"},
    {Experiment::OneMaxFigure3, "onemax-figure3", "sigma,rho,worst_mean,se,n,robustness_floor"},
    {Experiment::SkiFigure5, "ski-figure5", "sigma,rho,worst_mean,se,n,robustness_bound"},
    {Experiment::SkiFigure6, "ski-figure6", "Q,rho,mean,se,n"},
    {Experiment::SkiCorollaryFigure1, "ski-corollary-figure1", "Q,lambda_star,corollary_bound,prior_bound"},
}};

const ExperimentInfo& info(Experiment e) {
  for (const auto& i : kExperiments) {
    if (i.experiment == e) return i;
  }
  throw std::logic_error("unknown experiment");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void require_grid(const std::vector<double>& grid, const char* name) {
  require(!grid.empty(), std::string(name) + " grid must be nonempty");
  for (double v : grid) require(std::isfinite(v), std::string(name) + " grid has a non-finite value");
}

std::vector<double> line_y_over_x_default(double b) {
  return logspace(1.0 / (b * b), b * b, 101);
}

std::vector<double> ski_sigma_default(double b) {
  // 0 to 2b in steps of 0.05b
  return linspace(0.0, 2.0 * b, 41);
}

double scalar_flag(const std::string& text, const char* name) {
  const std::vector<double> v = parse_grid(text);
  if (v.size() != 1) throw std::invalid_argument(std::string("--") + name + " takes a single value");
  return v.front();
}

std::string join(const std::vector<double>& grid) {
  std::string s;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) s += ',';
    s += format_number(grid[i]);
  }
  return s;
}

SweepRow stats_row(double key, double rho, const RatioStats& stats, std::optional<double> bound,
                   bool with_bound = true) {
  SweepRow row{key, rho, stats.mean()};
  if (auto se = stats.se()) {
    row.emplace_back(*se);
  } else {
    row.emplace_back(std::monostate{});
  }
  row.emplace_back(stats.n());
  if (with_bound) {
    if (bound) {
      row.emplace_back(*bound);
    } else {
      row.emplace_back(std::monostate{});
    }
  }
  return row;
}

}  // namespace

std::string_view experiment_name(Experiment e) { return info(e).name; }

std::optional<Experiment> experiment_from_name(std::string_view name) {
  for (const auto& i : kExperiments) {
    if (i.name == name) return i.experiment;
  }
  return std::nullopt;
}

std::string_view csv_header(Experiment e) { return info(e).header; }

SweepSpec default_spec(Experiment e) {
  SweepSpec s;
  s.experiment = e;
  switch (e) {
    case Experiment::LineFigure2:
      s.x = 100.0;
      s.b = 2.5;
      s.rho = {0.05, 0.5, 5.0};
      s.y_over_x = line_y_over_x_default(s.b);
      break;
    case Experiment::OneMaxFigure3:
      s.lambda = 0.1;
      s.theta = 5.0;
      s.rho = {0.0, 0.5, 1.0};
      s.sigma = linspace(0.0, s.theta, 21);
      break;
    case Experiment::SkiFigure5:
      s.b = 10.0;
      s.lambda = 0.5;
      s.rho = {0.0, 0.5, 1.0};
      s.sigma = ski_sigma_default(s.b);
      break;
    case Experiment::SkiFigure6:
      s.b = 10.0;
      s.lambda = 0.5;
      s.rho = {0.0, 0.5, 1.0};
      s.Q = parse_grid("0.5:1:0.05");
      break;
    case Experiment::SkiCorollaryFigure1:
      s.Q = parse_grid("0.5:1:0.01");
      break;
  }
  return s;
}

void SweepSpec::validate() const {
  require(trials >= 1, "trials must be >= 1");
  switch (experiment) {
    case Experiment::LineFigure2:
      require_grid(rho, "rho");
      require_grid(y_over_x, "y_over_x");
      line_search::LineSearchConfig{b, 0.0}.validate();
      require(x >= 1.0 && std::isfinite(x), "x must be >= 1");
      for (double r : rho) line_search::LineSearchConfig{b, r}.validate();
      for (double v : y_over_x) require(v > 0.0, "y_over_x values must be > 0");
      break;
    case Experiment::OneMaxFigure3:
      require_grid(rho, "rho");
      require_grid(sigma, "sigma");
      for (double r : rho) one_max::OneMaxConfig{lambda, r, theta}.validate();
      for (double s : sigma) require(s >= 0.0 && s <= theta, "sigma values must lie in [0, theta]");
      break;
    case Experiment::SkiFigure5:
      require_grid(rho, "rho");
      require_grid(sigma, "sigma");
      for (double r : rho) ski::SkiConfig{b, lambda, r}.validate();
      for (double s : sigma) require(s >= 0.0, "sigma values must be >= 0");
      break;
    case Experiment::SkiFigure6:
      require_grid(rho, "rho");
      require_grid(Q, "Q");
      for (double r : rho) ski::SkiConfig{b, lambda, r}.validate();
      for (double q : Q) ski::PredictionModelQ{q}.validate();
      break;
    case Experiment::SkiCorollaryFigure1:
      require_grid(Q, "Q");
      for (double q : Q) ski::PredictionModelQ{q}.validate();
      break;
  }
}

std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("format_number: to_chars failed");
  return std::string(buf.data(), end);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  switch (spec.experiment) {
    case Experiment::LineFigure2:
      for (const auto& r : line_search::figure2_sweep(spec.x, spec.b, spec.rho, spec.y_over_x,
                                                      spec.trials, spec.seed, spec.jobs)) {
        rows.push_back(stats_row(r.y_over_x, r.rho, r.stats, r.bound));
      }
      break;
    case Experiment::OneMaxFigure3:
      for (const auto& r : one_max::figure3_sweep(spec.lambda, spec.theta, spec.rho, spec.sigma,
                                                  spec.trials, spec.seed, spec.jobs)) {
        rows.push_back(stats_row(r.sigma, r.rho, r.worst, r.robustness_floor));
      }
      break;
    case Experiment::SkiFigure5:
      for (const auto& r : ski::gaussian_sweep(spec.b, spec.lambda, spec.rho, spec.sigma,
                                               ski::default_x_grid(spec.b), spec.trials, spec.seed,
                                               spec.jobs)) {
        rows.push_back(stats_row(r.sigma, r.rho, r.worst, r.robustness_bound));
      }
      break;
    case Experiment::SkiFigure6:
      for (const auto& r : ski::bernoulli_sweep(spec.b, spec.lambda, spec.rho, spec.Q, spec.trials,
                                                spec.seed, spec.jobs)) {
        rows.push_back(stats_row(r.Q, r.rho, r.stats, std::nullopt, false));
      }
      break;
    case Experiment::SkiCorollaryFigure1:
      for (double q : spec.Q) {
        rows.push_back(SweepRow{q, ski::corollary_lambda_star(q), ski::corollary_bound(q),
                                ski::prior_bound(q)});
      }
      break;
  }
  return rows;
}

void write_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "# learnaug experiment=" << experiment_name(spec.experiment) << " seed=" << spec.seed
      << " trials=" << spec.trials;
  switch (spec.experiment) {
    case Experiment::LineFigure2:
      out << " x=" << format_number(spec.x) << " b=" << format_number(spec.b)
          << " rho=" << join(spec.rho) << " y_over_x=" << join(spec.y_over_x);
      break;
    case Experiment::OneMaxFigure3:
      out << " lambda=" << format_number(spec.lambda) << " theta=" << format_number(spec.theta)
          << " rho=" << join(spec.rho) << " sigma=" << join(spec.sigma);
      break;
    case Experiment::SkiFigure5:
      out << " b=" << format_number(spec.b) << " lambda=" << format_number(spec.lambda)
          << " rho=" << join(spec.rho) << " sigma=" << join(spec.sigma);
      break;
    case Experiment::SkiFigure6:
      out << " b=" << format_number(spec.b) << " lambda=" << format_number(spec.lambda)
          << " rho=" << join(spec.rho) << " Q=" << join(spec.Q);
      break;
    case Experiment::SkiCorollaryFigure1:
      out << " Q=" << join(spec.Q);
      break;
  }
  out << '\n' << csv_header(spec.experiment) << '\n';

  for (const SweepRow& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* d = std::get_if<double>(&row[i])) {
        out << format_number(*d);
      } else if (const auto* n = std::get_if<std::uint64_t>(&row[i])) {
        out << *n;
      }
    }
    out << '\n';
  }
}

std::string render_csv(const SweepSpec& spec) {
  const auto rows = run_sweep(spec);
  std::ostringstream out;
  write_csv(spec, rows, out);
  return out.str();
}

Invocation parse_cli(int argc, const char* const* argv, std::ostream& help_out) {
  CLI::App app{"Learning-augmented line search, one-max search and ski rental: sweeps and checks",
               "learnaug"};
  app.require_subcommand(1);

  struct Flags {
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 1;
    std::string out;
    unsigned jobs = 0;
    std::string b, x, lambda, theta, rho, sigma, Q;
  };
  std::array<Flags, kExperiments.size()> flags;
  std::array<CLI::App*, kExperiments.size()> subs{};

  for (std::size_t i = 0; i < kExperiments.size(); ++i) {
    const Experiment e = kExperiments[i].experiment;
    Flags& f = flags[i];
    CLI::App* sub = app.add_subcommand(std::string(kExperiments[i].name),
                                       "Write the " + std::string(kExperiments[i].name) + " CSV");
    subs[i] = sub;
    sub->add_option("--trials", f.trials, "Monte-Carlo trials per cell")->capture_default_str();
    sub->add_option("--seed", f.seed, "Base seed")->capture_default_str();
    sub->add_option("--out", f.out, "Output CSV path (default: stdout)");
    sub->add_option("--jobs", f.jobs, "Worker threads, 0 = all cores")->capture_default_str();
    const bool line = e == Experiment::LineFigure2;
    const bool onemax = e == Experiment::OneMaxFigure3;
    const bool ski_mc = e == Experiment::SkiFigure5 || e == Experiment::SkiFigure6;
    if (line || ski_mc) sub->add_option("--b", f.b, "Base / buy cost");
    if (line) sub->add_option("--x", f.x, "Target position");
    if (onemax || ski_mc) sub->add_option("--lambda", f.lambda, "Trust parameter");
    if (onemax) sub->add_option("--theta", f.theta, "Price range ratio U/L");
    if (line || onemax || ski_mc) sub->add_option("--rho", f.rho, "rho grid");
    if (onemax || e == Experiment::SkiFigure5) sub->add_option("--sigma", f.sigma, "sigma grid");
    if (e == Experiment::SkiFigure6 || e == Experiment::SkiCorollaryFigure1) {
      sub->add_option("--Q", f.Q, "Q grid");
    }
  }

  std::string suite;
  unsigned verify_jobs = 0;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name or 'all'")->required();
  verify->add_option("--jobs", verify_jobs, "Worker threads, 0 = all cores");

  Invocation inv;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, help_out, help_out);
    inv.help_shown = true;
    return inv;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, help_out, help_out);
    inv.help_shown = true;
    return inv;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (verify->parsed()) {
    inv.verify_suite = suite;
    inv.jobs = verify_jobs;
    return inv;
  }

  for (std::size_t i = 0; i < kExperiments.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    const Flags& f = flags[i];
    try {
      SweepSpec s = default_spec(kExperiments[i].experiment);
      s.trials = f.trials;
      s.seed = f.seed;
      s.output_path = f.out;
      s.jobs = f.jobs;
      if (!f.b.empty()) {
        s.b = scalar_flag(f.b, "b");
        if (s.experiment == Experiment::LineFigure2 && s.b > 0.0) s.y_over_x = line_y_over_x_default(s.b);
        if (s.experiment == Experiment::SkiFigure5) s.sigma = ski_sigma_default(s.b);
      }
      if (!f.theta.empty()) {
        s.theta = scalar_flag(f.theta, "theta");
        if (s.theta > 0.0) s.sigma = linspace(0.0, s.theta, 21);
      }
      if (!f.x.empty()) s.x = scalar_flag(f.x, "x");
      if (!f.lambda.empty()) s.lambda = scalar_flag(f.lambda, "lambda");
      if (!f.rho.empty()) s.rho = parse_grid(f.rho);
      if (!f.sigma.empty()) s.sigma = parse_grid(f.sigma);
      if (!f.Q.empty()) s.Q = parse_grid(f.Q);
      s.validate();
      inv.sweep = std::move(s);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return inv;
  }
  throw UsageError("no subcommand given");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Invocation inv;
  try {
    inv = parse_cli(argc, argv, out);
  } catch (const UsageError& e) {
    err << "learnaug: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  if (inv.help_shown) return kExitOk;

  if (inv.sweep) {
    const std::string csv = render_csv(*inv.sweep);
    if (inv.sweep->output_path.empty()) {
      out << csv;
      out.flush();
      return out ? kExitOk : kExitIo;
    }
    std::ofstream file(inv.sweep->output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "learnaug: cannot open " << inv.sweep->output_path << " for writing\n";
      return kExitIo;
    }
    file << csv;
    file.close();
    if (!file) {
      err << "learnaug: write to " << inv.sweep->output_path << " failed\n";
      return kExitIo;
    }
    return kExitOk;
  }

  std::vector<CheckResult> checks;
  try {
    checks = run_verify(inv.verify_suite, inv.jobs);
  } catch (const UsageError& e) {
    err << "learnaug: " << e.what() << "\n";
    return kExitUsage;
  }
  bool all = true;
  for (const auto& c : checks) {
    print_check(c, out);
    all = all && c.passed;
  }
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace learnaug::harness

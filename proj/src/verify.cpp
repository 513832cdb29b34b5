#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "learnaug/grid.hpp"
#include "learnaug/harness.hpp"
#include "learnaug/line_search.hpp"
#include "learnaug/one_max.hpp"
#include "learnaug/parallel.hpp"
#include "learnaug/ski_rental.hpp"

namespace learnaug::harness {
namespace {

constexpr std::uint64_t kVerifySeed = 1;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <typename... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream s;
  s.precision(10);
  (s << ... << parts);
  return s.str();
}

// ---- line search ----------------------------------------------------------

CheckResult line_oracle(unsigned jobs) {
  Stopwatch clock;
  const std::vector<double> bases{2.0, 2.5, 3.0, 5.0};
  constexpr int kXCount = 399;  // 1, 1.5, ..., 200
  constexpr int kYCount = 26;

  struct Partial {
    double worst = 0.0;
    std::size_t cases = 0;
    std::size_t bracket_violations = 0;
  };
  const auto parts = run_cells(bases.size() * kXCount, jobs, [&](std::size_t cell) {
    const double b = bases[cell / kXCount];
    const double x = 1.0 + 0.5 * static_cast<double>(cell % kXCount);
    Partial p;
    for (double y : logspace(x / (b * b) * 1.01, b * b * x, kYCount)) {
      const double sim = line_search::search_distance(x, y, b);
      const double exact = line_search::closed_form_distance(x, y, b);
      p.worst = std::max(p.worst, std::abs(sim - exact) / exact);
      const int j = line_search::bracket_index(x, y, b);
      const double top = y * line_search::int_power(b, 2 * j);
      const double below = y * line_search::int_power(b, 2 * j - 2);
      if (!(top >= x && below < x)) ++p.bracket_violations;
      ++p.cases;
    }
    return p;
  });
  Partial total;
  for (const auto& p : parts) {
    total.worst = std::max(total.worst, p.worst);
    total.cases += p.cases;
    total.bracket_violations += p.bracket_violations;
  }
  const double elapsed = clock.seconds();

  CheckResult r;
  r.name = "line-search simulation matches closed-form distance";
  r.measured = total.worst;
  r.bound = 1e-9;
  r.passed = total.worst <= r.bound && total.cases >= 40'000 && total.bracket_violations == 0 &&
             elapsed < 10.0;
  r.detail = cat("max rel err over ", total.cases, " cases, bracket violations ",
                 total.bracket_violations, ", ", elapsed, " s (limit 10 s)");
  return r;
}

CheckResult line_constants(unsigned jobs) {
  const double b = 2.0;
  constexpr int kXCount = 399;
  const std::vector<double> rhos{0.0, 0.05, 0.5, 1.0, 5.0};
  const std::vector<double> us{0x1p-53, 1e-6, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};

  struct Partial {
    double worst = 0.0;
    double consistency_gap = -1e300;
    std::size_t count = 0;
  };
  const auto parts = run_cells(kXCount, jobs, [&](std::size_t i) {
    const double x = 1.0 + 0.5 * static_cast<double>(i);
    Partial p;
    const double at_zero_error = line_search::search_distance(x, x, b) / x;
    p.consistency_gap = at_zero_error - line_search::consistency_bound(b);
    for (double y : logspace(x / (b * b) * 1.01, b * b * x, 26)) {
      p.worst = std::max(p.worst, line_search::search_distance(x, y, b) / x);
      ++p.count;
      for (double rho : rhos) {
        for (double u : us) {
          const double yt = line_search::perturb_prediction(y, rho, u).y_tilde;
          p.worst = std::max(p.worst, line_search::search_distance(x, yt, b) / x);
          ++p.count;
        }
      }
    }
    return p;
  });
  Partial total;
  for (const auto& p : parts) {
    total.worst = std::max(total.worst, p.worst);
    total.consistency_gap = std::max(total.consistency_gap, p.consistency_gap);
    total.count += p.count;
  }

  CheckResult r;
  r.name = "line-search constants at b=2 and almost-sure robustness";
  r.measured = total.worst;
  r.bound = 9.0 + 1e-9;
  const bool constants =
      line_search::consistency_bound(b) == 3.0 && line_search::robustness_bound(b) == 9.0;
  r.passed = constants && total.worst <= r.bound && total.consistency_gap <= 1e-12;
  r.detail = cat("consistency ", line_search::consistency_bound(b), ", robustness ",
                 line_search::robustness_bound(b), ", max ratio over ", total.count,
                 " raw and perturbed runs, zero-error ratio minus consistency ",
                 total.consistency_gap);
  return r;
}

CheckResult line_brittleness() {
  const auto probe = line_search::brittleness_probe(2.0, 1e-3, 1e4);
  CheckResult r;
  r.name = "line-search brittleness just below the target";
  r.measured = probe.worst_ratio;
  r.bound = 9.0 - 2e-4 - probe.grid_slack;
  r.passed = r.measured > r.bound;
  r.detail = cat("probe must exceed bound; worst y ", probe.worst_y, ", grid slack ",
                 probe.grid_slack);
  return r;
}

CheckResult line_smoothness(unsigned jobs) {
  Stopwatch clock;
  const double x = 100.0;
  const double b = 2.5;
  const auto rows = line_search::figure2_sweep(x, b, {0.05, 0.5, 1.0}, logspace(1.0 / (b * b), b * b, 101),
                                               100'000, kVerifySeed, jobs);
  double worst_excess = -1e300;
  std::size_t violations = 0;
  for (const auto& row : rows) {
    const double excess = row.stats.mean() - (*row.bound + 3.0 * row.stats.se_or_zero());
    worst_excess = std::max(worst_excess, excess);
    if (excess > 0.0) ++violations;
  }
  const double elapsed = clock.seconds();

  CheckResult r;
  r.name = "line-search expected ratio within its error-dependent bound";
  r.measured = worst_excess;
  r.bound = 0.0;
  r.passed = violations == 0 && elapsed < 60.0;
  r.detail = cat("max of mean - (bound + 3 se) over ", rows.size(), " cells, ", violations,
                 " violations, ", elapsed, " s (limit 60 s)");
  return r;
}

// ---- one-max --------------------------------------------------------------

CheckResult onemax_pareto() {
  double residual = 0.0;
  for (double theta : {1.5, 2.0, 4.0, 10.0}) {
    for (double lambda : parse_grid("0:1:0.05")) {
      const auto p = one_max::solve_pareto(lambda, theta);
      residual = std::max(residual, std::abs(1.0 / p.c - theta * p.r));
      residual = std::max(residual, std::abs(1.0 / p.c - (lambda / p.r + 1.0 - lambda)));
    }
  }
  double endpoint = 0.0;
  for (double theta : {1.5, 2.0, 4.0, 5.0, 10.0}) {
    const auto lo = one_max::solve_pareto(0.0, theta);
    const auto hi = one_max::solve_pareto(1.0, theta);
    endpoint = std::max({endpoint, std::abs(lo.c - 1.0), std::abs(lo.r - 1.0 / theta),
                         std::abs(hi.c - 1.0 / std::sqrt(theta)),
                         std::abs(hi.r - 1.0 / std::sqrt(theta))});
  }
  CheckResult r;
  r.name = "one-max Pareto front identities and endpoints";
  r.measured = std::max(residual, endpoint);
  r.bound = 1e-12;
  r.passed = residual < 1e-12 && endpoint <= 1e-12;
  r.detail = cat("max residual ", residual, ", max endpoint error ", endpoint);
  return r;
}

CheckResult onemax_robustness(unsigned jobs) {
  struct Case {
    double lambda, theta, rho;
  };
  std::vector<Case> cases;
  for (double lambda : {0.1, 0.5, 0.9}) {
    for (double theta : {2.0, 4.0, 5.0}) {
      for (double rho : {0.25, 0.5, 1.0}) cases.push_back({lambda, theta, rho});
    }
  }

  double worst_margin = 1e300;  // exact - floor
  for (const Case& c : cases) {
    const one_max::OneMaxConfig config{c.lambda, c.rho, c.theta};
    const auto pareto = one_max::solve_pareto(c.lambda, c.theta);
    const double floor = one_max::robustness_floor(c.rho, pareto);
    for (double p : one_max::p_star_grid(config, pareto, 512)) {
      worst_margin = std::min(worst_margin, one_max::exact_expected_ratio(p, config, pareto) - floor);
    }
  }

  // Monte-Carlo cross-check: one interior point per configuration, where both
  // the accept and the fall-back outcome have positive probability, plus the
  // top-branch joint p* = 1/r at lambda = 0.5, theta = 4, rho = 1.
  cases.push_back({0.5, 4.0, 1.0});
  const auto z_scores = run_cells(cases.size(), jobs, [&](std::size_t i) {
    const Case& c = cases[i];
    const one_max::OneMaxConfig config{c.lambda, c.rho, c.theta};
    const auto pareto = one_max::solve_pareto(c.lambda, c.theta);
    const double p = i + 1 == cases.size() ? 1.0 / pareto.r
                                           : std::max(1.0, std::exp(-0.5 * c.rho) / pareto.r);
    SeededStream stream(kVerifySeed, i);
    const auto mc = one_max::expected_ratio_mc(p, c.theta, config, pareto, 100'000, stream);
    const double exact = one_max::exact_expected_ratio(p, config, pareto);
    const double se = mc.se_or_zero();
    const double diff = std::abs(mc.mean() - exact);
    return se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : 1e300);
  });
  const double worst_z = *std::max_element(z_scores.begin(), z_scores.end());

  CheckResult r;
  r.name = "one-max randomized robustness floor and Monte-Carlo agreement";
  r.measured = worst_margin;
  r.bound = -1e-9;
  r.passed = worst_margin >= -1e-9 && worst_z <= 3.0;
  r.detail = cat("min exact - floor over ", cases.size() - 1, " configs x 512 p*; max |MC - exact|/se ",
                 worst_z, " over ", z_scores.size(), " points (limit 3)");
  return r;
}

CheckResult onemax_brittleness() {
  const double delta = 1e-6;
  double worst = 0.0;
  for (double lambda : {0.1, 0.5, 0.9}) {
    for (double theta : {2.0, 4.0, 5.0}) {
      const one_max::OneMaxConfig config{lambda, 0.0, theta};
      const auto pareto = one_max::solve_pareto(lambda, theta);
      const double y = 1.0 / pareto.r;
      const one_max::PriceSequence prices({y - delta, 1.0}, theta);
      const double payoff = one_max::run_instance(prices, one_max::threshold(config, y, pareto));
      worst = std::max(worst, std::abs(payoff / prices.p_star() - pareto.r));
    }
  }
  CheckResult r;
  r.name = "one-max brittleness on the two-price instance";
  r.measured = worst;
  r.bound = 1e-5;
  r.passed = worst <= r.bound;
  r.detail = cat("max |ratio - r| with delta ", delta, ", y = 1/r over 9 (lambda, theta)");
  return r;
}

// ---- ski rental -----------------------------------------------------------

constexpr double kSkiB = 10.0;

std::vector<double> ski_x_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 500; ++i) g.push_back(kSkiB * i / 100.0);
  return g;
}

CheckResult ski_pointwise(unsigned jobs) {
  Stopwatch clock;
  const auto xs = ski_x_grid();
  const auto lambdas = parse_grid("0.1:1:0.1");
  const std::vector<double> rhos{0.0, 0.25, 0.5, 1.0};

  struct Partial {
    double worst = -1e300;
    std::size_t violations = 0;
    std::size_t count = 0;
  };
  const auto parts = run_cells(lambdas.size() * rhos.size(), jobs, [&](std::size_t cell) {
    const ski::SkiConfig config{kSkiB, lambdas[cell / rhos.size()], rhos[cell % rhos.size()]};
    Partial p;
    for (double x : xs) {
      for (double y : xs) {
        const double excess = ski::cost(x, y, config).ratio - ski::theorem3_bound(x, y, config);
        p.worst = std::max(p.worst, excess);
        if (excess > 1e-9) ++p.violations;
        ++p.count;
      }
    }
    return p;
  });
  Partial total;
  for (const auto& p : parts) {
    total.worst = std::max(total.worst, p.worst);
    total.violations += p.violations;
    total.count += p.count;
  }
  const double worked =
      ski::theorem3_bound(2.0 * kSkiB, 1.5 * kSkiB, ski::SkiConfig{kSkiB, 0.5, 1.0});
  const double elapsed = clock.seconds();

  CheckResult r;
  r.name = "ski-rental pointwise worst-case bound";
  r.measured = total.worst;
  r.bound = 1e-9;
  r.passed = total.violations == 0 && std::abs(worked - 2.25) <= 1e-12 && elapsed < 5.0;
  r.detail = cat("max ratio - bound over ", total.count, " (x, y, lambda, rho), ", total.violations,
                 " violations; worked bound ", worked, " (expect 2.25); ", elapsed, " s (limit 5 s)");
  return r;
}

CheckResult ski_average(unsigned) {
  const auto xs = ski_x_grid();
  const auto lambdas = parse_grid("0.1:1:0.1");
  const std::vector<double> rhos{0.0, 0.25, 0.5, 1.0};
  const auto qs = parse_grid("0.5:1:0.05");

  double worst_avg = -1e300;
  for (double lambda : lambdas) {
    for (double rho : rhos) {
      const ski::SkiConfig config{kSkiB, lambda, rho};
      for (double q : qs) {
        const double bound = ski::theorem4_bound(config, q);
        for (double x : xs) {
          worst_avg = std::max(worst_avg, ski::exact_average_ratio(x, config, {q}) - bound);
        }
      }
    }
  }

  double worst_tuned = -1e300;
  bool lambda_star_ok = true;
  bool beats_prior = true;
  for (double q : qs) {
    const double ls = ski::corollary_lambda_star(q);
    lambda_star_ok = lambda_star_ok && ls >= 0.0 && ls <= 1.0;
    beats_prior = beats_prior && ski::corollary_bound(q) <= ski::prior_bound(q);
    const ski::SkiConfig config{kSkiB, ls, 0.0};
    double sup = 0.0;
    for (double x : xs) sup = std::max(sup, ski::exact_average_ratio(x, config, {q}));
    worst_tuned = std::max(worst_tuned, sup - ski::corollary_bound(q));
  }
  const double half = ski::corollary_bound(0.5);
  const bool half_ok = std::abs(half - (1.25 + 0.5 * std::sqrt(1.25))) <= 1e-12 && half < 2.0;

  CheckResult r;
  r.name = "ski-rental average-case bound and optimal trust level";
  r.measured = std::max(worst_avg, worst_tuned);
  r.bound = 1e-9;
  r.passed = worst_avg <= 1e-9 && worst_tuned <= 1e-9 && lambda_star_ok && beats_prior && half_ok;
  r.detail = cat("max avg - bound ", worst_avg, ", max sup avg at lambda* - bound ", worst_tuned,
                 ", bound(0.5) ", half, ", lambda* in [0,1] ", lambda_star_ok,
                 ", below prior bound ", beats_prior);
  return r;
}

CheckResult ski_rho_direction(unsigned jobs) {
  bool monotone = true;
  const auto fine_rho = parse_grid("0:1:0.05");
  for (double lambda : parse_grid("0.1:1:0.1")) {
    for (double q : parse_grid("0.5:1:0.05")) {
      for (std::size_t i = 1; i < fine_rho.size(); ++i) {
        monotone = monotone && ski::theorem4_bound({kSkiB, lambda, fine_rho[i - 1]}, q) <=
                                   ski::theorem4_bound({kSkiB, lambda, fine_rho[i]}, q);
      }
    }
  }

  const auto qs = parse_grid("0.5:1:0.05");
  const auto rows = ski::bernoulli_sweep(kSkiB, 0.5, {0.0, 1.0}, qs, 100'000, kVerifySeed, jobs);
  double worst = -1e300;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const auto& r0 = rows[i].stats;
    const auto& r1 = rows[qs.size() + i].stats;
    const double se = std::hypot(r0.se_or_zero(), r1.se_or_zero());
    const double excess = r0.mean() - (r1.mean() + 3.0 * se);
    worst = std::max(worst, excess);
    if (excess > 0.0) ++violations;
  }

  CheckResult r;
  r.name = "ski-rental bound grows with rho; smaller rho averages no worse";
  r.measured = worst;
  r.bound = 0.0;
  r.passed = monotone && violations == 0;
  r.detail = cat("bound monotone in rho ", monotone, "; max mean(rho=0) - mean(rho=1) - 3 se ", worst,
                 " over ", qs.size(), " Q values");
  return r;
}

CheckResult ski_gaussian_jump(unsigned jobs) {
  const auto rows = ski::gaussian_sweep(kSkiB, 0.5, {0.0}, {0.0, 0.01 * kSkiB},
                                        ski::default_x_grid(kSkiB), 100'000, kVerifySeed, jobs);
  const double exact = rows[0].worst.mean();
  const double noisy = rows[1].worst.mean();
  CheckResult r;
  r.name = "ski-rental worst-case jump under small Gaussian noise";
  r.measured = noisy;
  r.bound = 1.6;
  r.passed = noisy >= 1.6 && std::abs(exact - 1.5) <= 1e-9;
  r.detail = cat("worst mean at sigma=0.01b must reach 1.6 (worst x ", rows[1].worst_x,
                 "); at sigma=0 ", exact, " (expect 1.5)");
  return r;
}

// ---- harness --------------------------------------------------------------

CheckResult reproducibility(unsigned jobs) {
  const unsigned parallel = std::max(2u, jobs == 0 ? default_jobs() : jobs);
  std::size_t mismatches = 0;
  std::string which;
  for (Experiment e : {Experiment::LineFigure2, Experiment::OneMaxFigure3, Experiment::SkiFigure5,
                       Experiment::SkiFigure6, Experiment::SkiCorollaryFigure1}) {
    SweepSpec spec = default_spec(e);
    spec.trials = 1000;
    spec.seed = kVerifySeed;
    spec.jobs = 1;
    const std::string first = render_csv(spec);
    const std::string second = render_csv(spec);
    spec.jobs = parallel;
    const std::string threaded = render_csv(spec);
    if (first != second || first != threaded) {
      ++mismatches;
      which += std::string(which.empty() ? "" : ",") + std::string(experiment_name(e));
    }
  }
  CheckResult r;
  r.name = "CSV output byte-identical across runs and worker counts";
  r.measured = static_cast<double>(mismatches);
  r.bound = 0.0;
  r.passed = mismatches == 0;
  r.detail = cat("experiments differing: ", which.empty() ? "none" : which, " (jobs 1 vs ", parallel,
                 ", trials 1000)");
  return r;
}

struct Suite {
  std::string_view name;
  std::vector<std::function<CheckResult(unsigned)>> checks;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"line-oracle", {line_oracle}},
      {"line-robustness", {line_constants, [](unsigned) { return line_brittleness(); }}},
      {"line-smoothness", {line_smoothness}},
      {"onemax-pareto", {[](unsigned) { return onemax_pareto(); }}},
      {"onemax-robustness", {onemax_robustness, [](unsigned) { return onemax_brittleness(); }}},
      {"ski-bounds", {ski_pointwise, ski_average}},
      {"ski-experiments", {ski_rho_direction, ski_gaussian_jump}},
      {"reproducibility", {reproducibility}},
  };
  return all;
}

}  // namespace

std::vector<std::string_view> verify_suites() {
  std::vector<std::string_view> names;
  for (const auto& s : suites()) names.push_back(s.name);
  names.push_back("all");
  return names;
}

std::vector<CheckResult> run_verify(std::string_view suite, unsigned jobs) {
  std::vector<CheckResult> results;
  bool found = false;
  for (const auto& s : suites()) {
    if (suite != "all" && suite != s.name) continue;
    found = true;
    for (const auto& check : s.checks) results.push_back(check(jobs));
  }
  if (!found) throw UsageError("unknown verify suite '" + std::string(suite) + "'");
  return results;
}

void print_check(const CheckResult& check, std::ostream& out) {
  out << (check.passed ? "PASS" : "FAIL") << "  " << check.name << ": measured "
      << format_number(check.measured) << " vs " << format_number(check.bound) << " ("
      << check.detail << ")\n";
}

}  // namespace learnaug::harness

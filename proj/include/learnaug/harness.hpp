#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace learnaug::harness {

enum class Experiment { LineFigure2, OneMaxFigure3, SkiFigure5, SkiFigure6, SkiCorollaryFigure1 };

std::string_view experiment_name(Experiment e);
std::optional<Experiment> experiment_from_name(std::string_view name);
/// Bit-exact CSV header line (no trailing newline).
std::string_view csv_header(Experiment e);

/// A fully resolved sweep: every grid is filled in, defaults applied.
struct SweepSpec {
  Experiment experiment = Experiment::LineFigure2;
  std::vector<double> rho;
  std::vector<double> sigma;
  std::vector<double> Q;
  std::vector<double> y_over_x;  // line-figure2 only
  double b = 0.0;
  double x = 0.0;
  double lambda = 0.0;
  double theta = 0.0;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  std::string output_path;  // empty: stdout
  unsigned jobs = 0;        // 0: all cores; not part of the result

  void validate() const;
};

/// Defaults for an experiment before any flag is applied.
SweepSpec default_spec(Experiment e);

/// One CSV cell: empty, a real number, or a count.
using Cell = std::variant<std::monostate, double, std::uint64_t>;
using SweepRow = std::vector<Cell>;

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Evaluates the sweep. Rows follow the experiment's header column order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Metadata comment line, header and rows, each terminated by '\n'.
void write_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows, std::ostream& out);
std::string render_csv(const SweepSpec& spec);

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Result of parsing argv: either a sweep or a verification request.
struct Invocation {
  std::optional<SweepSpec> sweep;
  std::string verify_suite;
  unsigned jobs = 0;
  bool help_shown = false;
};

/// Throws UsageError on unknown subcommands, malformed grids or bad values.
Invocation parse_cli(int argc, const char* const* argv, std::ostream& help_out);

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

/// Suites: line-oracle, line-robustness, line-smoothness, onemax-pareto,
/// onemax-robustness, ski-bounds, ski-experiments, reproducibility, all.
std::vector<std::string_view> verify_suites();
/// Throws UsageError for an unknown suite.
std::vector<CheckResult> run_verify(std::string_view suite, unsigned jobs);
void print_check(const CheckResult& check, std::ostream& out);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerifyFailed = 3;
inline constexpr int kExitIo = 4;

/// Whole command-line program; returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace learnaug::harness

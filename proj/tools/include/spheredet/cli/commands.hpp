#pragma once

// Command layer behind the spheredet executable. Everything here writes to
// caller-supplied streams so tests can drive it without a process boundary.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spheredet/laplace.hpp"
#include "spheredet/rational.hpp"
#include "spheredet/real.hpp"

namespace spheredet::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kNonConvergence = 3,
};

enum class Format { Csv, Json };

struct NRange {
  int lo = 0;
  int hi = 0;
};

// "a..b" inclusive, or a single integer. Throws ConfigError.
NRange parse_range(std::string_view text);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // det | verify | fit
  std::string target;   // det/fit: dirac | laplace | synthetic
  NRange n{2, 10};
  bool n_given = false;
  laplace::Operator op = laplace::Operator::Ordinary;
  std::optional<Rational> alpha;
  Precision prec = 128;
  Format format = Format::Csv;
  std::string out;  // empty: stdout
  bool odd_only = false;
  bool rescaled = false;
  std::string suite = "all";
  std::string model = "exp";  // fit: exp | power
  int jobs = 1;
};

// Values of n selected by the range and the odd-only filter, ascending.
std::vector<int> selected_ns(const RunConfig& cfg);

// Checks invariants not expressible in the parser. Throws ConfigError.
void validate(const RunConfig& cfg);

// Default precision: SPHEREDET_PREC when set and valid, otherwise 128.
Precision default_precision();

// Parses argv and dispatches. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_det(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_fit(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Decimal rendering used by every table: scientific notation with as many
// significant digits as prec supports, minus a guard of three.
std::string decimal(const Real& x, Precision prec);

struct Check {
  std::string suite;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

// Runs one suite ("all" runs every suite in the documented order).
// Throws ConfigError for an unknown suite name.
std::vector<Check> run_suite(const std::string& suite, Precision prec);

const std::vector<std::string>& suite_names();

}  // namespace spheredet::cli

#ifndef MOTIVIC_CLI_HPP
#define MOTIVIC_CLI_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "motivic/ring.hpp"
#include "motivic/series.hpp"

namespace motivic::cli {

enum ExitCode { exit_ok = 0, exit_data = 1, exit_usage = 2, exit_check_failed = 3 };

enum class Command { help, matrices, codim, compute, check, oracle };
enum class Format { text, json };

struct RunConfig {
  Command command = Command::help;
  std::string input;
  std::string series;  // pg | pdg | phatd | phatd-closed
  std::vector<long> bound;
  std::optional<Specialization> specialization;
  Strictness strictness = Strictness::literal;
  Format format = Format::text;
  unsigned workers = 1;

  std::string stratum;            // codim: file path or inline JSON
  std::optional<long> check_bound;

  std::string oracle;             // semigroup | monomial-codim | divisors
  std::vector<long> generators;   // semigroup
  std::vector<std::string> weights;  // monomial-codim, "a:b" per valuation
  std::vector<long> values;       // monomial-codim
  long oracle_bound = 0;          // semigroup
  int q = 0, m = 0, n = 0;        // divisors

  std::string help_text;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// `args` excludes the program name. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes a parsed configuration; returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with the exit-code contract applied to every failure.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count from MOTIVIC_WORKERS, else 1.
unsigned default_workers();

}  // namespace motivic::cli

#endif

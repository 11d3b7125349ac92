#pragma once

#include <string>
#include <vector>

#include "hypconv/oracle.hpp"
#include "hypconv/report.hpp"

namespace hypconv {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitBadParams = 1,
  kExitUncovered = 2,
  kExitInconsistent = 3,
  kExitDerivativeZero = 4,
};

/// Allowed |closed - numeric| for Finite values, and slack under a lower bound.
inline constexpr double kOracleTolerance = 5e-3;
inline constexpr double kBoundSlack = 1e-3;

struct CommandResult {
  OutputRecord record;
  int exit_code = kExitOk;
};

CommandResult run_kappa(const Params& p, Method method, double tol, const ScanConfig& cfg);
CommandResult run_classify(const Params& p, double tol);

/// "lo:hi:n" (n evenly spaced values, both ends included) or a single value.
/// Throws InvalidArgument.
std::vector<double> parse_axis(const std::string& spec);

/// Records in lexicographic (a, b, c) order.  Failures end up in the row's
/// warnings.
std::vector<OutputRecord> run_scan(const std::vector<double>& as, const std::vector<double>& bs,
                                   const std::vector<double>& cs, Method method, double tol, const ScanConfig& cfg,
                                   unsigned threads = 0);

}  // namespace hypconv

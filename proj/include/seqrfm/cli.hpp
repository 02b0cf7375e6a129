#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seqrfm::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kBudgetRefused = 3,
};

/// Runs one subcommand (mine, mine-max, oracle, oracle-max, gen, stats,
/// bench). `args` excludes the program name. "-" as --input/--output maps
/// to `in`/`out`; diagnostics and run statistics default to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace seqrfm::cli

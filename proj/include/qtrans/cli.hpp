#ifndef QTRANS_CLI_HPP
#define QTRANS_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace qtrans::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kParseError = 2,
  kValidationError = 3,
  kVerificationFailed = 4,
};

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes fig1a..fig1d (.csv plus .json summaries) into dir.
void write_figures(const std::filesystem::path& dir, int threads = 0);

}  // namespace qtrans::cli

#endif  // QTRANS_CLI_HPP

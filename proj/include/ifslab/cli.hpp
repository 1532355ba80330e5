#ifndef IFSLAB_CLI_HPP
#define IFSLAB_CLI_HPP

#include <string>
#include <vector>

namespace ifslab::cli {

inline constexpr const char* kVersion = "0.1.0";

// Executes a subcommand; returns the process exit code (0 ok, 2 config
// error, 3 numeric failure). Diagnostics go to stderr.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace ifslab::cli

#endif

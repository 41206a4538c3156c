#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scalebench::cli {

// Exit-code contract.
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;    // usage or runtime error
inline constexpr int kExitVerdict = 2;  // a checked bound or expected verdict failed

struct CommandInfo {
  std::string group;  // empty for top-level commands
  std::string name;
  std::string summary;
  std::vector<std::string> operations;  // module operations the command reaches
};

const std::vector<CommandInfo>& dispatch_table();

// args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Parses args and serializes the resulting options as a key=value config;
// feeding it back through --config reproduces the same run.
std::string serialize_config(const std::vector<std::string>& args);

}  // namespace scalebench::cli

#ifndef GROUPOIDAL_CLI_HPP
#define GROUPOIDAL_CLI_HPP

#include "groupoidal/model.hpp"

namespace groupoidal {

struct Report {
  std::string command;
  std::string status;  // pass | fail | error
  std::vector<Finding> findings;
  std::vector<std::string> notes;  // informational, never affects status
  std::string error;

  int exit_code() const { return status == "pass" ? 0 : status == "fail" ? 1 : 2; }
};

struct RunOptions {
  Backend backend = Backend::FinSet;
  std::size_t cap = 4;
};

// --max wins, then GROUPOIDAL_MAX, then 4
std::size_t effective_cap(std::optional<std::size_t> flag, const char* env_value);

const std::vector<std::string>& command_names();

// throws UnknownCommand, TypeMismatch, UnresolvedName and module errors
Report run_command(const std::string& cmd, const std::vector<std::string>& names, const Env& env,
                   const RunOptions& opts = {});
// run_command with every Error turned into an error report
Report execute(const std::string& cmd, const std::vector<std::string>& names, const Env& env,
               const RunOptions& opts = {});
Report error_report(const std::string& cmd, const std::exception& e);

// one finding per line
std::string to_text(const Report& r);
// keys: command, status, findings[{check-id, ref, result, witness}], notes, error
std::string to_json(const Report& r);

}  // namespace groupoidal

#endif

#pragma once

// Command-line front end: argument parsing and dispatch, kept separate from
// main() so both halves are testable in-process.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace freetower::cli {

enum class OutputFormat { text, json, dot };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int inconclusive = 2;
inline constexpr int malformed = 3;
inline constexpr int usage = 64;
}  // namespace exit_code

struct Command {
  std::string verb;                // whitehead, cut-vertices, fold, primitive, tower, fork-witness, weight-witness
  std::vector<std::string> path;   // tower only: {"build", "gn"}, {"build", "gn-tilde"} or {"verify"}
  OutputFormat output = OutputFormat::text;

  std::string words;     // --words / --gens / --word text
  std::string file;      // --file: one word per line
  std::string contains;  // fold --contains, semicolon-separated
  std::string emit;      // tower build --emit
  std::string dot_path;  // fork-witness --dot
  std::string json_path; // weight-witness --json
  std::optional<int> rank;
  std::optional<int> index_i;
  int n = 0;
  int count = 0;
};

struct ParseOutcome {
  std::optional<Command> command;  // absent on usage error or help
  int exit_code = exit_code::ok;
  std::string message;             // usage error text or help
};

/// Arguments exclude the program name.
ParseOutcome parse_args(std::span<const std::string> args);

struct RunResult {
  int exit_code = exit_code::ok;
  std::string output;  // stdout
  std::string error;   // stderr
};

RunResult run(const Command& cmd);

/// parse_args + run, for main().
RunResult run_main(std::span<const std::string> args);

}  // namespace freetower::cli

#pragma once

// Config-driven jobs behind the command-line tool: schema checks, dispatch and
// report assembly.

#include "divzero/qder.hpp"
#include "divzero/shen_larsson.hpp"

#include "json.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace divzero::jobs {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent configuration; the message starts with the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Outcome { Pass, Violation, Error };
std::string to_string(Outcome o);
/// 0 pass, 1 violation, 2 error.
int exit_code(Outcome o);

enum class Command { VerifyAlgebra, VerifyModule, Closure, QtorusInfo };
std::string to_string(Command c);
Command parse_command(const std::string& name);

struct RunOptions {
  std::uint64_t seed = 0;
  bool timing = false;  // wall-clock seconds in the report; off keeps reports byte-identical
};

struct Report {
  Command command;
  Outcome outcome;
  Json body;
};

/// Reads and parses a JSON file; IO and syntax problems raise ConfigError.
Json load_config(const std::string& path);

/// Runs one job. Schema problems raise ConfigError before any work is done.
Report run(Command cmd, const Json& config, const RunOptions& opt);

/// Report with outcome "error" carrying the message.
Report error_report(Command cmd, const std::string& message, const RunOptions& opt);

std::string render_json(const Report& r);
/// Fiber-dimension grids over the target box, one per congruence class.
std::string render_text(const Report& r);

// JSON encodings shared with tests.
Json to_json(const Rat& x);
Json to_json(const Cyc& x);
Rat rat_from_json(const Json& j, const std::string& field);
Cyc cyc_from_json(const Json& j, const std::string& field);
Rep rep_from_json(const Json& j, int d, const std::string& field);
QMatrix q_from_json(const Json& j, const std::string& field);
Box box_from_json(const Json& j, int d, const std::string& field);

}  // namespace divzero::jobs

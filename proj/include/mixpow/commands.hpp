#pragma once

#include <string>

#include <json.hpp>

namespace mixpow {

// One run of a named command over a JSON configuration. The output document
// embeds the resolved configuration:
//   {"schema": "mixpow/1", "command": ..., "config": {...}, "result": {...}, "notes": [...]}
// or, with "format": "csv", a CSV table with a fixed header per command.
struct CommandOutput {
  std::string text;
  // False when an oracle cross-check disagreed; text still holds the document.
  bool consistent = true;
  std::string message;
};

// Commands: expsum, integrate, arcs, scan, exponent, convergents, chi, ladder.
// Throws Error for invalid input or exceeded ceilings.
CommandOutput run_command(const std::string& command, const nlohmann::json& config);

inline constexpr const char* kSchema = "mixpow/1";

}  // namespace mixpow

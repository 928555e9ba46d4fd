#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace esym::cli {

enum class Format { text, json, csv };

enum Exit : int { kOk = 0, kFailure = 1, kUsage = 2, kParse = 3 };

struct Range {
  unsigned lo = 0;
  unsigned hi = 0;
  bool empty() const { return lo > hi; }
};
/// "7" or "2..9"; lo > hi is a valid empty range.
Range parse_range(const std::string& text);

struct RunConfig {
  std::uint64_t seed = 42;
  std::string n = "8";
  std::string k = "4";
  unsigned d = 1;
  unsigned q = 2;
  Format format = Format::text;
  bool noncommutative = false;
  std::string out;
  std::string weights;  // "1:1,2:2" or "unit" or "index:K"
  std::string mode = "balanced";
  std::string alpha;    // empty: the proof's alpha
  unsigned threads = 0; // 0: hardware concurrency
};

/// A command's result: the record to print and the exit code it implies.
struct Outcome {
  nlohmann::ordered_json record;
  int exit = kOk;
};

Outcome cmd_build(const std::string& construction, const RunConfig& cfg);
Outcome cmd_verify(const std::string& path, const RunConfig& cfg);
Outcome cmd_decompose(const std::string& path, const RunConfig& cfg);
Outcome cmd_bounds(const std::string& which, const RunConfig& cfg);
Outcome cmd_selftest(const RunConfig& cfg);
Outcome cmd_table(const RunConfig& cfg);

/// Renders a record. Records with a "rows" array become tables in csv/text.
void render(const nlohmann::ordered_json& record, Format format, std::ostream& out);

/// Least-squares fit of log2(size/n) = a (log2 k)^2 + b log2 k over the Newton
/// construction for k = 2..k_max.
nlohmann::ordered_json newton_exponent_fit(unsigned k_max);

enum class LogLevel { error, warn, info, debug };
/// From ESYM_LOG_LEVEL, default warn.
LogLevel log_level();
void log(LogLevel level, const std::string& message);

}  // namespace esym::cli

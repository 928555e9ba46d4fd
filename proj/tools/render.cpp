#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string_view>

#include "cli.hpp"

namespace esym::cli {

using Json = nlohmann::ordered_json;

namespace {

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

bool color_enabled() {
  const char* v = std::getenv("ESYM_COLOR");
  return v != nullptr && (std::string_view(v) == "always" || std::string_view(v) == "1");
}

std::string paint(const std::string& key, const std::string& value) {
  if (key != "pass" || !color_enabled()) return value;
  return (value == "true" ? "\x1b[32m" : "\x1b[31m") + value + "\x1b[0m";
}

// Depth-first key paths: a.b[2].c
void flatten(const Json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [k, child] : v.items()) flatten(child, path.empty() ? k : path + "." + k, out);
  } else if (v.is_array() && !v.empty() && !v.front().is_primitive()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", out);
  } else if (v.is_array()) {
    std::string joined;
    for (const auto& x : v) joined += (joined.empty() ? "" : " ") + scalar(x);
    out.emplace_back(path, joined);
  } else {
    out.emplace_back(path, scalar(v));
  }
}

std::vector<std::string> columns_of(const Json& rows) {
  std::vector<std::string> cols;
  for (const auto& row : rows) {
    for (const auto& [k, _] : row.items()) {
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
  }
  return cols;
}

void render_rows(const Json& rows, Format format, std::ostream& out) {
  const auto cols = columns_of(rows);
  if (format == Format::csv) {
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << csv_field(cols[c]);
    if (!cols.empty()) out << "\r\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        out << (c ? "," : "") << csv_field(row.contains(cols[c]) ? scalar(row[cols[c]]) : "");
      }
      out << "\r\n";
    }
    return;
  }
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    width[c] = cols[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], scalar(row.value(cols[c], Json())).size());
  }
  auto line = [&](auto cell) {
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << cell(c);
    out << '\n';
  };
  if (cols.empty()) {
    out << "(empty table)\n";
    return;
  }
  line([&](std::size_t c) { return cols[c]; });
  for (const auto& row : rows) line([&](std::size_t c) { return row.contains(cols[c]) ? scalar(row[cols[c]]) : "-"; });
}

}  // namespace

void render(const Json& record, Format format, std::ostream& out) {
  if (format == Format::json) {
    out << record.dump(2) << '\n';
    return;
  }
  if (record.contains("rows") && record["rows"].is_array()) {
    render_rows(record["rows"], format, out);
    return;
  }
  std::vector<std::pair<std::string, std::string>> flat;
  flatten(record, "", flat);
  if (format == Format::csv) {
    out << "key,value\r\n";
    for (const auto& [k, v] : flat) out << csv_field(k) << ',' << csv_field(v) << "\r\n";
    return;
  }
  for (const auto& [k, v] : flat) {
    const auto leaf = k.substr(k.find_last_of('.') == std::string::npos ? 0 : k.find_last_of('.') + 1);
    out << k << ": " << paint(leaf, v) << '\n';
  }
}

LogLevel log_level() {
  const char* v = std::getenv("ESYM_LOG_LEVEL");
  if (v == nullptr) return LogLevel::warn;
  const std::string_view s(v);
  if (s == "error") return LogLevel::error;
  if (s == "info") return LogLevel::info;
  if (s == "debug") return LogLevel::debug;
  return LogLevel::warn;
}

void log(LogLevel level, const std::string& message) {
  static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
  if (level > log_level()) return;
  std::cerr << "esym: " << kNames[static_cast<int>(level)] << ": " << message << '\n';
}

}  // namespace esym::cli

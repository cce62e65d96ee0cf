#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace smstab {

inline constexpr std::string_view kVersion = "0.1.0";

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Result of one CLI command: tables for data, a summary record, and prose.
struct Report {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<Table> tables;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> lines;
  std::vector<std::string> warnings;

  const Table& table(std::string_view name) const;
};

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);
double parse_double(std::string_view s);

std::string to_csv(const Table& table);
/// Header plus rows of raw cell strings; no quoting is ever emitted, so none is parsed.
std::vector<std::vector<std::string>> read_csv(std::string_view text);

nlohmann::ordered_json to_json(const Table& table);
nlohmann::ordered_json to_json(const Report& report);
std::string to_text(const Report& report);

enum class OutputFormat { Text, Csv, Json };
OutputFormat parse_format(std::string_view s);

/// Files written for one run: data files plus the manifest that lists them.
struct EmittedFiles {
  std::vector<std::filesystem::path> data;
  std::filesystem::path manifest;
};

/// Writes `<stem>_<table>.csv` (or `<stem>.json`) and `<stem>.manifest.json` under `dir`.
/// Data files carry no timestamp, so identical parameters give byte-identical data.
EmittedFiles write_report(const Report& report, OutputFormat format, const std::filesystem::path& dir,
                          const std::string& stem);

/// Stdout rendering when no output directory is configured.
std::string render(const Report& report, OutputFormat format);

}  // namespace smstab

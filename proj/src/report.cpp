#include "smstab/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace smstab {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table '" + name + "' row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

const Table& Report::table(std::string_view name) const {
  for (const auto& t : tables)
    if (t.name == name) return t;
  throw std::out_of_range("report has no table named '" + std::string(name) + "'");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return std::signbit(x) ? "-0" : "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return x;
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_double(*d);
  }
  return std::get<std::string>(c);
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + p.string() + " for writing");
  os << content;
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (j) out += ',';
    out += table.columns[j];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += cell_text(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> read_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  while (!text.empty()) {
    auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.emplace_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

nlohmann::ordered_json to_json(const Table& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rows.push_back(std::move(r));
  }
  return {{"columns", table.columns}, {"rows", std::move(rows)}};
}

nlohmann::ordered_json to_json(const Report& report) {
  nlohmann::ordered_json tables = nlohmann::ordered_json::object();
  for (const auto& t : report.tables) tables[t.name] = to_json(t);
  return {{"command", report.command},
          {"version", kVersion},
          {"params", report.params},
          {"summary", report.summary},
          {"warnings", report.warnings},
          {"tables", std::move(tables)}};
}

std::string to_text(const Report& report) {
  std::ostringstream os;
  for (const auto& l : report.lines) os << l << '\n';
  for (const auto& w : report.warnings) os << "warning: " << w << '\n';
  return os.str();
}

OutputFormat parse_format(std::string_view s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown format '" + std::string(s) + "' (expected text, csv or json)");
}

std::string render(const Report& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Text: return to_text(report);
    case OutputFormat::Csv: return report.tables.empty() ? std::string{} : to_csv(report.tables.front());
    case OutputFormat::Json: return to_json(report).dump(2) + "\n";
  }
  return {};
}

EmittedFiles write_report(const Report& report, OutputFormat format, const std::filesystem::path& dir,
                          const std::string& stem) {
  std::filesystem::create_directories(dir);
  EmittedFiles files;
  files.manifest = dir / (stem + ".manifest.json");
  const auto manifest_name = files.manifest.filename().string();

  if (format == OutputFormat::Json) {
    auto doc = to_json(report);
    doc["manifest"] = manifest_name;
    files.data.push_back(dir / (stem + ".json"));
    write_file(files.data.back(), doc.dump(2) + "\n");
  } else {
    for (const auto& t : report.tables) {
      files.data.push_back(dir / (stem + "_" + t.name + ".csv"));
      write_file(files.data.back(), to_csv(t));
    }
    files.data.push_back(dir / (stem + "_summary.json"));
    nlohmann::ordered_json summary = {{"manifest", manifest_name},
                                      {"summary", report.summary},
                                      {"warnings", report.warnings}};
    write_file(files.data.back(), summary.dump(2) + "\n");
  }

  nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  for (const auto& p : files.data) outputs.push_back(p.filename().string());
  nlohmann::ordered_json manifest = {{"command", report.command},
                                     {"params", report.params},
                                     {"version", kVersion},
                                     {"timestamp", iso_timestamp()},
                                     {"outputs", std::move(outputs)}};
  write_file(files.manifest, manifest.dump(2) + "\n");
  return files;
}

}  // namespace smstab

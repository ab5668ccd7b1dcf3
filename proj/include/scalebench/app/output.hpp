#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "scalebench/core/time_series.hpp"

namespace scalebench::app {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that reads back to the same double; "nan", "inf"
/// and "-inf" for non-finite values.
[[nodiscard]] std::string format_number(double x);

using Cell = std::variant<double, long, std::string>;

/// A named output table. A series has a leading time column and only
/// numeric cells; it is emitted in JSON as {"times":[...],"values":[[...]]}.
struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool series = true;

  /// Columns `time_column` followed by one per component.
  static Table from_series(std::string name, const TimeSeries& ts, std::string time_column,
                           std::vector<std::string> value_columns);
};

enum class Format { csv, json };

[[nodiscard]] std::string render_csv(const Table& t);
[[nodiscard]] std::string render_json(const Table& t);

/// Scalar results of a command, in insertion order.
struct Report {
  std::vector<Table> tables;
  Json summary = Json::object();
  std::string summary_name = "summary";
};

/// Lowercase hex SHA-256 of a byte string.
[[nodiscard]] std::string sha256_hex(const std::string& bytes);

struct EmittedFile {
  std::string name;
  std::string sha256;
  std::size_t bytes = 0;
};

/// Writes every table (and the summary, if non-empty) into `dir`, creating
/// it if needed. Throws `output_unwritable` on failure.
[[nodiscard]] std::vector<EmittedFile> emit(const Report& report, Format format, const std::filesystem::path& dir);

/// Writes `manifest.json` through a temporary file and a rename.
void write_manifest(const std::filesystem::path& dir, const Json& manifest);

/// Recomputes every digest listed in a manifest; returns the names that do
/// not match (or are missing).
[[nodiscard]] std::vector<std::string> verify_manifest(const std::filesystem::path& dir);

}  // namespace scalebench::app

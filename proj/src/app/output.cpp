#include "scalebench/app/output.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "scalebench/core/error.hpp"

namespace scalebench::app {

namespace fs = std::filesystem;

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  return std::get<std::string>(c);
}

// JSON has no literal for non-finite numbers; they become null.
Json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? Json(*d) : Json(nullptr);
  if (const auto* l = std::get_if<long>(&c)) return Json(*l);
  return Json(std::get<std::string>(c));
}

[[noreturn]] void unwritable(const fs::path& p, const std::string& why) {
  throw Error(ErrorKind::io, "output_unwritable", "cannot write " + p.string() + ": " + why);
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) unwritable(p, "open failed");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) unwritable(p, "write failed");
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

Table Table::from_series(std::string name, const TimeSeries& ts, std::string time_column,
                         std::vector<std::string> value_columns) {
  if (value_columns.size() != ts.dimension()) {
    throw_validation("column_mismatch", "table '" + name + "' expects " + std::to_string(value_columns.size()) +
                                            " columns, series has " + std::to_string(ts.dimension()));
  }
  Table t;
  t.name = std::move(name);
  t.columns.push_back(std::move(time_column));
  for (auto& c : value_columns) t.columns.push_back(std::move(c));
  t.rows.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::vector<Cell> row{ts.time(i)};
    for (double v : ts.value(i)) row.emplace_back(v);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string render_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += cell_text(row[i]);
    }
    s += '\n';
  }
  return s;
}

std::string render_json(const Table& t) {
  Json j;
  if (t.series) {
    Json times = Json::array();
    Json values = Json::array();
    for (const auto& row : t.rows) {
      times.push_back(cell_json(row.at(0)));
      Json v = Json::array();
      for (std::size_t i = 1; i < row.size(); ++i) v.push_back(cell_json(row[i]));
      values.push_back(std::move(v));
    }
    j["times"] = std::move(times);
    j["values"] = std::move(values);
  } else {
    j["columns"] = t.columns;
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json r = Json::array();
      for (const auto& c : row) r.push_back(cell_json(c));
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
  }
  return j.dump() + "\n";
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::io, "digest_failed", "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

std::vector<EmittedFile> emit(const Report& report, Format format, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) unwritable(dir, ec ? ec.message() : "not a directory");
  std::vector<EmittedFile> files;
  auto put = [&](const std::string& name, const std::string& bytes) {
    write_file(dir / name, bytes);
    files.push_back({name, sha256_hex(bytes), bytes.size()});
  };
  for (const Table& t : report.tables) {
    if (format == Format::csv) {
      put(t.name + ".csv", render_csv(t));
    } else {
      put(t.name + ".json", render_json(t));
    }
  }
  if (!report.summary.empty()) put(report.summary_name + ".json", report.summary.dump(2) + "\n");
  return files;
}

void write_manifest(const fs::path& dir, const Json& manifest) {
  const fs::path tmp = dir / ".manifest.json.tmp";
  write_file(tmp, manifest.dump(2) + "\n");
  std::error_code ec;
  fs::rename(tmp, dir / "manifest.json", ec);
  if (ec) unwritable(dir / "manifest.json", ec.message());
}

std::vector<std::string> verify_manifest(const fs::path& dir) {
  const std::string text = read_file(dir / "manifest.json");
  if (text.empty()) return {"manifest.json"};
  const Json m = Json::parse(text, nullptr, false);
  if (m.is_discarded() || !m.contains("outputs")) return {"manifest.json"};
  std::vector<std::string> bad;
  for (const auto& f : m["outputs"]) {
    const std::string name = f.value("file", "");
    const fs::path p = dir / name;
    if (!fs::exists(p) || sha256_hex(read_file(p)) != f.value("sha256", "")) bad.push_back(name);
  }
  return bad;
}

}  // namespace scalebench::app

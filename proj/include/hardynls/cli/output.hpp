#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hardynls::cli {

/// %.17g; non-finite values become nan, inf or -inf.
std::string format_double(double x);

/// Pretty JSON with sorted keys, 2-space indent and every floating-point
/// number printed with 17 significant digits. Non-finite numbers become null.
std::string dump_json(const nlohmann::json& j);

/// Writes text to path atomically enough for a single writer (temp + rename).
void write_file(const std::filesystem::path& path, const std::string& text);

/// CSV with a two-line comment preamble carrying the config hash and version.
class CsvWriter {
 public:
  CsvWriter(std::string config_hash, std::vector<std::string> columns);
  void row(const std::vector<double>& values);
  std::string str() const { return out_; }

 private:
  std::size_t width_;
  std::string out_;
};

}  // namespace hardynls::cli

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace spqc {

// Header row of column names followed by whitespace-separated decimal rows.
// Numbers are written with 17 significant digits so doubles round-trip.
struct DatTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::vector<double> column(const std::string& name) const;

  std::string to_string() const;
  // Throws ConfigError on a ragged or non-numeric table.
  static DatTable parse(const std::string& text);

  // Throw IoError on filesystem failures.
  void write(const std::filesystem::path& path) const;
  static DatTable read(const std::filesystem::path& path);
};

std::string format_double(double v);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace spqc

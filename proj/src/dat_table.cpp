#include "sobolev_pqc/dat_table.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sobolev_pqc/types.hpp"

namespace spqc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void DatTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("DatTable: ragged row");
  rows.push_back(std::move(row));
}

std::vector<double> DatTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] != name) continue;
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
  throw std::out_of_range("DatTable: no column named '" + name + "'");
}

std::string DatTable::to_string() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ' ';
    out += columns[c];
  }
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) out += ' ';
      out += format_double(r[c]);
    }
    out += '\n';
  }
  return out;
}

DatTable DatTable::parse(const std::string& text) {
  DatTable t;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string tok;
    if (!have_header) {
      while (fields >> tok) t.columns.push_back(tok);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    while (fields >> tok) {
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError("dat line " + std::to_string(line_no) + ": bad number '" + tok + "'");
      row.push_back(v);
    }
    if (row.size() != t.columns.size())
      throw ConfigError("dat line " + std::to_string(line_no) + ": expected " +
                        std::to_string(t.columns.size()) + " columns");
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw ConfigError("dat table: missing header row");
  return t;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void DatTable::write(const std::filesystem::path& path) const { write_text_file(path, to_string()); }

DatTable DatTable::read(const std::filesystem::path& path) { return parse(read_text_file(path)); }

}  // namespace spqc

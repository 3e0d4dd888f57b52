#include "lclogit/csv.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lclogit/common.hpp"

namespace lclogit {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(field);
  return fields;
}

}  // namespace

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);

  CsvTable table;
  std::string line;
  std::size_t file_row = 0;
  while (std::getline(in, line)) {
    ++file_row;
    if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) break;
    auto fields = split_fields(line);
    if (file_row == 1) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw Error(path + ":" + std::to_string(file_row) + ": expected " +
                  std::to_string(table.header.size()) + " fields, got " +
                  std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) throw Error(path + ": empty file, no header");
  return table;
}

double parse_csv_double(const std::string& field, const std::string& path,
                        std::size_t file_row, const std::string& column) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0' || errno == ERANGE) {
    throw Error(path + ":" + std::to_string(file_row) + ": column '" + column +
                "': not a number: '" + field + "'");
  }
  return v;
}

long parse_csv_long(const std::string& field, const std::string& path,
                    std::size_t file_row, const std::string& column) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(field.c_str(), &end, 10);
  if (end == field.c_str() || *end != '\0' || errno == ERANGE) {
    throw Error(path + ":" + std::to_string(file_row) + ": column '" + column +
                "': not an integer: '" + field + "'");
  }
  return v;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  auto write_row = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out << ',';
      out << fields[i];
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

}  // namespace lclogit

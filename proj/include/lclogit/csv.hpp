#pragma once

#include <string>
#include <vector>

namespace lclogit {

// Minimal strict CSV: comma separated, no quoting, one header row.
// Every data row must have exactly as many fields as the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column position by name, -1 if absent.
  int column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

// file_row is the 1-based line number in the source file (header is line 1),
// used so parse errors can name the offending row.
double parse_csv_double(const std::string& field, const std::string& path,
                        std::size_t file_row, const std::string& column);
long parse_csv_long(const std::string& field, const std::string& path,
                    std::size_t file_row, const std::string& column);

void write_csv(const std::string& path, const CsvTable& table);

}  // namespace lclogit

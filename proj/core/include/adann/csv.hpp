#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace adann {

/// Semicolon-separated table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_double(double value);

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

} // namespace adann

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wildfire::io {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

/// Strict numeric parse of the whole field (surrounding blanks allowed).
bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, long long& out);

std::vector<std::string> split_csv_line(std::string_view line);

struct CsvTable {
  std::vector<std::string> header;
  // each row keeps its 1-based line number in the file for error messages
  std::vector<std::pair<int, std::vector<std::string>>> rows;
};

/// Reads a comma-separated file with a header line. Blank lines are skipped.
CsvTable read_csv(const std::filesystem::path& path);

/// Writes via a temporary sibling and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace wildfire::io

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace galt::csv {

// A parsed RFC-4180 table. Every record has exactly header.size() fields.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column, or throws Error{Io, "MissingColumn"}.
  std::size_t column(std::string_view name) const;
};

// Parses CSV text with a mandatory header line. Quoted fields may contain
// commas, doubled quotes and line breaks. A UTF-8 BOM is skipped. Throws
// Error{Io, "MalformedCsv"} on unterminated quotes, stray quotes, or records
// with the wrong field count.
Table parse(std::string_view text);
Table read_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

// Quotes a field only when it contains a comma, quote or line break.
std::string escape(std::string_view field);

// Joins escaped fields with commas and a trailing '\n'.
std::string format_row(const std::vector<std::string>& fields);

}  // namespace galt::csv

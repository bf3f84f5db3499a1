#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexidiv/measures.hpp"

namespace lexidiv::profile_io {

inline constexpr std::string_view kCsvHeader = "id,group,volume,abundance,mattr,evenness,disparity,dispersion";

// Header plus one row per text; reals in 6-decimal fixed point.
std::string to_csv(std::span<const measures::ProfiledText> rows);
// Array of objects with the same fields as the CSV columns.
std::string to_json(std::span<const measures::ProfiledText> rows);
// Space-aligned table for terminals.
std::string to_text(std::span<const measures::ProfiledText> rows);

// Accepts either format (JSON when the first non-space byte is '[').
// Throws ParseError naming `source` and the offending row.
std::vector<measures::ProfiledText> parse(std::string_view content, std::string_view source);

std::vector<measures::ProfiledText> read_file(const std::filesystem::path& path);

// Shared by all writers: throws IoError when the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace lexidiv::profile_io

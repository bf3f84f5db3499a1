#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lexidiv::csv {

// Splits one CSV record. Supports double-quoted fields with "" escapes;
// a trailing '\r' is dropped.
std::vector<std::string> split_line(std::string_view line);

// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

// Splits text into lines, accepting \n and \r\n; a final empty line is dropped.
std::vector<std::string_view> lines(std::string_view text);

}  // namespace lexidiv::csv

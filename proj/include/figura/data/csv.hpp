#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace figura::data {

// RFC 4180 records: comma separated, double-quoted fields may hold commas,
// quotes ("") and line breaks. A trailing CR before LF is dropped.
std::vector<std::vector<std::string>> read_csv(std::istream& in);
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view value);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace figura::data

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace moodrec::csv {

/// Splits one CSV line. Double quotes delimit fields that contain commas or
/// quotes; "" inside a quoted field is a literal quote. Unquoted fields are
/// trimmed of surrounding whitespace.
std::vector<std::string> parse_line(std::string_view line);

/// Quotes the field if it contains a comma, quote, or newline.
std::string format_field(std::string_view field);

std::string format_row(const std::vector<std::string>& fields);

std::string strip_bom(std::string_view text);

std::string trim(std::string_view text);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

}  // namespace moodrec::csv

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace guamp::csv {

// Shortest decimal that round-trips to the same double; non-finite values
// become "inf", "-inf" or "nan".
std::string format_double(double value);

double parse_double(std::string_view text);

// RFC 4180 field quoting: fields containing ',', '"', CR or LF are quoted
// and embedded quotes doubled.
std::string quote(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

std::vector<std::string> split_row(std::string_view line);

}  // namespace guamp::csv

#pragma once

#include <string>

namespace aremos {

/// Serial day number for an ISO-8601 calendar date (days since 1970-01-01,
/// proleptic Gregorian).
long days_from_civil(int year, unsigned month, unsigned day);

/// Parse "YYYY-MM-DD" into a serial day number. Throws ValidationError on
/// malformed input.
long parse_iso_date(const std::string& text);

/// Format a serial day number as "YYYY-MM-DD".
std::string to_iso_date(long serial);

}  // namespace aremos

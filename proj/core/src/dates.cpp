#include "aremos/dates.hpp"

#include <cstdio>

#include "aremos/errors.hpp"

namespace aremos {

// Howard Hinnant's days-from-civil algorithm.
long days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

namespace {

void civil_from_days(long z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long yy = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yy + (m <= 2));
}

}  // namespace

long parse_iso_date(const std::string& text) {
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    char trailing = 0;
    if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &trailing) != 3 ||
        m < 1 || m > 12 || d < 1 || d > 31) {
        throw ValidationError("invalid ISO-8601 date: '" + text + "'");
    }
    return days_from_civil(y, m, d);
}

std::string to_iso_date(long serial) {
    int y;
    unsigned m, d;
    civil_from_days(serial, y, m, d);
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%04d-%02u-%02u", y, m, d);
    return buffer;
}

}  // namespace aremos

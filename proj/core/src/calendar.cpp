#include "bbtv/calendar.hpp"

#include <charconv>
#include <cstdio>

#include "bbtv/error.hpp"

namespace bbtv {

std::string_view to_string(Season s) { return s == Season::Summer ? "summer" : "winter"; }

Season season_of_month(int month) {
    return (month >= 9 || month <= 2) ? Season::Summer : Season::Winter;
}

YearMonth YearMonth::from_index(int idx) {
    int year = idx / 12;
    int rem = idx % 12;
    if (rem < 0) {
        rem += 12;
        --year;
    }
    return {year, rem + 1};
}

Season YearMonth::season() const { return season_of_month(month); }

std::string YearMonth::label() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

YearMonth YearMonth::parse(std::string_view label) {
    auto fail = [&] { return DataError("bad month label '" + std::string(label) + "' (expected YYYY-MM)"); };
    if (label.size() != 7 || label[4] != '-') throw fail();
    YearMonth ym;
    auto r1 = std::from_chars(label.data(), label.data() + 4, ym.year);
    auto r2 = std::from_chars(label.data() + 5, label.data() + 7, ym.month);
    if (r1.ec != std::errc{} || r1.ptr != label.data() + 4 || r2.ec != std::errc{} || r2.ptr != label.data() + 7)
        throw fail();
    if (ym.month < 1 || ym.month > 12) throw fail();
    return ym;
}

}  // namespace bbtv

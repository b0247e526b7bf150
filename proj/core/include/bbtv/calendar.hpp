#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace bbtv {

enum class Season { Summer, Winter };

std::string_view to_string(Season s);

/// A calendar month. Ordered, and supports month arithmetic.
struct YearMonth {
    int year{2000};
    int month{1};  // 1..12

    /// Months since January of year 0.
    [[nodiscard]] int index() const { return year * 12 + (month - 1); }
    [[nodiscard]] static YearMonth from_index(int idx);

    [[nodiscard]] YearMonth plus(int months) const { return from_index(index() + months); }

    /// Sep..Feb are summer, Mar..Aug winter.
    [[nodiscard]] Season season() const;

    /// "YYYY-MM"
    [[nodiscard]] std::string label() const;
    static YearMonth parse(std::string_view label);

    friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

Season season_of_month(int month);

}  // namespace bbtv

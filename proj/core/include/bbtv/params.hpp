#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "bbtv/calendar.hpp"

namespace bbtv {

/// The six seasonal transition probabilities.
///
/// Flat order (used by every file format and by Prior/McmcConfig):
///   recovery_summer, recovery_winter, near_summer, near_winter,
///   far_summer, far_winter
struct ParamSet {
    static constexpr std::size_t size = 6;
    std::array<double, size> values{};

    enum Index : std::size_t {
        RecoverySummer = 0,
        RecoveryWinter = 1,
        NearSummer = 2,
        NearWinter = 3,
        FarSummer = 4,
        FarWinter = 5,
    };

    static ParamSet make(double recovery_summer, double recovery_winter, double near_summer, double near_winter,
                         double far_summer, double far_winter) {
        return ParamSet{{recovery_summer, recovery_winter, near_summer, near_winter, far_summer, far_winter}};
    }

    [[nodiscard]] double recovery(Season s) const { return values[s == Season::Summer ? 0 : 1]; }
    [[nodiscard]] double near(Season s) const { return values[s == Season::Summer ? 2 : 3]; }
    [[nodiscard]] double far(Season s) const { return values[s == Season::Summer ? 4 : 5]; }

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    /// All components in [0,1].
    [[nodiscard]] bool valid() const;

    friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

inline constexpr std::array<std::string_view, ParamSet::size> kParamNames{
    "recovery_summer", "recovery_winter", "near_summer", "near_winter", "far_summer", "far_winter"};

}  // namespace bbtv

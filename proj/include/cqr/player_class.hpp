#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "cqr/error.hpp"

namespace cqr {

/// Behavior classes of the evaluation experiment.
///   F  fair throughout
///   f  disruptive, then fair
///   d  fair, then disruptive
///   D  disruptive throughout
enum class PlayerClass : std::uint8_t { F = 0, f = 1, d = 2, D = 3 };

inline constexpr std::array<PlayerClass, 4> all_player_classes{PlayerClass::F, PlayerClass::f, PlayerClass::d,
                                                                PlayerClass::D};

inline char to_char(PlayerClass c) noexcept { return "FfdD"[static_cast<std::size_t>(c)]; }

inline PlayerClass parse_player_class(std::string_view s) {
    if (s == "F") return PlayerClass::F;
    if (s == "f") return PlayerClass::f;
    if (s == "d") return PlayerClass::d;
    if (s == "D") return PlayerClass::D;
    throw InvalidArgument("unknown player class '" + std::string(s) + "' (expected F, f, d or D)");
}

}  // namespace cqr

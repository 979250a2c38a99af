#pragma once

#include <array>
#include <string_view>
#include <utility>

namespace torsionlab {

inline constexpr std::string_view kVersion = "0.1.0";

inline constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kModuleVersions{{
    {"groups-core", "0.1.0"},
    {"subshift-xa", "0.1.0"},
    {"kgroup", "0.1.0"},
    {"recursion", "0.1.0"},
    {"automata-sim", "0.1.0"},
    {"cli", "0.1.0"},
}};

}  // namespace torsionlab

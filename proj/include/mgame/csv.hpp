#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "mgame/engagement.hpp"
#include "mgame/games.hpp"

namespace mgame {

inline constexpr const char* kEngagementHeader =
    "t,R,Vr,z,w,sigma_dot_a,sigma_dot_b,aMr,aMn,aTr,aTn,beta1,beta2,beta3,beta4";
inline constexpr const char* kGameHeader = "t,x1,x2,alpha1,alpha2";

/// 17 significant digits, locale independent.
std::string format_number(double v);

/// Seconds, or "none".
std::string format_capture(const std::optional<double>& t);

std::string engagement_csv(const EngagementResult& result);

/// Example 1 trajectories (one state column) get x2 = 0.
std::string game_csv(const GameResult& result);

/// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace mgame

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace spotbid {

using Timestamp = std::chrono::sys_seconds;

/// Parses `YYYY-MM-DDTHH:MM:SS` followed by `Z` or `+00:00`. A fractional
/// second part is accepted only when it is all zeros (AWS exports write
/// `.000Z`); anything finer is rejected.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// Always `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_iso8601(Timestamp ts);

}  // namespace spotbid

#include "spotbid/time.hpp"

#include <charconv>

#include <fmt/format.h>

namespace spotbid {
namespace {

bool read_fixed(std::string_view text, std::size_t pos, std::size_t width, int& out) {
  if (pos + width > text.size()) return false;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + width, out);
  return ec == std::errc{} && ptr == text.data() + pos + width;
}

bool expect(std::string_view text, std::size_t pos, char c) {
  return pos < text.size() && text[pos] == c;
}

}  // namespace

std::optional<Timestamp> parse_iso8601(std::string_view text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!read_fixed(text, 0, 4, y) || !expect(text, 4, '-') || !read_fixed(text, 5, 2, mo) ||
      !expect(text, 7, '-') || !read_fixed(text, 8, 2, d) ||
      !(expect(text, 10, 'T') || expect(text, 10, 't') || expect(text, 10, ' ')) ||
      !read_fixed(text, 11, 2, h) || !expect(text, 13, ':') || !read_fixed(text, 14, 2, mi) ||
      !expect(text, 16, ':') || !read_fixed(text, 17, 2, s)) {
    return std::nullopt;
  }
  std::size_t pos = 19;
  if (expect(text, pos, '.')) {
    ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] == '0') ++pos;
    if (pos == start) return std::nullopt;
    if (pos < text.size() && text[pos] >= '1' && text[pos] <= '9') return std::nullopt;
  }
  const std::string_view zone = text.substr(pos);
  if (zone != "Z" && zone != "z" && zone != "+00:00") return std::nullopt;

  if (h > 23 || mi > 59 || s > 59) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return std::chrono::sys_days{ymd} + std::chrono::hours{h} + std::chrono::minutes{mi} +
         std::chrono::seconds{s};
}

std::string format_iso8601(Timestamp ts) {
  const auto day = std::chrono::floor<std::chrono::days>(ts);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{ts - day};
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                     hms.hours().count(), hms.minutes().count(), hms.seconds().count());
}

}  // namespace spotbid

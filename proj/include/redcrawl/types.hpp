#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace redcrawl {

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Dense node index in [0, n).
using NodeId = std::uint32_t;

enum class Color : std::uint8_t { Red = 0, Blue = 1 };

inline constexpr Color flip(Color c) noexcept {
  return c == Color::Red ? Color::Blue : Color::Red;
}

inline constexpr std::size_t index_of(Color c) noexcept {
  return static_cast<std::size_t>(c);
}

inline std::string_view to_string(Color c) noexcept {
  return c == Color::Red ? "red" : "blue";
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

inline std::optional<Color> parse_color(std::string_view s) {
  const auto lower = to_lower(s);
  if (lower == "red") return Color::Red;
  if (lower == "blue") return Color::Blue;
  return std::nullopt;
}

/// LS1: blue nodes know the reds and their hierarchy.
/// LS2: blue nodes call every neighbor blue.
enum class LyingScenario : std::uint8_t { LS1, LS2 };

inline std::string_view to_string(LyingScenario s) noexcept {
  return s == LyingScenario::LS1 ? "ls1" : "ls2";
}

inline LyingScenario parse_scenario(std::string_view s) {
  const auto lower = to_lower(s);
  if (lower == "ls1") return LyingScenario::LS1;
  if (lower == "ls2") return LyingScenario::LS2;
  throw std::invalid_argument("unknown lying scenario '" + std::string(s) + "' (expected ls1 or ls2)");
}

}  // namespace redcrawl

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace repoprint {

/// ISO-3166 alpha-2 country code, always two uppercase ASCII letters.
class CountryLabel {
 public:
  /// Throws Error(InvalidCountryCode) unless `code` is two uppercase letters.
  explicit CountryLabel(std::string_view code);

  /// Case-insensitive parse ("cn" -> CN); nullopt when malformed.
  static std::optional<CountryLabel> parse(std::string_view code);

  const std::string& code() const noexcept { return code_; }

  friend auto operator<=>(const CountryLabel&, const CountryLabel&) = default;

 private:
  std::string code_;
};

inline const CountryLabel kUnitedStates{"US"};
inline const CountryLabel kChina{"CN"};

}  // namespace repoprint

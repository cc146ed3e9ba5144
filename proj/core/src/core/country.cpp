#include "repoprint/core/country.hpp"

#include "repoprint/core/error.hpp"

namespace repoprint {
namespace {

bool is_upper_pair(std::string_view code) {
  return code.size() == 2 && code[0] >= 'A' && code[0] <= 'Z' &&
         code[1] >= 'A' && code[1] <= 'Z';
}

}  // namespace

CountryLabel::CountryLabel(std::string_view code) : code_(code) {
  if (!is_upper_pair(code)) {
    fail(Errc::InvalidCountryCode,
         "country code must be two uppercase letters, got '" +
             std::string(code) + "'");
  }
}

std::optional<CountryLabel> CountryLabel::parse(std::string_view code) {
  std::string upper(code);
  for (char& c : upper) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  if (!is_upper_pair(upper)) return std::nullopt;
  return CountryLabel(upper);
}

}  // namespace repoprint

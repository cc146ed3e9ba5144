#include <charconv>

#include "httplib.h"
#include "json.hpp"
#include "repoprint/core/error.hpp"
#include "repoprint/ingest/geocoder.hpp"

namespace repoprint::ingest {
namespace {

using nlohmann::json;

std::string url_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    const bool unreserved = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                            (c >= '0' && c <= '9') || c == '-' || c == '.' ||
                            c == '_' || c == '~';
    if (unreserved) {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

std::optional<double> coordinate(const json& j) {
  double v = 0.0;
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) return std::nullopt;
  const auto& s = j.get_ref<const std::string&>();
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

NominatimGeocoder::NominatimGeocoder(std::string base_url, int timeout_seconds)
    : timeout_seconds_(timeout_seconds) {
  while (!base_url.empty() && base_url.back() == '/') base_url.pop_back();
  const auto scheme = base_url.find("://");
  if (scheme == std::string::npos) {
    fail(Errc::InvalidConfig, "geocoder base url needs a scheme: '" + base_url + "'");
  }
  const auto path = base_url.find('/', scheme + 3);
  scheme_host_port_ = base_url.substr(0, path);
  path_prefix_ = path == std::string::npos ? "" : base_url.substr(path);
}

std::string NominatimGeocoder::request_target(std::string_view location) const {
  return path_prefix_ + "/search?q=" + url_encode(location) +
         "&format=json&limit=1&addressdetails=1";
}

std::optional<GeocodeResult> NominatimGeocoder::geocode(
    std::string_view location) {
  std::lock_guard lock(mu_);
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);
  const httplib::Headers headers = {{"User-Agent", "repoprint-geocoder/0.3"}};
  auto res = client.Get(request_target(location), headers);
  if (!res) {
    fail(Errc::GeocoderError, "geocoder request failed: " +
                                  httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    fail(Errc::GeocoderError,
         "geocoder returned HTTP " + std::to_string(res->status));
  }
  json body = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
  if (!body.is_array()) fail(Errc::GeocoderError, "geocoder reply is not an array");
  if (body.empty()) return std::nullopt;

  const json& first = body.front();
  auto lat = coordinate(first.value("lat", json()));
  auto lon = coordinate(first.value("lon", json()));
  std::optional<CountryLabel> country;
  if (auto addr = first.find("address"); addr != first.end() && addr->is_object()) {
    if (auto cc = addr->find("country_code"); cc != addr->end() && cc->is_string()) {
      country = CountryLabel::parse(cc->get<std::string>());
    }
  }
  if (!lat || !lon || !country || *lat < -90 || *lat > 90 || *lon < -180 ||
      *lon > 180) {
    return std::nullopt;
  }
  return GeocodeResult{*lat, *lon, *country};
}

}  // namespace repoprint::ingest

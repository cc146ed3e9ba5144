#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "repoprint/core/country.hpp"

namespace repoprint::ingest {

struct UserProfile {
  std::string actor;
  std::string location;
  std::string company;
};

/// Reads `actor,location,company` CSV (header required).
std::vector<UserProfile> load_user_profiles(const std::string& path);

struct GeocodeResult {
  double latitude = 0.0;
  double longitude = 0.0;
  CountryLabel country{"US"};
};

/// Location lookup service. Implementations receive already-normalized
/// strings, return nullopt when a place is unknown and throw
/// Error(GeocoderError) on transport failures.
class Geocoder {
 public:
  virtual ~Geocoder() = default;
  virtual std::optional<GeocodeResult> geocode(std::string_view location) = 0;
};

/// Offline geocoder over a TSV gazetteer:
/// `normalized-location TAB country-code [TAB lat TAB lon]`.
class GazetteerGeocoder final : public Geocoder {
 public:
  static GazetteerGeocoder parse(std::string_view tsv);
  static GazetteerGeocoder load(const std::string& path);

  std::optional<GeocodeResult> geocode(std::string_view location) override;

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, GeocodeResult, std::less<>> entries_;
};

/// Nominatim-compatible HTTP client:
///   GET {base_url}/search?q={location}&format=json&limit=1&addressdetails=1
/// Queries are serialized; one request is in flight at a time.
class NominatimGeocoder final : public Geocoder {
 public:
  /// `base_url` like "http://localhost:8080" or "http://host/nominatim".
  explicit NominatimGeocoder(std::string base_url, int timeout_seconds = 10);

  std::optional<GeocodeResult> geocode(std::string_view location) override;

  /// The request target (path + query) for a location; exposed for tests.
  std::string request_target(std::string_view location) const;

 private:
  std::string scheme_host_port_;
  std::string path_prefix_;
  int timeout_seconds_;
  std::mutex mu_;
};

/// Creates a geocoder from a CLI spec: "file:<gazetteer.tsv>" or
/// "http:<base-url>" (the "http:" prefix is stripped only when followed by
/// something other than "//").
std::unique_ptr<Geocoder> make_geocoder(const std::string& spec);

/// Trim, collapse internal whitespace runs to one space, ASCII-lowercase.
std::string normalize_location(std::string_view location);

/// Normalized location -> resolved country (nullopt = known unresolvable).
/// TSV file form: `normalized_location TAB country_code_or_dash`.
class GeocodeCache {
 public:
  GeocodeCache() = default;
  GeocodeCache(GeocodeCache&& o) noexcept : entries_(std::move(o.entries_)) {}
  GeocodeCache& operator=(GeocodeCache&& o) noexcept {
    entries_ = std::move(o.entries_);
    return *this;
  }

  static GeocodeCache load(const std::string& path);  // missing file -> empty
  void save(const std::string& path) const;

  /// Outer nullopt: not cached.
  std::optional<std::optional<CountryLabel>> lookup(std::string_view key) const;
  void store(const std::string& key, std::optional<CountryLabel> value);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, std::optional<CountryLabel>, std::less<>> entries_;
};

struct ResolveReport {
  std::size_t lookups = 0;
  std::size_t cache_hits = 0;
  std::size_t geocoder_queries = 0;
  std::size_t geocoder_failures = 0;
  std::size_t unresolved = 0;
};

/// Cache-first location resolution with counters.
class LocationResolver {
 public:
  LocationResolver(Geocoder& geocoder, GeocodeCache& cache)
      : geocoder_(geocoder), cache_(cache) {}

  std::optional<CountryLabel> resolve(std::string_view location);

  ResolveReport report() const;

 private:
  Geocoder& geocoder_;
  GeocodeCache& cache_;
  mutable std::mutex mu_;
  ResolveReport report_;
};

/// Empty, unresolvable and failed lookups all give nullopt; transport
/// failures are counted in the resolver's report rather than thrown.
std::optional<CountryLabel> resolve_country(std::string_view location,
                                            LocationResolver& resolver);

}  // namespace repoprint::ingest

#include "repoprint/ingest/geocoder.hpp"

#include <charconv>
#include <filesystem>

#include "repoprint/core/binary_io.hpp"
#include "repoprint/core/csv.hpp"
#include "repoprint/core/error.hpp"

namespace repoprint::ingest {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto tab = line.find('\t', pos);
    out.push_back(line.substr(pos, tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl + 1;
    if (!line.empty()) fn(line);
  }
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(Errc::ParseError, "bad coordinate '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<UserProfile> load_user_profiles(const std::string& path) {
  const auto table = csv::Table::load(path);
  const auto actor = table.column("actor");
  const auto location = table.column("location");
  const bool has_company = table.has_column("company");
  const auto company = has_company ? table.column("company") : 0;
  std::vector<UserProfile> out;
  for (const auto& row : table.rows()) {
    if (row[actor].empty()) continue;
    out.push_back({row[actor], row[location],
                   has_company ? row[company] : std::string()});
  }
  return out;
}

std::string normalize_location(std::string_view location) {
  std::string out;
  bool pending_space = false;
  for (char c : location) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  return out;
}

GazetteerGeocoder GazetteerGeocoder::parse(std::string_view tsv) {
  GazetteerGeocoder g;
  for_each_line(tsv, [&](std::string_view line) {
    if (line.front() == '#') return;
    auto cols = split_tabs(line);
    if (cols.size() < 2) {
      fail(Errc::ParseError, "gazetteer line needs >= 2 columns: '" +
                                 std::string(line) + "'");
    }
    auto label = CountryLabel::parse(cols[1]);
    if (!label) {
      fail(Errc::ParseError, "bad gazetteer country '" + std::string(cols[1]) + "'");
    }
    GeocodeResult r{0.0, 0.0, *label};
    if (cols.size() >= 4) {
      r.latitude = parse_double(cols[2]);
      r.longitude = parse_double(cols[3]);
      if (r.latitude < -90 || r.latitude > 90 || r.longitude < -180 ||
          r.longitude > 180) {
        fail(Errc::ParseError, "gazetteer coordinates out of range");
      }
    }
    g.entries_.insert_or_assign(normalize_location(cols[0]), r);
  });
  return g;
}

GazetteerGeocoder GazetteerGeocoder::load(const std::string& path) {
  return parse(read_file(path));
}

std::optional<GeocodeResult> GazetteerGeocoder::geocode(
    std::string_view location) {
  auto it = entries_.find(location);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::unique_ptr<Geocoder> make_geocoder(const std::string& spec) {
  if (spec.starts_with("file:")) {
    return std::make_unique<GazetteerGeocoder>(
        GazetteerGeocoder::load(spec.substr(5)));
  }
  if (spec.starts_with("http:") && !spec.starts_with("http://")) {
    return std::make_unique<NominatimGeocoder>(spec.substr(5));
  }
  if (spec.starts_with("http://")) {
    return std::make_unique<NominatimGeocoder>(spec);
  }
  fail(Errc::InvalidConfig,
       "geocoder must be file:<gazetteer.tsv> or http:<url>, got '" + spec + "'");
}

GeocodeCache GeocodeCache::load(const std::string& path) {
  GeocodeCache cache;
  if (!std::filesystem::exists(path)) return cache;
  for_each_line(read_file(path), [&](std::string_view line) {
    auto cols = split_tabs(line);
    if (cols.size() != 2) {
      fail(Errc::ParseError, "geocode cache line needs 2 columns");
    }
    std::optional<CountryLabel> value;
    if (cols[1] != "-") {
      value = CountryLabel::parse(cols[1]);
      if (!value) fail(Errc::ParseError, "bad cached country code");
    }
    cache.entries_.insert_or_assign(std::string(cols[0]), value);
  });
  return cache;
}

void GeocodeCache::save(const std::string& path) const {
  std::shared_lock lock(mu_);
  std::string out;
  for (const auto& [key, value] : entries_) {
    out += key;
    out += '\t';
    out += value ? value->code() : std::string("-");
    out += '\n';
  }
  write_file(path, out);
}

std::optional<std::optional<CountryLabel>> GeocodeCache::lookup(
    std::string_view key) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void GeocodeCache::store(const std::string& key,
                         std::optional<CountryLabel> value) {
  std::unique_lock lock(mu_);
  entries_.insert_or_assign(key, std::move(value));
}

std::size_t GeocodeCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

std::optional<CountryLabel> LocationResolver::resolve(
    std::string_view location) {
  const std::string key = normalize_location(location);
  {
    std::lock_guard lock(mu_);
    ++report_.lookups;
  }
  if (key.empty()) {
    std::lock_guard lock(mu_);
    ++report_.unresolved;
    return std::nullopt;
  }
  if (auto cached = cache_.lookup(key)) {
    std::lock_guard lock(mu_);
    ++report_.cache_hits;
    if (!*cached) ++report_.unresolved;
    return *cached;
  }
  std::optional<CountryLabel> result;
  bool transport_failed = false;
  try {
    {
      std::lock_guard lock(mu_);
      ++report_.geocoder_queries;
    }
    if (auto hit = geocoder_.geocode(key)) result = hit->country;
  } catch (const Error& e) {
    if (e.code() != Errc::GeocoderError) throw;
    transport_failed = true;
  }
  std::lock_guard lock(mu_);
  if (transport_failed) {
    // Not cached so a later run can retry.
    ++report_.geocoder_failures;
  } else {
    cache_.store(key, result);
  }
  if (!result) ++report_.unresolved;
  return result;
}

ResolveReport LocationResolver::report() const {
  std::lock_guard lock(mu_);
  return report_;
}

std::optional<CountryLabel> resolve_country(std::string_view location,
                                            LocationResolver& resolver) {
  return resolver.resolve(location);
}

}  // namespace repoprint::ingest

#include <gtest/gtest.h>
#include <zlib.h>

#include <thread>

#include "httplib.h"
#include "repoprint/core/binary_io.hpp"
#include "repoprint/core/error.hpp"
#include "repoprint/ingest/archive.hpp"
#include "repoprint/ingest/curation.hpp"
#include "repoprint/ingest/geocoder.hpp"
#include "test_support.hpp"

using namespace repoprint;
using namespace repoprint::ingest;
using repoprint::testing::at;
using repoprint::testing::make_event;
using repoprint::testing::TempDir;

namespace {

std::vector<Event> repo_events(const std::string& repo, std::size_t n,
                               bool with_create, UnixSeconds start,
                               std::vector<std::string> actors = {"a"}) {
  std::vector<Event> ev;
  for (std::size_t i = 0; i < n; ++i) {
    auto type = (i == 0 && with_create) ? EventType::Create : EventType::Push;
    ev.push_back(make_event(actors[i % actors.size()], type, repo,
                            start + static_cast<UnixSeconds>(i) * 60));
  }
  return ev;
}

/// Minimal stub for geocoder-dependent tests.
class MapGeocoder final : public Geocoder {
 public:
  std::map<std::string, std::string> places;
  std::size_t calls = 0;
  bool broken = false;

  std::optional<GeocodeResult> geocode(std::string_view location) override {
    ++calls;
    if (broken) fail(Errc::GeocoderError, "down");
    auto it = places.find(std::string(location));
    if (it == places.end()) return std::nullopt;
    return GeocodeResult{0.0, 0.0, CountryLabel(it->second)};
  }
};

}  // namespace

TEST(Archive, ParsesFlatAndArchiveShapes) {
  const std::string text =
      R"({"actor":"u1","type":"PushEvent","repo":"o/r","created_at":"2018-01-01T00:00:00Z","text":"fix"})"
      "\n\n"
      R"({"actor":{"login":"u2"},"type":"CreateEvent","repo":{"name":"o/r"},"created_at":"2018-01-02T00:00:00Z","payload":{"description":"a tool"}})"
      "\n"
      R"({"actor":"u3","type":"PushEvent","repo":"o/r","created_at":"2018-01-03T00:00:00Z","payload":{"commits":[{"message":"one"},{"message":"two"}]}})"
      "\n"
      "not json at all\n"
      R"({"actor":"u4","type":"SponsorshipEvent","repo":"o/r","created_at":"2018-01-03T00:00:00Z"})"
      "\n"
      R"({"actor":"u5","type":"Watch","repo":"o/r","created_at":"bad"})"
      "\n";
  auto parsed = parse_archive_text(text);
  EXPECT_EQ(parsed.report.lines_read, 6u);
  EXPECT_EQ(parsed.report.events_kept, 3u);
  EXPECT_EQ(parsed.report.lines_skipped, 3u);
  ASSERT_EQ(parsed.events.size(), 3u);
  EXPECT_EQ(parsed.events[0].text, "fix");
  EXPECT_EQ(parsed.events[1].actor, "u2");
  EXPECT_EQ(parsed.events[1].repo, "o/r");
  EXPECT_EQ(parsed.events[1].type, EventType::Create);
  EXPECT_EQ(parsed.events[1].text, "a tool");
  EXPECT_EQ(parsed.events[2].text, "one\ntwo");
}

TEST(Archive, FormatLineRoundTrips) {
  auto e = make_event("actor", EventType::ReviewComment, "o/r", at("2019-05-05T10:00:00Z"),
                      "quote \" and newline\n");
  auto parsed = parse_archive_text(format_event_line(e) + "\n");
  ASSERT_EQ(parsed.events.size(), 1u);
  EXPECT_EQ(parsed.events[0], e);
}

TEST(Archive, ReadsGzipAndPlainFiles) {
  TempDir dir;
  std::string lines;
  for (int i = 0; i < 10; ++i) {
    lines += format_event_line(make_event("u", EventType::Push, "r", 1000 + i)) + "\n";
  }
  {
    gzFile f = gzopen(dir.file("a.json.gz").c_str(), "wb");
    ASSERT_NE(f, nullptr);
    gzwrite(f, lines.data(), static_cast<unsigned>(lines.size()));
    gzclose(f);
  }
  write_file(dir.file("b.json"), lines);
  auto gz = parse_archive_file(dir.file("a.json.gz"));
  EXPECT_EQ(gz.events.size(), 10u);
  auto files = expand_glob(dir.file("*.json*"));
  ASSERT_EQ(files.size(), 2u);
  auto both = parse_archive_files(files, 2);
  EXPECT_EQ(both.events.size(), 20u);
  EXPECT_EQ(both.report.lines_skipped, 0u);
  EXPECT_THROW(parse_archive_file(dir.file("missing.json")), Error);
}

TEST(Curation, AppliesThresholdCreateAndWindow) {
  std::vector<Event> all;
  auto add = [&](std::vector<Event> ev) { all.insert(all.end(), ev.begin(), ev.end()); };
  add(repo_events("keep", 50, true, at("2018-01-01")));
  add(repo_events("short", 49, true, at("2018-01-01")));
  add(repo_events("nocreate", 60, false, at("2018-01-01")));
  // 50 events, but ten of them fall after the window end
  add(repo_events("late", 50, true, at("2020-06-30T23:50:00Z")));

  CurationReport report;
  auto kept = curate(all, CurationConfig{}, &report);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].repo_id, "keep");
  EXPECT_EQ(report.repos_seen, 4u);
  EXPECT_EQ(report.repos_kept, 1u);
  EXPECT_EQ(report.dropped_no_create, 1u);
  EXPECT_EQ(report.dropped_too_few_events, 2u);
  EXPECT_EQ(report.events_outside_window, 40u);

  CurationConfig relaxed;
  relaxed.require_create = false;
  auto kept2 = curate(all, relaxed);
  ASSERT_EQ(kept2.size(), 2u);
  EXPECT_EQ(kept2[0].repo_id, "keep");
  EXPECT_EQ(kept2[1].repo_id, "nocreate");
}

TEST(Curation, KeptReposSatisfyInvariants) {
  std::vector<Event> all;
  for (int r = 0; r < 20; ++r) {
    auto ev = repo_events("r" + std::to_string(r), 40 + r * 3, r % 3 != 0,
                          at("2016-12-01") + r * 86400 * 30);
    all.insert(all.end(), ev.begin(), ev.end());
  }
  CurationConfig cfg;
  for (const auto& rec : curate(all, cfg)) {
    EXPECT_GE(rec.event_count(), cfg.min_events);
    bool has_create = false;
    for (std::size_t i = 0; i < rec.events.size(); ++i) {
      EXPECT_TRUE(cfg.window.contains(rec.events[i].timestamp));
      if (i) EXPECT_LE(rec.events[i - 1].timestamp, rec.events[i].timestamp);
      has_create |= rec.events[i].type == EventType::Create;
    }
    EXPECT_TRUE(has_create);
  }
}

TEST(Curation, CountryRequiresStrictMajorityOfAllContributors) {
  auto rec = RepoRecord::from_events(
      "r", repo_events("r", 4, true, 0, {"u1", "u2", "u3", "u4"}));
  CurationConfig cfg;
  UserCountries users = {{"u1", CountryLabel("US")},
                         {"u2", CountryLabel("US")},
                         {"u3", CountryLabel("CN")},
                         {"u4", std::nullopt}};
  // 2 of 4 is not a strict majority
  EXPECT_FALSE(assign_repo_country(rec, users, cfg));
  users["u4"] = CountryLabel("US");
  ASSERT_TRUE(assign_repo_country(rec, users, cfg));
  EXPECT_EQ(assign_repo_country(rec, users, cfg)->code(), "US");
  // an actor missing from the map still counts in the denominator
  users.erase("u4");
  EXPECT_FALSE(assign_repo_country(rec, users, cfg));

  auto watch_only = RepoRecord::from_events(
      "w", {make_event("x", EventType::Watch, "w", 0)});
  EXPECT_THROW(assign_repo_country(watch_only, users, cfg), Error);
}

TEST(Geocoder, NormalizesLocations) {
  EXPECT_EQ(normalize_location("  San   Francisco,\tCA "), "san francisco, ca");
  EXPECT_EQ(normalize_location(""), "");
}

TEST(Geocoder, GazetteerLookup) {
  auto g = GazetteerGeocoder::parse("beijing\tCN\t39.9\t116.4\nboston, ma\tUS\n");
  EXPECT_EQ(g.size(), 2u);
  auto hit = g.geocode("beijing");
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->country.code(), "CN");
  EXPECT_DOUBLE_EQ(hit->latitude, 39.9);
  EXPECT_TRUE(g.geocode("boston, ma"));
  EXPECT_FALSE(g.geocode("atlantis"));
}

TEST(Geocoder, CacheRoundTripsIncludingNegatives) {
  TempDir dir;
  GeocodeCache cache;
  cache.store("paris", CountryLabel("FR"));
  cache.store("nowhere", std::nullopt);
  cache.save(dir.file("cache.tsv"));
  auto back = GeocodeCache::load(dir.file("cache.tsv"));
  EXPECT_EQ(back.size(), 2u);
  ASSERT_TRUE(back.lookup("paris"));
  EXPECT_EQ((*back.lookup("paris"))->code(), "FR");
  ASSERT_TRUE(back.lookup("nowhere"));
  EXPECT_FALSE(*back.lookup("nowhere"));
  EXPECT_FALSE(back.lookup("rome"));
  EXPECT_EQ(GeocodeCache::load(dir.file("missing.tsv")).size(), 0u);
}

TEST(Geocoder, ResolverIsCacheFirstAndCountsFailures) {
  MapGeocoder geo;
  geo.places["shanghai"] = "CN";
  GeocodeCache cache;
  LocationResolver resolver(geo, cache);
  EXPECT_EQ(resolver.resolve(" Shanghai ")->code(), "CN");
  EXPECT_EQ(resolver.resolve("shanghai")->code(), "CN");
  EXPECT_FALSE(resolver.resolve("mars"));
  EXPECT_FALSE(resolver.resolve("mars"));
  EXPECT_FALSE(resolver.resolve(""));
  EXPECT_EQ(geo.calls, 2u);
  geo.broken = true;
  EXPECT_FALSE(resolve_country("london", resolver));
  auto rep = resolver.report();
  EXPECT_EQ(rep.lookups, 6u);
  EXPECT_EQ(rep.cache_hits, 2u);
  EXPECT_EQ(rep.geocoder_queries, 3u);
  EXPECT_EQ(rep.geocoder_failures, 1u);
  EXPECT_EQ(rep.unresolved, 4u);
  // failed lookups are retried later rather than cached
  EXPECT_FALSE(cache.lookup("london"));
}

TEST(Nominatim, QueriesLocalServer) {
  httplib::Server server;
  std::string seen_query;
  server.Get("/nominatim/search", [&](const httplib::Request& req, httplib::Response& res) {
    seen_query = req.get_param_value("q");
    if (seen_query == "boom") {
      res.status = 503;
      return;
    }
    if (seen_query == "beijing, china") {
      res.set_content(
          R"([{"lat":"39.9","lon":"116.39","address":{"country_code":"cn"}}])",
          "application/json");
    } else {
      res.set_content("[]", "application/json");
    }
    EXPECT_EQ(req.get_param_value("format"), "json");
    EXPECT_EQ(req.get_param_value("limit"), "1");
    EXPECT_EQ(req.get_param_value("addressdetails"), "1");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  NominatimGeocoder geo("http://127.0.0.1:" + std::to_string(port) + "/nominatim/", 5);
  EXPECT_EQ(geo.request_target("beijing, china"),
            "/nominatim/search?q=beijing%2C%20china&format=json&limit=1&addressdetails=1");
  auto hit = geo.geocode("beijing, china");
  ASSERT_TRUE(hit);
  EXPECT_EQ(seen_query, "beijing, china");
  EXPECT_EQ(hit->country.code(), "CN");
  EXPECT_NEAR(hit->latitude, 39.9, 1e-12);
  EXPECT_FALSE(geo.geocode("atlantis"));
  try {
    geo.geocode("boom");
    ADD_FAILURE() << "expected GeocoderError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::GeocoderError);
  }
  server.stop();
  worker.join();
}

TEST(Nominatim, UnreachableServerIsGeocoderError) {
  NominatimGeocoder geo("http://127.0.0.1:1", 1);
  try {
    geo.geocode("anywhere");
    ADD_FAILURE() << "expected GeocoderError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::GeocoderError);
  }
  EXPECT_THROW(NominatimGeocoder("localhost:8080"), Error);
}

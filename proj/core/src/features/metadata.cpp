#include "repoprint/features/metadata.hpp"

#include <algorithm>
#include <charconv>

#include "repoprint/core/binary_io.hpp"
#include "repoprint/core/csv.hpp"
#include "repoprint/core/error.hpp"

namespace repoprint::features {
namespace {

std::uint64_t parse_count(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(Errc::ParseError, "bad " + what + " count '" + s + "'");
  }
  return v;
}

}  // namespace

MetadataSidecar parse_metadata(std::string_view csv_text) {
  const auto table = csv::Table::parse(csv_text);
  MetadataSidecar out;
  if (table.header().empty()) return out;
  const auto id = table.column("repo_id");
  const auto stars = table.column("stars");
  const auto forks = table.column("forks");
  const auto issues = table.column("open_issues");
  const auto desc = table.column("description");
  for (const auto& row : table.rows()) {
    out.insert_or_assign(row[id],
                         RepoMetadata{parse_count(row[stars], "stars"),
                                      parse_count(row[forks], "forks"),
                                      parse_count(row[issues], "open_issues"),
                                      row[desc]});
  }
  return out;
}

MetadataSidecar load_metadata(const std::string& path) {
  return parse_metadata(read_file(path));
}

std::string format_metadata(const MetadataSidecar& sidecar) {
  std::string out = csv::format_row({"repo_id", "stars", "forks", "open_issues",
                                     "description"});
  for (const auto& [id, m] : sidecar) {
    out += csv::format_row({id, std::to_string(m.stars), std::to_string(m.forks),
                            std::to_string(m.open_issues), m.description});
  }
  return out;
}

MetadataReport apply_metadata(std::vector<RepoRecord>& records,
                              const MetadataSidecar* sidecar) {
  MetadataReport report;
  for (RepoRecord& r : records) {
    if (sidecar) {
      if (auto it = sidecar->find(r.repo_id); it != sidecar->end()) {
        r.stars = it->second.stars;
        r.forks = it->second.forks;
        r.open_issues = it->second.open_issues;
        if (!it->second.description.empty()) r.description = it->second.description;
        ++report.from_sidecar;
        continue;
      }
    }
    auto count = [&](EventType t) {
      return static_cast<std::uint64_t>(
          std::count_if(r.events.begin(), r.events.end(),
                        [t](const Event& e) { return e.type == t; }));
    };
    r.stars = count(EventType::Watch);
    r.forks = count(EventType::Fork);
    r.open_issues = 0;
    ++report.derived;
  }
  return report;
}

}  // namespace repoprint::features

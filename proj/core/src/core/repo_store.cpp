#include "repoprint/core/repo_store.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "repoprint/core/binary_io.hpp"

namespace repoprint {
namespace {

constexpr std::string_view kMagic = "RPRB";

void encode_record(ByteWriter& w, const RepoRecord& r) {
  w.str(r.repo_id);
  w.str(r.country ? r.country->code() : std::string());
  w.u64(r.stars);
  w.u64(r.forks);
  w.u64(r.open_issues);
  w.str(r.description);
  w.u64(r.events.size());
  for (const Event& e : r.events) {
    w.str(e.actor);
    w.u8(static_cast<std::uint8_t>(e.type));
    w.i64(e.timestamp);
    w.str(e.text);
  }
}

RepoRecord decode_record(ByteReader& in) {
  std::string repo_id = in.str();
  std::string country = in.str();
  const auto stars = in.u64();
  const auto forks = in.u64();
  const auto open_issues = in.u64();
  std::string description = in.str();
  const auto n = in.u64();
  std::vector<Event> events;
  events.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1 << 20)));
  for (std::uint64_t i = 0; i < n; ++i) {
    Event e;
    e.actor = in.str();
    const auto t = in.u8();
    if (t >= kEventTypeCount) fail(Errc::ParseError, "bad event type byte");
    e.type = event_type_at(t);
    e.repo = repo_id;
    e.timestamp = in.i64();
    e.text = in.str();
    events.push_back(std::move(e));
  }
  RepoRecord r = RepoRecord::from_events(std::move(repo_id), std::move(events));
  if (!country.empty()) r.country = CountryLabel(country);
  r.stars = stars;
  r.forks = forks;
  r.open_issues = open_issues;
  r.description = std::move(description);
  return r;
}

}  // namespace

std::string encode_repos(const std::vector<RepoRecord>& records) {
  ByteWriter w;
  w.raw(kMagic);
  w.u32(kRepoStoreVersion);
  w.u64(records.size());
  for (const RepoRecord& r : records) {
    ByteWriter body;
    encode_record(body, r);
    w.u64(body.bytes().size());
    w.raw(body.bytes());
  }
  return w.take();
}

std::vector<RepoRecord> decode_repos(std::string_view bytes) {
  ByteReader in(bytes, Errc::ParseError);
  if (in.take(kMagic.size()) != kMagic) {
    fail(Errc::ParseError, "not a repos.bin file (bad magic)");
  }
  const auto version = in.u32();
  if (version != kRepoStoreVersion) {
    fail(Errc::VersionMismatch,
         "repos.bin version " + std::to_string(version) + " is not supported");
  }
  const auto count = in.u64();
  std::vector<RepoRecord> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto len = in.u64();
    ByteReader body(in.take(static_cast<std::size_t>(len)), Errc::ParseError);
    out.push_back(decode_record(body));
    if (body.remaining() != 0) fail(Errc::ParseError, "trailing record bytes");
  }
  return out;
}

void save_repos(const std::string& path,
                const std::vector<RepoRecord>& records) {
  write_file(path, encode_repos(records));
}

std::vector<RepoRecord> load_repos(const std::string& path) {
  return decode_repos(read_file(path));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(Errc::IoError, "read failed on '" + path + "'");
  return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::IoError, "cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(Errc::IoError, "write failed on '" + path + "'");
}

}  // namespace repoprint

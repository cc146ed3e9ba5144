#include "repoprint/ingest/archive.hpp"

#include <zlib.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "repoprint/core/binary_io.hpp"
#include "repoprint/core/error.hpp"
#include "repoprint/core/parallel.hpp"

namespace repoprint::ingest {
namespace {

using nlohmann::json;

std::string string_or_field(const json& j, const char* field) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object()) {
    auto it = j.find(field);
    if (it != j.end() && it->is_string()) return it->get<std::string>();
  }
  return {};
}

std::string payload_text(const json& obj, EventType type) {
  if (auto it = obj.find("text"); it != obj.end() && it->is_string()) {
    return it->get<std::string>();
  }
  auto p = obj.find("payload");
  if (p == obj.end() || !p->is_object()) return {};
  switch (type) {
    case EventType::Push: {
      auto commits = p->find("commits");
      if (commits == p->end() || !commits->is_array()) return {};
      std::string out;
      for (const auto& c : *commits) {
        auto m = c.find("message");
        if (m == c.end() || !m->is_string()) continue;
        if (!out.empty()) out += '\n';
        out += m->get<std::string>();
      }
      return out;
    }
    case EventType::CommitComment: {
      auto comment = p->find("comment");
      if (comment == p->end() || !comment->is_object()) return {};
      return string_or_field(comment->value("body", json()), "");
    }
    case EventType::Create:
      return string_or_field(p->value("description", json()), "");
    default:
      return {};
  }
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r';
  });
}

std::optional<Event> parse_line(std::string_view line) {
  json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (!obj.is_object()) return std::nullopt;
  auto type_it = obj.find("type");
  auto time_it = obj.find("created_at");
  if (type_it == obj.end() || !type_it->is_string() || time_it == obj.end() ||
      !time_it->is_string()) {
    return std::nullopt;
  }
  Event e;
  try {
    e.type = parse_event_type(type_it->get<std::string>());
  } catch (const Error&) {
    return std::nullopt;
  }
  auto ts = parse_utc(time_it->get<std::string>());
  if (!ts) return std::nullopt;
  e.timestamp = *ts;
  e.actor = string_or_field(obj.value("actor", json()), "login");
  e.repo = string_or_field(obj.value("repo", json()), "name");
  if (e.actor.empty() || e.repo.empty()) return std::nullopt;
  e.text = payload_text(obj, e.type);
  return e;
}

std::string gunzip_file(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) fail(Errc::IoError, "cannot open '" + path + "'");
  std::string out;
  char buf[1 << 16];
  int n = 0;
  while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, n);
  int err = 0;
  const char* msg = gzerror(f, &err);
  const bool failed = n < 0 || (err != Z_OK && err != Z_STREAM_END);
  const std::string detail = failed && msg ? msg : "";
  gzclose(f);
  if (failed) fail(Errc::IoError, "gzip read failed on '" + path + "': " + detail);
  return out;
}

bool glob_match(std::string_view pat, std::string_view s) {
  std::size_t p = 0, i = 0, star = std::string_view::npos, mark = 0;
  while (i < s.size()) {
    if (p < pat.size() && (pat[p] == '?' || pat[p] == s[i])) {
      ++p;
      ++i;
    } else if (p < pat.size() && pat[p] == '*') {
      star = p++;
      mark = i;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      i = ++mark;
    } else {
      return false;
    }
  }
  while (p < pat.size() && pat[p] == '*') ++p;
  return p == pat.size();
}

}  // namespace

ParsedArchive parse_archive_text(std::string_view text) {
  ParsedArchive out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (is_blank(line)) continue;
    ++out.report.lines_read;
    if (auto e = parse_line(line)) {
      out.events.push_back(std::move(*e));
      ++out.report.events_kept;
    } else {
      ++out.report.lines_skipped;
    }
  }
  return out;
}

ParsedArchive parse_archive(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(Errc::IoError, "archive stream is unreadable");
  return parse_archive_text(ss.str());
}

ParsedArchive parse_archive_file(const std::string& path) {
  if (path.size() > 3 && path.ends_with(".gz")) {
    return parse_archive_text(gunzip_file(path));
  }
  return parse_archive_text(read_file(path));
}

ParsedArchive parse_archive_files(const std::vector<std::string>& paths,
                                  unsigned threads) {
  std::vector<ParsedArchive> parts(paths.size());
  parallel_for(paths.size(), threads,
               [&](std::size_t i) { parts[i] = parse_archive_file(paths[i]); });
  ParsedArchive out;
  for (auto& p : parts) {
    out.report += p.report;
    out.events.insert(out.events.end(),
                      std::make_move_iterator(p.events.begin()),
                      std::make_move_iterator(p.events.end()));
  }
  return out;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  namespace fs = std::filesystem;
  if (pattern.find_first_of("*?") == std::string::npos) return {pattern};
  const fs::path p(pattern);
  const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  const std::string name = p.filename().string();
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() &&
        glob_match(name, entry.path().filename().string())) {
      out.push_back(entry.path().string());
    }
  }
  if (ec) fail(Errc::IoError, "cannot list '" + dir.string() + "'");
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_event_line(const Event& e) {
  json j;
  j["actor"] = e.actor;
  j["type"] = std::string(to_archive_name(e.type));
  j["repo"] = e.repo;
  j["created_at"] = format_utc(e.timestamp);
  if (!e.text.empty()) j["text"] = e.text;
  return j.dump();
}

}  // namespace repoprint::ingest

#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "repoprint/core/event.hpp"

namespace repoprint::ingest {

/// Counts for one parse. Blank lines are ignored entirely.
struct ParseReport {
  std::size_t lines_read = 0;
  std::size_t events_kept = 0;
  std::size_t lines_skipped = 0;

  ParseReport& operator+=(const ParseReport& o) {
    lines_read += o.lines_read;
    events_kept += o.events_kept;
    lines_skipped += o.lines_skipped;
    return *this;
  }
  friend bool operator==(const ParseReport&, const ParseReport&) = default;
};

struct ParsedArchive {
  std::vector<Event> events;
  ParseReport report;
};

/// Parses newline-delimited JSON events:
///
///   {"actor":"u1","type":"PushEvent","repo":"r1","created_at":"2018-01-01T00:00:00Z"}
///
/// `actor` and `repo` may also be GH Archive objects ({"login":..} and
/// {"name":..}). Optional payload text is taken from a top-level "text"
/// field, or from the archive payload (Push commit messages, CommitComment
/// body, Create description). Malformed lines and unknown event types are
/// skipped and counted; they never abort the parse.
ParsedArchive parse_archive(std::istream& in);
ParsedArchive parse_archive_text(std::string_view text);

/// Reads one archive file; names ending in ".gz" are gunzipped.
/// Throws Error(IoError) when the file cannot be read.
ParsedArchive parse_archive_file(const std::string& path);

/// Parses several files (possibly concurrently) and concatenates the events
/// in the order of `paths`.
ParsedArchive parse_archive_files(const std::vector<std::string>& paths,
                                  unsigned threads = 0);

/// Expands a simple glob ('*' and '?' in the final path component) into a
/// sorted list of existing files. A pattern without wildcards is returned
/// as-is.
std::vector<std::string> expand_glob(const std::string& pattern);

/// The canonical single-line encoding of an event (no trailing newline).
std::string format_event_line(const Event& e);

}  // namespace repoprint::ingest

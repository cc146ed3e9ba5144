#include "repoprint/seqembed/checkpoint.hpp"

#include <zlib.h>

#include "repoprint/core/binary_io.hpp"
#include "repoprint/core/error.hpp"

namespace repoprint::seqembed {
namespace {

constexpr std::string_view kMagic = "VRAE";
constexpr std::uint32_t kFlagIncludeWatch = 1u;

std::uint32_t crc_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()),
              static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::string serialize_model(const VraeModel& m) {
  ByteWriter w;
  w.raw(kMagic);
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(m.config.latent_dim));
  w.u32(static_cast<std::uint32_t>(m.config.hidden_size));
  w.u32(static_cast<std::uint32_t>(m.config.max_seq_len));
  w.u32(m.config.include_watch ? kFlagIncludeWatch : 0u);
  std::uint32_t count = 0;
  m.params.for_each([&](const std::string&, const Tensor&) { ++count; });
  w.u32(count);
  m.params.for_each([&](const std::string&, const Tensor& t) {
    w.u32(static_cast<std::uint32_t>(t.rows));
    w.u32(static_cast<std::uint32_t>(t.cols));
    for (double v : t.data) w.f64(v);
  });
  w.u32(crc_of(w.bytes()));
  return w.take();
}

VraeModel deserialize_model(std::string_view bytes) {
  ByteReader r(bytes, Errc::CorruptCheckpoint);
  if (r.take(kMagic.size()) != kMagic) {
    fail(Errc::CorruptCheckpoint, "not a model checkpoint (bad magic)");
  }
  const auto version = r.u32();
  if (version != kCheckpointVersion) {
    fail(Errc::VersionMismatch, "checkpoint version " + std::to_string(version) +
                                    " is not supported (expected " +
                                    std::to_string(kCheckpointVersion) + ")");
  }
  if (bytes.size() < 4 + r.position()) {
    fail(Errc::CorruptCheckpoint, "checkpoint truncated");
  }
  const std::string_view body = bytes.substr(0, bytes.size() - 4);
  ByteReader tail(bytes.substr(bytes.size() - 4), Errc::CorruptCheckpoint);
  if (crc_of(body) != tail.u32()) {
    fail(Errc::CorruptCheckpoint, "checkpoint checksum mismatch");
  }
  ByteReader br(body.substr(r.position()), Errc::CorruptCheckpoint);
  VraeConfig cfg;
  cfg.latent_dim = br.u32();
  cfg.hidden_size = br.u32();
  cfg.max_seq_len = br.u32();
  cfg.include_watch = (br.u32() & kFlagIncludeWatch) != 0;
  if (cfg.latent_dim == 0 || cfg.hidden_size == 0 || cfg.max_seq_len == 0) {
    fail(Errc::CorruptCheckpoint, "checkpoint has an empty configuration");
  }
  VraeModel m = VraeModel::zeros(cfg);
  std::uint32_t expected = 0;
  m.params.for_each([&](const std::string&, const Tensor&) { ++expected; });
  if (br.u32() != expected) {
    fail(Errc::CorruptCheckpoint, "checkpoint tensor count mismatch");
  }
  m.params.for_each([&](const std::string& name, Tensor& t) {
    const auto rows = br.u32();
    const auto cols = br.u32();
    if (rows != t.rows || cols != t.cols) {
      fail(Errc::CorruptCheckpoint, "tensor " + name + " has the wrong shape");
    }
    for (double& v : t.data) v = br.f64();
  });
  if (br.remaining() != 0) {
    fail(Errc::CorruptCheckpoint, "trailing bytes in checkpoint");
  }
  return m;
}

void save_model(const VraeModel& m, const std::string& path) {
  write_file(path, serialize_model(m));
}

VraeModel load_model(const std::string& path) {
  return deserialize_model(read_file(path));
}

}  // namespace repoprint::seqembed

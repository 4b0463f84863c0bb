#include "genlift/cache.hpp"

#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <system_error>

#include "genlift/error.hpp"

#ifndef GENLIFT_VERSION
#define GENLIFT_VERSION "0.0.0"
#endif

namespace genlift {

namespace {

constexpr std::array<char, 4> kMagic{'G', 'L', 'O', 'C'};
constexpr std::uint32_t kFormat = 1;

const char* action_name(OrbitAction a) {
  switch (a) {
    case OrbitAction::kNielsen: return "nielsen";
    case OrbitAction::kAutomorphism: return "aut";
    case OrbitAction::kJoint: return "joint";
  }
  return "unknown";
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '.' || c == '-';
    out += keep ? c : '_';
  }
  return out;
}

template <class T>
void put(std::string& buf, T v) {
  static_assert(std::is_integral_v<T>);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf += static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
  }
}

void put_string(std::string& buf, std::string_view s) {
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(s.size()));
  buf.append(s);
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  template <class T>
  std::optional<T> get() {
    std::array<unsigned char, sizeof(T)> raw{};
    if (!in_.read(reinterpret_cast<char*>(raw.data()), raw.size())) return std::nullopt;
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{raw[i]} << (8 * i);
    return static_cast<T>(v);
  }

  std::optional<std::string> get_string() {
    const auto len = get<std::uint32_t>();
    if (!len || *len > 4096) return std::nullopt;
    std::string s(*len, '\0');
    if (!in_.read(s.data(), *len)) return std::nullopt;
    return s;
  }

  bool read_bytes(void* dst, std::size_t n) {
    return static_cast<bool>(in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n)));
  }

 private:
  std::istream& in_;
};

bool little_endian() {
  const std::uint16_t probe = 1;
  unsigned char first;
  std::memcpy(&first, &probe, 1);
  return first == 1;
}

}  // namespace

std::string_view tool_version() noexcept { return GENLIFT_VERSION; }

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("GENLIFT_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return std::filesystem::path(xdg) / "genlift";
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "genlift";
  }
  return ".genlift-cache";
}

std::filesystem::path OrbitCache::path_for(const FiniteGroup& host, OrbitAction action,
                                           bool restricted) const {
  return dir_ / (sanitize(host.name()) + "-" + action_name(action) +
                 (restricted ? "-gen" : "-all") + "-v" + std::string(tool_version()) + ".bin");
}

std::optional<OrbitDecomposition> OrbitCache::load(std::shared_ptr<const FiniteGroup> host,
                                                   OrbitAction action, bool restricted) const {
  std::ifstream in(path_for(*host, action, restricted), std::ios::binary);
  if (!in) return std::nullopt;
  Reader r(in);

  std::array<char, 4> magic{};
  if (!r.read_bytes(magic.data(), magic.size()) || magic != kMagic) return std::nullopt;
  if (r.get<std::uint32_t>() != kFormat) return std::nullopt;
  if (r.get_string() != std::string(tool_version())) return std::nullopt;
  if (r.get_string() != host->name()) return std::nullopt;
  if (r.get<std::uint64_t>() != host->q().value_or(0)) return std::nullopt;
  if (r.get<std::uint8_t>() != static_cast<std::uint8_t>(restricted)) return std::nullopt;
  if (r.get<std::uint8_t>() != static_cast<std::uint8_t>(action)) return std::nullopt;
  const std::uint64_t n = host->order();
  if (r.get<std::uint64_t>() != n) return std::nullopt;
  const auto count = r.get<std::uint32_t>();
  if (!count || *count > n * n) return std::nullopt;

  std::vector<std::uint8_t> generating(*count);
  if (!r.read_bytes(generating.data(), generating.size())) return std::nullopt;
  std::vector<std::uint32_t> labels(n * n);
  if (little_endian()) {
    if (!r.read_bytes(labels.data(), labels.size() * sizeof(std::uint32_t))) return std::nullopt;
  } else {
    for (auto& l : labels) {
      const auto v = r.get<std::uint32_t>();
      if (!v) return std::nullopt;
      l = *v;
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) return std::nullopt;
  for (std::uint32_t l : labels) {
    if (l != OrbitDecomposition::kNoOrbit && l >= *count) return std::nullopt;
  }
  try {
    return OrbitDecomposition(std::move(host), action, restricted, std::move(labels),
                              std::move(generating));
  } catch (const InternalError&) {
    return std::nullopt;
  }
}

bool OrbitCache::store(const OrbitDecomposition& d) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return false;

  const FiniteGroup& host = d.host();
  std::string header;
  header.append(kMagic.data(), kMagic.size());
  put<std::uint32_t>(header, kFormat);
  put_string(header, tool_version());
  put_string(header, host.name());
  put<std::uint64_t>(header, host.q().value_or(0));
  put<std::uint8_t>(header, d.restricted() ? 1 : 0);
  put<std::uint8_t>(header, static_cast<std::uint8_t>(d.action()));
  put<std::uint64_t>(header, host.order());
  put<std::uint32_t>(header, static_cast<std::uint32_t>(d.orbits().size()));
  for (const OrbitRecord& r : d.orbits()) header += static_cast<char>(r.is_generating ? 1 : 0);

  const auto target = path_for(host, d.action(), d.restricted());
  std::random_device rd;
  auto tmp = target;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    const auto labels = d.pair_to_orbit();
    if (little_endian()) {
      out.write(reinterpret_cast<const char*>(labels.data()),
                static_cast<std::streamsize>(labels.size() * sizeof(std::uint32_t)));
    } else {
      std::string buf;
      for (std::uint32_t l : labels) put<std::uint32_t>(buf, l);
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    if (!out.flush()) {
      out.close();
      std::filesystem::remove(tmp, ec);
      return false;
    }
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    return false;
  }
  return true;
}

}  // namespace genlift

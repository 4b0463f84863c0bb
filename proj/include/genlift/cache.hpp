#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "genlift/nielsen.hpp"

namespace genlift {

std::string_view tool_version() noexcept;

/// GENLIFT_CACHE_DIR if set, else $XDG_CACHE_HOME/genlift, else
/// $HOME/.cache/genlift, else ./.genlift-cache.
std::filesystem::path default_cache_dir();

/// On-disk store of orbit labellings, keyed by tool version, group name, q,
/// action and the restrict flag. A file written by another tool version, or
/// one that fails any header or size check, is treated as absent.
///
/// Layout (little-endian): magic "GLOC", u32 format, tool version, group
/// name, u64 q, u8 restricted, u8 action, u64 |G|, u32 orbit count, one
/// byte per orbit (generating flag), then |G|^2 u32 orbit labels.
class OrbitCache {
 public:
  explicit OrbitCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path path_for(const FiniteGroup& host, OrbitAction action,
                                 bool restricted) const;

  std::optional<OrbitDecomposition> load(std::shared_ptr<const FiniteGroup> host,
                                         OrbitAction action, bool restricted) const;
  /// Writes to a temporary file and renames it into place. Returns false if
  /// the cache directory is not writable; the cache is an optimisation only.
  bool store(const OrbitDecomposition& d) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace genlift

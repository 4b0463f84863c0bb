#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "genlift/cache.hpp"
#include "genlift/group.hpp"
#include "genlift/nielsen.hpp"

namespace genlift {

struct Config {
  /// No disk cache when empty.
  std::optional<std::filesystem::path> cache_dir;
  std::uint64_t pair_budget = DecomposeOptions{}.pair_budget;
  unsigned threads = 1;
};

/// Outcome of one claim driver. A failed report always carries the
/// offending witness or the mismatching sets in `evidence`.
struct ClaimReport {
  std::string claim_id;
  nlohmann::json parameters = nlohmann::json::object();
  bool passed = false;
  nlohmann::json evidence = nlohmann::json::object();
  double elapsed_ms = 0;
  /// Some orbit decomposition used by the driver came from the disk cache.
  bool cache_hit = false;
};

inline constexpr const char* kClaimSchema = "genlift.claim/1";

/// {schema, claim_id, parameters, passed, evidence, elapsed_ms,
///  tool_version, cache_hit}
nlohmann::json to_json(const ClaimReport& r);

/// Groups and Nielsen decompositions shared between drivers. Safe to use
/// from several threads; everything handed out is immutable.
class Workspace {
 public:
  explicit Workspace(Config cfg = {});

  const Config& config() const noexcept { return cfg_; }

  std::shared_ptr<const FiniteGroup> psl2(std::uint64_t q);
  std::shared_ptr<const FiniteGroup> sl2(std::uint64_t q);
  /// Full decomposition of PSL(2,q) x PSL(2,q); memoized and, with a cache
  /// directory configured, persisted. Checks the pair budget before building
  /// anything.
  std::shared_ptr<const OrbitDecomposition> nielsen_psl2(std::uint64_t q);
  /// Uncached decomposition of an arbitrary host.
  OrbitDecomposition nielsen(std::shared_ptr<const FiniteGroup> g) const;

 private:
  Config cfg_;
  std::mutex mu_;
  std::map<std::uint64_t, std::shared_ptr<const FiniteGroup>> psl_, sl_;
  struct Entry {
    std::shared_ptr<const OrbitDecomposition> d;
    bool from_disk = false;
  };
  std::map<std::uint64_t, Entry> nielsen_;
};

enum class TheoremCase { kI, kII, kIII, kIV };

/// Parses "i", "ii", "iii", "iv".
std::optional<TheoremCase> parse_theorem_case(std::string_view s);

/// The published table of trace spectra of PSL(2,q), as field elements.
std::vector<FieldElement> expected_trace_spectrum(const Field& f);

ClaimReport verify_trace_table(Workspace& ws, std::uint64_t q);
ClaimReport verify_prop_key(Workspace& ws, std::uint64_t q);
ClaimReport verify_lemma5(Workspace& ws);
ClaimReport verify_lemma7(Workspace& ws);
ClaimReport verify_theorem(Workspace& ws, TheoremCase c, std::uint64_t q,
                           std::optional<std::uint64_t> m = std::nullopt);
ClaimReport verify_s2p2(Workspace& ws, std::uint64_t q);
ClaimReport verify_psl25_lift(Workspace& ws);
/// Trace invariants over the (2,m)-generating pairs of PSL(2,q).
ClaimReport verify_remark(Workspace& ws, std::uint64_t m, std::uint64_t q);
ClaimReport verify_miller_332(Workspace& ws);
ClaimReport verify_dihedral(Workspace& ws, std::uint64_t m);
ClaimReport verify_example_alt5(Workspace& ws);
ClaimReport verify_small_q_lifting(Workspace& ws);
/// Every claim at its reference parameters with q <= max_q.
ClaimReport verify_all(Workspace& ws, std::uint64_t max_q = 13);

struct ClaimArgs {
  std::optional<std::uint64_t> q;
  std::optional<std::uint64_t> m;
  std::optional<std::uint64_t> max_q;
};

/// The claim ids accepted by run_claim, in documentation order.
const std::vector<std::string>& claim_ids();

/// Dispatches by claim id. Throws PreconditionError for an unknown id or a
/// missing parameter.
ClaimReport run_claim(Workspace& ws, std::string_view claim_id, const ClaimArgs& args);

}  // namespace genlift

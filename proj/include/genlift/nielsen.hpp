#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "genlift/field.hpp"
#include "genlift/group.hpp"

namespace genlift {

/// An ordered pair of elements of a host group.
struct PairIndex {
  Elem first = 0;
  Elem second = 0;

  friend constexpr auto operator<=>(const PairIndex&, const PairIndex&) = default;
};

/// Which permutation group on pairs an OrbitDecomposition records.
enum class OrbitAction {
  kNielsen,       // Aut(F_2) through the three elementary Nielsen moves
  kAutomorphism,  // diagonal action of Aut(PSL(2,q)) = PGammaL(2,q)
  kJoint,         // the group generated by both
};

struct OrbitRecord {
  std::uint32_t id = 0;
  std::uint64_t size = 0;
  /// Lexicographically least member.
  PairIndex rep;
  bool is_generating = false;
  /// tr [[h1, h2]] of the representative; present for PSL(2,q) hosts.
  std::optional<FieldElement> tau;
  /// Order of [h1, h2] for the representative.
  std::uint32_t commutator_order = 1;
  /// Filled by OrbitDecomposition::annotate_mn for the queried (m, n).
  std::map<std::pair<std::uint64_t, std::uint64_t>, bool> mn_free;
};

struct DecomposeOptions {
  bool restrict_to_generating = false;
  /// Maximum |G|^2 accepted.
  std::uint64_t pair_budget = 20'000'000;
  unsigned threads = 1;
};

/// A partition of G x G (or of the generating pairs only, when restricted)
/// into orbits, with per-orbit invariants.
///
/// Pairs are addressed by packed ids first * |G| + second. Orbit ids are
/// assigned in increasing order of the canonical representative, so the
/// whole structure is a deterministic function of the host group.
class OrbitDecomposition {
 public:
  static constexpr std::uint32_t kNoOrbit = UINT32_MAX;

  /// `pair_to_orbit` has |G|^2 entries with values in [0, count) or kNoOrbit,
  /// numbered by first occurrence; `generating[id]` flags each orbit.
  /// Throws InternalError if the labelling is not in canonical order.
  OrbitDecomposition(std::shared_ptr<const FiniteGroup> host,
                     OrbitAction action, bool restricted,
                     std::vector<std::uint32_t> pair_to_orbit,
                     std::vector<std::uint8_t> generating);

  const FiniteGroup& host() const noexcept { return *host_; }
  const std::shared_ptr<const FiniteGroup>& host_ptr() const noexcept { return host_; }
  OrbitAction action() const noexcept { return action_; }
  bool restricted() const noexcept { return restricted_; }

  std::span<const OrbitRecord> orbits() const noexcept { return orbits_; }
  const OrbitRecord& orbit(std::uint32_t id) const { return orbits_.at(id); }
  std::optional<std::uint32_t> orbit_of(PairIndex p) const;
  std::span<const std::uint32_t> pair_to_orbit() const noexcept { return pair_to_orbit_; }
  std::vector<std::uint32_t> generating_orbit_ids() const;
  /// |Gamma_G|, the number of generating pairs.
  std::uint64_t gamma_size() const noexcept;

  PairIndex unpack(std::uint64_t pid) const noexcept {
    const std::uint64_t n = host_->order();
    return {static_cast<Elem>(pid / n), static_cast<Elem>(pid % n)};
  }
  std::uint64_t pack(PairIndex p) const noexcept {
    return std::uint64_t{p.first} * host_->order() + p.second;
  }

  /// True iff some member (h1, h2) has |h1| = o1 and |h2| = o2.
  bool has_order_pair(std::uint32_t orbit, std::uint32_t o1, std::uint32_t o2) const;
  /// No member (h1, h2) with h1^m = h2^n = 1.
  bool is_mn_free(std::uint32_t orbit, std::uint64_t m, std::uint64_t n) const;
  void annotate_mn(std::span<const std::pair<std::uint64_t, std::uint64_t>> queries);

 private:
  std::shared_ptr<const FiniteGroup> host_;
  OrbitAction action_;
  bool restricted_;
  std::vector<std::uint32_t> pair_to_orbit_;
  std::vector<OrbitRecord> orbits_;
  // Element orders present in the host, and per-orbit bitsets over pairs
  // of them.
  std::vector<std::uint32_t> order_values_;
  std::size_t profile_words_ = 0;
  std::vector<std::uint64_t> profiles_;
};

/// (g1^-1, g2), (g1 g2^-1, g2), (g2, g1).
std::array<PairIndex, 3> nielsen_moves(const FiniteGroup& g, PairIndex p);

/// Connected components of the graph on pairs spanned by the Nielsen moves.
/// Generation is decided once per component, on its representative.
/// Throws BudgetExceeded if |G|^2 > pair_budget.
OrbitDecomposition decompose_nielsen_orbits(std::shared_ptr<const FiniteGroup> g,
                                            const DecomposeOptions& opts = {});

/// Gamma_G, in increasing pair order.
std::vector<PairIndex> enumerate_generating_pairs(std::shared_ptr<const FiniteGroup> g,
                                                  const DecomposeOptions& opts = {});

enum class InvariantCheck { kNone, kSampled, kExhaustive };

/// tau of the orbit, checked against members; throws InternalError if a
/// checked member disagrees and DomainError for a non-PSL host.
FieldElement orbit_tau(const OrbitDecomposition& d, std::uint32_t orbit,
                       InvariantCheck check = InvariantCheck::kSampled);

struct HigmanResult {
  std::uint32_t order = 1;
  bool ok = false;
};
/// Checks that every member's commutator is conjugate to [a,b] or [b,a] of
/// the representative (a,b) and that all commutators share one order.
HigmanResult higman_check(const OrbitDecomposition& d, std::uint32_t orbit,
                          const ConjugacyClasses& classes);
std::vector<HigmanResult> higman_check_all(const OrbitDecomposition& d,
                                           const ConjugacyClasses& classes);

bool orbit_is_mn_free(const OrbitDecomposition& d, std::uint32_t orbit,
                      std::uint64_t m, std::uint64_t n);
/// Least member (h1, h2) of the orbit with h1^m = h2^n = 1.
std::optional<PairIndex> find_mn_pair(const OrbitDecomposition& d,
                                      std::uint32_t orbit, std::uint64_t m,
                                      std::uint64_t n);
/// Whether the generating pair p lifts to C_m * C_n: its orbit is not
/// (m,n)-free. Throws DomainError if p does not generate.
bool lift_exists(const OrbitDecomposition& d, std::uint64_t m, std::uint64_t n,
                 PairIndex p);

/// { tau(h1,h2) : (h1,h2) generating }, sorted by code. Host must be PSL(2,q).
std::vector<FieldElement> trace_spectrum(const OrbitDecomposition& d);
std::vector<FieldElement> trace_spectrum(std::uint64_t q,
                                         const DecomposeOptions& opts = {});

/// |PGammaL(2,q)| = k q (q^2 - 1) for q = p^k.
std::uint64_t pgaml_order(std::uint64_t q);

/// Permutations of the element indices of PSL(2,q) generating its full
/// automorphism group: inner automorphisms, conjugation by diag(w, 1) for a
/// primitive w, and the entrywise Frobenius when q is not prime.
std::vector<std::vector<Elem>> psl_automorphism_generators(const FiniteGroup& psl);

/// Orbits on the generating pairs of `nielsen`'s host under PGammaL(2,q).
OrbitDecomposition aut_orbit_decomposition(const OrbitDecomposition& nielsen);
/// Orbits on the generating pairs under Nielsen moves and PGammaL(2,q)
/// together.
OrbitDecomposition joint_orbit_decomposition(const OrbitDecomposition& nielsen);

}  // namespace genlift

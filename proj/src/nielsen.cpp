#include "genlift/nielsen.hpp"

#include <algorithm>

#include "genlift/detail/parallel.hpp"
#include "genlift/error.hpp"

namespace genlift {

namespace {

constexpr std::uint32_t kNoOrbit = OrbitDecomposition::kNoOrbit;

struct Components {
  std::vector<std::uint32_t> label;
  std::vector<std::uint32_t> seed;  // least pair id of each component
};

// BFS labelling of the pair graph. Seeds are tried in increasing pair id, so
// each component's seed is its least member and components come out ordered
// by representative. `neighbors(pid, visit)` must stay inside the domain.
template <class InDomain, class Neighbors>
Components label_components(std::uint64_t total, InDomain&& in_domain,
                            Neighbors&& neighbors) {
  Components c;
  c.label.assign(total, kNoOrbit);
  std::vector<std::uint32_t> queue;
  for (std::uint64_t pid = 0; pid < total; ++pid) {
    if (c.label[pid] != kNoOrbit || !in_domain(pid)) continue;
    const auto id = static_cast<std::uint32_t>(c.seed.size());
    c.seed.push_back(static_cast<std::uint32_t>(pid));
    c.label[pid] = id;
    queue.assign(1, static_cast<std::uint32_t>(pid));
    for (std::size_t i = 0; i < queue.size(); ++i) {
      neighbors(queue[i], [&](std::uint32_t nb) {
        if (c.label[nb] == kNoOrbit) {
          c.label[nb] = id;
          queue.push_back(nb);
        }
      });
    }
  }
  return c;
}

void check_budget(const FiniteGroup& g, std::uint64_t budget) {
  const std::uint64_t n = g.order();
  if (n * n > budget || n * n > UINT32_MAX) {
    throw BudgetExceeded(g.name() + " has " + std::to_string(n * n) +
                         " pairs, above the pair budget of " +
                         std::to_string(budget));
  }
}

void require_psl(const FiniteGroup& g) {
  if (g.kind() != GroupKind::kProjectiveSpecialLinear) {
    throw DomainError(g.name() + " is not a PSL(2,q) build");
  }
}

FieldElement pair_tau(const FiniteGroup& g, Elem a, Elem b) {
  return trace(commutator(g.matrix(a), g.matrix(b)));
}

}  // namespace

OrbitDecomposition::OrbitDecomposition(std::shared_ptr<const FiniteGroup> host,
                                       OrbitAction action, bool restricted,
                                       std::vector<std::uint32_t> pair_to_orbit,
                                       std::vector<std::uint8_t> generating)
    : host_(std::move(host)),
      action_(action),
      restricted_(restricted),
      pair_to_orbit_(std::move(pair_to_orbit)) {
  const FiniteGroup& g = *host_;
  const std::size_t n = g.order();
  if (pair_to_orbit_.size() != n * n) {
    throw InternalError("pair labelling has the wrong length");
  }

  order_values_.assign(g.orders().begin(), g.orders().end());
  std::sort(order_values_.begin(), order_values_.end());
  order_values_.erase(std::unique(order_values_.begin(), order_values_.end()),
                      order_values_.end());
  std::vector<std::uint32_t> slot(n);
  for (std::size_t x = 0; x < n; ++x) {
    slot[x] = static_cast<std::uint32_t>(
        std::lower_bound(order_values_.begin(), order_values_.end(), g.element_order(x)) -
        order_values_.begin());
  }
  const std::size_t dim = order_values_.size();
  profile_words_ = (dim * dim + 63) / 64;

  std::uint32_t next = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::uint32_t l = pair_to_orbit_[a * n + b];
      if (l == kNoOrbit) continue;
      if (l == next) {
        OrbitRecord r;
        r.id = l;
        r.rep = {static_cast<Elem>(a), static_cast<Elem>(b)};
        orbits_.push_back(r);
        profiles_.resize(profiles_.size() + profile_words_, 0);
        ++next;
      } else if (l > next) {
        throw InternalError("orbit ids not in canonical order");
      }
      ++orbits_[l].size;
      const std::size_t bit = slot[a] * dim + slot[b];
      profiles_[l * profile_words_ + bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
  }
  if (generating.size() != orbits_.size()) {
    throw InternalError("generation flags do not match orbit count");
  }

  const bool with_tau = g.kind() == GroupKind::kProjectiveSpecialLinear &&
                        (action_ == OrbitAction::kNielsen || g.field()->degree() == 1);
  for (OrbitRecord& r : orbits_) {
    r.is_generating = generating[r.id] != 0;
    r.commutator_order = g.element_order(g.commutator(r.rep.first, r.rep.second));
    if (with_tau) r.tau = pair_tau(g, r.rep.first, r.rep.second);
  }
}

std::optional<std::uint32_t> OrbitDecomposition::orbit_of(PairIndex p) const {
  const std::uint32_t l = pair_to_orbit_.at(pack(p));
  if (l == kNoOrbit) return std::nullopt;
  return l;
}

std::vector<std::uint32_t> OrbitDecomposition::generating_orbit_ids() const {
  std::vector<std::uint32_t> out;
  for (const auto& r : orbits_) {
    if (r.is_generating) out.push_back(r.id);
  }
  return out;
}

std::uint64_t OrbitDecomposition::gamma_size() const noexcept {
  std::uint64_t total = 0;
  for (const auto& r : orbits_) {
    if (r.is_generating) total += r.size;
  }
  return total;
}

bool OrbitDecomposition::has_order_pair(std::uint32_t orbit, std::uint32_t o1,
                                        std::uint32_t o2) const {
  const auto i = std::lower_bound(order_values_.begin(), order_values_.end(), o1);
  const auto j = std::lower_bound(order_values_.begin(), order_values_.end(), o2);
  if (i == order_values_.end() || *i != o1 || j == order_values_.end() || *j != o2) {
    return false;
  }
  const std::size_t bit = static_cast<std::size_t>(i - order_values_.begin()) *
                              order_values_.size() +
                          static_cast<std::size_t>(j - order_values_.begin());
  return (profiles_.at(orbit * profile_words_ + bit / 64) >> (bit % 64)) & 1;
}

bool OrbitDecomposition::is_mn_free(std::uint32_t orbit, std::uint64_t m,
                                    std::uint64_t n) const {
  if (m == 0 || n == 0) throw DomainError("(m,n)-freeness needs m, n >= 1");
  for (const std::uint32_t o1 : order_values_) {
    if (m % o1 != 0) continue;
    for (const std::uint32_t o2 : order_values_) {
      if (n % o2 == 0 && has_order_pair(orbit, o1, o2)) return false;
    }
  }
  return true;
}

void OrbitDecomposition::annotate_mn(
    std::span<const std::pair<std::uint64_t, std::uint64_t>> queries) {
  for (OrbitRecord& r : orbits_) {
    for (const auto& [m, n] : queries) r.mn_free[{m, n}] = is_mn_free(r.id, m, n);
  }
}

std::array<PairIndex, 3> nielsen_moves(const FiniteGroup& g, PairIndex p) {
  return {PairIndex{g.inv(p.first), p.second},
          PairIndex{g.mul(p.first, g.inv(p.second)), p.second},
          PairIndex{p.second, p.first}};
}

OrbitDecomposition decompose_nielsen_orbits(std::shared_ptr<const FiniteGroup> host,
                                            const DecomposeOptions& opts) {
  const FiniteGroup& g = *host;
  check_budget(g, opts.pair_budget);
  const std::uint32_t n = static_cast<std::uint32_t>(g.order());

  Components c = label_components(
      std::uint64_t{n} * n, [](std::uint64_t) { return true; },
      [&](std::uint32_t pid, auto&& visit) {
        const Elem a = pid / n, b = pid % n;
        visit(g.inv(a) * n + b);
        visit(g.mul(a, g.inv(b)) * n + b);
        visit(b * n + a);
      });

  // Nielsen moves preserve <g1, g2>, so one closure per component decides
  // generation for all its members.
  std::vector<std::uint8_t> gen(c.seed.size(), 0);
  detail::parallel_for(c.seed.size(), opts.threads, [&](std::size_t i) {
    gen[i] = generates(g, c.seed[i] / n, c.seed[i] % n) ? 1 : 0;
  });

  if (opts.restrict_to_generating) {
    std::vector<std::uint32_t> remap(gen.size(), kNoOrbit);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < gen.size(); ++i) {
      if (gen[i]) remap[i] = next++;
    }
    for (auto& l : c.label) l = remap[l];
    gen.assign(next, 1);
  }
  return OrbitDecomposition(std::move(host), OrbitAction::kNielsen,
                            opts.restrict_to_generating, std::move(c.label),
                            std::move(gen));
}

std::vector<PairIndex> enumerate_generating_pairs(std::shared_ptr<const FiniteGroup> g,
                                                  const DecomposeOptions& opts) {
  DecomposeOptions o = opts;
  o.restrict_to_generating = true;
  const OrbitDecomposition d = decompose_nielsen_orbits(std::move(g), o);
  std::vector<PairIndex> out;
  out.reserve(d.gamma_size());
  const auto labels = d.pair_to_orbit();
  for (std::uint64_t pid = 0; pid < labels.size(); ++pid) {
    if (labels[pid] != kNoOrbit) out.push_back(d.unpack(pid));
  }
  return out;
}

FieldElement orbit_tau(const OrbitDecomposition& d, std::uint32_t orbit,
                       InvariantCheck check) {
  const FiniteGroup& g = d.host();
  require_psl(g);
  const OrbitRecord& r = d.orbit(orbit);
  const FieldElement tau = pair_tau(g, r.rep.first, r.rep.second);
  if (check == InvariantCheck::kNone) return tau;
  const std::uint64_t stride =
      check == InvariantCheck::kExhaustive ? 1 : std::max<std::uint64_t>(1, r.size / 64);
  const auto labels = d.pair_to_orbit();
  std::uint64_t seen = 0;
  for (std::uint64_t pid = 0; pid < labels.size(); ++pid) {
    if (labels[pid] != orbit) continue;
    if (seen++ % stride != 0) continue;
    const PairIndex p = d.unpack(pid);
    if (pair_tau(g, p.first, p.second) != tau) {
      throw InternalError("trace invariant not constant on orbit " +
                          std::to_string(orbit));
    }
  }
  return tau;
}

std::vector<HigmanResult> higman_check_all(const OrbitDecomposition& d,
                                           const ConjugacyClasses& classes) {
  const FiniteGroup& g = d.host();
  const auto orbits = d.orbits();
  std::vector<HigmanResult> out(orbits.size());
  std::vector<std::uint32_t> class_ab(orbits.size()), class_ba(orbits.size());
  for (const auto& r : orbits) {
    const Elem ab = g.commutator(r.rep.first, r.rep.second);
    const Elem ba = g.commutator(r.rep.second, r.rep.first);
    class_ab[r.id] = classes.class_of[ab];
    class_ba[r.id] = classes.class_of[ba];
    out[r.id] = {g.element_order(ab), true};
  }
  const std::uint32_t n = static_cast<std::uint32_t>(g.order());
  const auto labels = d.pair_to_orbit();
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      const std::uint32_t l = labels[std::uint64_t{a} * n + b];
      if (l == kNoOrbit || !out[l].ok) continue;
      const Elem c = g.commutator(a, b);
      const std::uint32_t k = classes.class_of[c];
      if ((k != class_ab[l] && k != class_ba[l]) || g.element_order(c) != out[l].order) {
        out[l].ok = false;
      }
    }
  }
  return out;
}

HigmanResult higman_check(const OrbitDecomposition& d, std::uint32_t orbit,
                          const ConjugacyClasses& classes) {
  return higman_check_all(d, classes).at(orbit);
}

bool orbit_is_mn_free(const OrbitDecomposition& d, std::uint32_t orbit,
                      std::uint64_t m, std::uint64_t n) {
  return d.is_mn_free(orbit, m, n);
}

std::optional<PairIndex> find_mn_pair(const OrbitDecomposition& d,
                                      std::uint32_t orbit, std::uint64_t m,
                                      std::uint64_t n) {
  if (d.is_mn_free(orbit, m, n)) return std::nullopt;
  const FiniteGroup& g = d.host();
  const auto labels = d.pair_to_orbit();
  for (std::uint64_t pid = 0; pid < labels.size(); ++pid) {
    if (labels[pid] != orbit) continue;
    const PairIndex p = d.unpack(pid);
    if (m % g.element_order(p.first) == 0 && n % g.element_order(p.second) == 0) {
      return p;
    }
  }
  throw InternalError("order profile and orbit members disagree");
}

bool lift_exists(const OrbitDecomposition& d, std::uint64_t m, std::uint64_t n,
                 PairIndex p) {
  const auto orbit = d.orbit_of(p);
  if (!orbit || !d.orbit(*orbit).is_generating) {
    throw DomainError("pair (" + std::to_string(p.first) + "," +
                      std::to_string(p.second) + ") does not generate " +
                      d.host().name());
  }
  return !d.is_mn_free(*orbit, m, n);
}

std::vector<FieldElement> trace_spectrum(const OrbitDecomposition& d) {
  require_psl(d.host());
  std::vector<FieldElement> out;
  for (const auto& r : d.orbits()) {
    if (r.is_generating && r.tau) out.push_back(*r.tau);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FieldElement> trace_spectrum(std::uint64_t q, const DecomposeOptions& opts) {
  DecomposeOptions o = opts;
  o.restrict_to_generating = true;
  auto g = std::make_shared<const FiniteGroup>(build_psl2(q));
  return trace_spectrum(decompose_nielsen_orbits(g, o));
}

std::uint64_t pgaml_order(std::uint64_t q) {
  const auto pk = prime_power(q);
  if (!pk) throw DomainError(std::to_string(q) + " is not a prime power");
  return pk->second * q * (q * q - 1);
}

std::vector<std::vector<Elem>> psl_automorphism_generators(const FiniteGroup& psl) {
  require_psl(psl);
  const Field& f = *psl.field();
  const std::size_t n = psl.order();
  std::vector<std::vector<Elem>> perms;
  for (const Elem s : generating_set(psl)) {
    std::vector<Elem> p(n);
    for (Elem x = 0; x < n; ++x) p[x] = psl.conjugate(x, s);
    perms.push_back(std::move(p));
  }
  auto induced = [&](auto&& map_matrix) {
    std::vector<Elem> p(n);
    for (Elem x = 0; x < n; ++x) {
      const auto y = psl.index_of(map_matrix(psl.matrix(x)));
      if (!y) throw InternalError("automorphism left PSL(2,q)");
      p[x] = *y;
    }
    return p;
  };
  const Mat2 diag(f, f.primitive_element(), f.zero(), f.zero(), f.one());
  const Mat2 diag_inv = gl_inv(diag);
  perms.push_back(induced([&](const Mat2& m) { return diag_inv * m * diag; }));
  if (f.degree() > 1) {
    perms.push_back(induced([](const Mat2& m) { return mat_frobenius(m); }));
  }
  return perms;
}

namespace {

template <class Neighbors>
OrbitDecomposition decompose_generating(const OrbitDecomposition& nielsen,
                                        OrbitAction action, Neighbors&& neighbors) {
  const std::uint64_t n = nielsen.host().order();
  const auto labels = nielsen.pair_to_orbit();
  Components c = label_components(
      n * n,
      [&](std::uint64_t pid) {
        const std::uint32_t l = labels[pid];
        return l != kNoOrbit && nielsen.orbit(l).is_generating;
      },
      neighbors);
  std::vector<std::uint8_t> gen(c.seed.size(), 1);
  return OrbitDecomposition(nielsen.host_ptr(), action, true, std::move(c.label),
                            std::move(gen));
}

}  // namespace

OrbitDecomposition aut_orbit_decomposition(const OrbitDecomposition& nielsen) {
  const FiniteGroup& g = nielsen.host();
  const auto perms = psl_automorphism_generators(g);
  const std::uint32_t n = static_cast<std::uint32_t>(g.order());
  return decompose_generating(nielsen, OrbitAction::kAutomorphism,
                              [&](std::uint32_t pid, auto&& visit) {
                                const Elem a = pid / n, b = pid % n;
                                for (const auto& p : perms) visit(p[a] * n + p[b]);
                              });
}

OrbitDecomposition joint_orbit_decomposition(const OrbitDecomposition& nielsen) {
  const FiniteGroup& g = nielsen.host();
  const auto perms = psl_automorphism_generators(g);
  const std::uint32_t n = static_cast<std::uint32_t>(g.order());
  return decompose_generating(nielsen, OrbitAction::kJoint,
                              [&](std::uint32_t pid, auto&& visit) {
                                const Elem a = pid / n, b = pid % n;
                                visit(g.inv(a) * n + b);
                                visit(g.mul(a, g.inv(b)) * n + b);
                                visit(b * n + a);
                                for (const auto& p : perms) visit(p[a] * n + p[b]);
                              });
}

}  // namespace genlift

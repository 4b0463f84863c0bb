#include "genlift/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <numeric>
#include <set>

#include "genlift/error.hpp"
#include "genlift/fpgroups.hpp"

namespace genlift {

using nlohmann::json;

namespace {

// Set while a driver runs whenever a decomposition is served from disk.
thread_local bool t_cache_hit = false;

template <class Body>
ClaimReport run_driver(std::string id, json params, Body&& body) {
  const bool outer_hit = t_cache_hit;
  t_cache_hit = false;
  const auto t0 = std::chrono::steady_clock::now();
  ClaimReport r;
  r.claim_id = std::move(id);
  r.parameters = std::move(params);
  body(r);
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  r.cache_hit = t_cache_hit;
  t_cache_hit = outer_hit || t_cache_hit;
  return r;
}

std::pair<std::uint32_t, std::uint32_t> require_prime_power(std::uint64_t q) {
  const auto pk = prime_power(q);
  if (!pk) throw PreconditionError("q = " + std::to_string(q) + " is not a prime power");
  return *pk;
}

json elements_json(const Field& f, std::span<const FieldElement> xs) {
  json out = json::array();
  for (FieldElement x : xs) out.push_back(f.to_string(x));
  return out;
}

std::vector<FieldElement> set_minus(std::span<const FieldElement> a,
                                    std::span<const FieldElement> b) {
  std::vector<FieldElement> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

json pair_json(PairIndex p) { return json::array({p.first, p.second}); }

json orbit_row(const OrbitDecomposition& d, const OrbitRecord& r) {
  json o{{"id", r.id},
         {"size", r.size},
         {"rep", pair_json(r.rep)},
         {"commutator_order", r.commutator_order}};
  if (r.tau) o["tau"] = d.host().field()->to_string(*r.tau);
  return o;
}

bool divides(std::uint64_t a, std::uint64_t b) { return a != 0 && b % a == 0; }

FieldElement pair_trace(const FiniteGroup& g, Elem a, Elem b) {
  return trace(commutator(g.matrix(a), g.matrix(b)));
}

// Generating pairs (h1, h2) with h1^m = h2^n = 1, visited in pair order.
template <class F>
void for_each_mn_generating_pair(const OrbitDecomposition& d, std::uint64_t m, std::uint64_t n,
                                 F&& f) {
  const FiniteGroup& g = d.host();
  const auto orbits = d.orbits();
  const auto labels = d.pair_to_orbit();
  const std::size_t order = g.order();
  for (Elem a = 0; a < order; ++a) {
    if (!divides(g.element_order(a), m)) continue;
    for (Elem b = 0; b < order; ++b) {
      if (!divides(g.element_order(b), n)) continue;
      const std::uint32_t id = labels[std::size_t(a) * order + b];
      if (id != OrbitDecomposition::kNoOrbit && orbits[id].is_generating) f(a, b);
    }
  }
}

// Small permutations of {1..5}, composed left to right as in x y = "x, then y".
using Perm5 = std::array<int, 6>;

Perm5 perm_identity() { return {0, 1, 2, 3, 4, 5}; }

Perm5 perm_cycle(std::initializer_list<int> cycle) {
  Perm5 p = perm_identity();
  const std::vector<int> c(cycle);
  for (std::size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
  return p;
}

Perm5 perm_mul(const Perm5& x, const Perm5& y) {
  Perm5 r{};
  for (int i = 0; i <= 5; ++i) r[i] = y[x[i]];
  return r;
}

Perm5 perm_inv(const Perm5& x) {
  Perm5 r{};
  for (int i = 0; i <= 5; ++i) r[x[i]] = i;
  return r;
}

Perm5 perm_commutator(const Perm5& x, const Perm5& y) {
  return perm_mul(perm_mul(perm_inv(x), perm_inv(y)), perm_mul(x, y));
}

std::string perm_string(const Perm5& p) {
  std::string out;
  std::array<bool, 6> seen{};
  for (int i = 1; i <= 5; ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    for (int j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      if (j != i) out += " ";
      out += std::to_string(j);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

int perm_order(const Perm5& p) {
  Perm5 x = p;
  int k = 1;
  while (x != perm_identity()) {
    x = perm_mul(x, p);
    ++k;
  }
  return k;
}

struct CubeScan {
  std::uint64_t cube_elements = 0;  // A with A^3 in {I, -I}
  std::uint64_t generating_pairs = 0;
  std::uint64_t violations = 0;
  json witnesses = json::array();
  std::map<std::string, std::uint64_t> traces;
};

// All generating pairs (A, B) of SL(2,q) with A^3, B^3 in {I, -I}; a pair
// violates if tr [A, B] is in `forbidden`.
CubeScan scan_cube_pairs(const FiniteGroup& sl, std::span<const FieldElement> forbidden) {
  const Field& f = *sl.field();
  std::vector<Elem> cube;
  for (Elem a = 0; a < sl.order(); ++a) {
    if (divides(sl.element_order(a), 6)) cube.push_back(a);
  }
  CubeScan s;
  s.cube_elements = cube.size();
  for (Elem a : cube) {
    for (Elem b : cube) {
      if (!generates(sl, a, b)) continue;
      ++s.generating_pairs;
      const FieldElement t = trace(sl.matrix(sl.commutator(a, b)));
      ++s.traces[f.to_string(t)];
      if (std::find(forbidden.begin(), forbidden.end(), t) != forbidden.end()) {
        ++s.violations;
        if (s.witnesses.size() < 10) {
          s.witnesses.push_back({{"A", to_string(sl.matrix(a))},
                                 {"B", to_string(sl.matrix(b))},
                                 {"trace", f.to_string(t)}});
        }
      }
    }
  }
  return s;
}

const char* case_name(TheoremCase c) {
  switch (c) {
    case TheoremCase::kI: return "i";
    case TheoremCase::kII: return "ii";
    case TheoremCase::kIII: return "iii";
    case TheoremCase::kIV: return "iv";
  }
  return "?";
}

struct Mechanism {
  std::string rule;
  std::optional<std::uint32_t> orbit;
  bool holds = false;
  json extra = json::object();
};

// First free generating orbit whose tau lies in `taus` and, when given,
// whose commutator has order `comm_order`.
std::optional<std::uint32_t> find_free_orbit(const OrbitDecomposition& d, std::uint64_t m,
                                             std::uint64_t n,
                                             std::span<const FieldElement> taus,
                                             std::optional<std::uint32_t> comm_order) {
  for (std::uint32_t id : d.generating_orbit_ids()) {
    const OrbitRecord& r = d.orbit(id);
    if (!r.tau || std::find(taus.begin(), taus.end(), *r.tau) == taus.end()) continue;
    if (comm_order && r.commutator_order != *comm_order) continue;
    if (d.is_mn_free(id, m, n)) return id;
  }
  return std::nullopt;
}

Mechanism theorem_mechanism(const OrbitDecomposition& d, TheoremCase c, std::uint64_t q,
                            std::uint32_t p, std::uint64_t m, std::uint64_t n) {
  const Field& f = *d.host().field();
  const FieldElement zero = f.zero();
  const FieldElement one = f.one();
  const FieldElement minus_one = f.neg(one);
  const FieldElement minus_two = f.from_int(-2);
  Mechanism mech;
  switch (c) {
    case TheoremCase::kI:
      if (p != 2 && q != 5 && q != 7) {
        mech.rule = "free orbit with tau = 0 and commutator order 2";
        const std::array taus{zero};
        mech.orbit = find_free_orbit(d, m, n, taus, 2);
      } else {
        mech.rule = "free orbit with tau in {1,-1} and commutator order 3";
        const std::array taus{one, minus_one};
        mech.orbit = find_free_orbit(d, m, n, taus, 3);
      }
      mech.holds = mech.orbit.has_value();
      break;
    case TheoremCase::kII:
      if (q % 4 == 3) {
        mech.rule = "free orbit with tau = -2";
        const std::array taus{minus_two};
        mech.orbit = find_free_orbit(d, m, n, taus, std::nullopt);
      } else {
        mech.rule = "free orbit with tau not of the form s^2+2";
        const auto squares = squares_plus_two(f);
        std::vector<FieldElement> all;
        for (std::uint32_t code = 0; code < f.order(); ++code) all.push_back(f.element(code));
        const auto outside = set_minus(all, squares);
        mech.orbit = find_free_orbit(d, m, n, outside, std::nullopt);
      }
      mech.holds = mech.orbit.has_value();
      break;
    case TheoremCase::kIII: {
      mech.rule = "free orbit with tau = -2";
      const std::array taus{minus_two};
      mech.orbit = find_free_orbit(d, m, n, taus, std::nullopt);
      mech.holds = mech.orbit.has_value();
      break;
    }
    case TheoremCase::kIV:
      if (q == 5) {
        mech.rule = "free orbit with tau = -2";
        const std::array taus{minus_two};
        mech.orbit = find_free_orbit(d, m, n, taus, std::nullopt);
        mech.holds = mech.orbit.has_value();
      } else if (q == 7) {
        mech.rule = "free orbit with tau in {3,-3}";
        const std::array taus{f.from_int(3), f.from_int(-3)};
        mech.orbit = find_free_orbit(d, m, n, taus, std::nullopt);
        mech.holds = mech.orbit.has_value();
      } else if (p == 2) {
        // In characteristic 2 no generating pair has tau = 0 = 2, so the
        // tau = 0 argument has nothing to act on; only the direct scan
        // below applies.
        mech.rule = "none for even q (tau = 0 does not occur)";
        mech.holds = true;
      } else {
        mech.rule = "free orbit with tau = 0; no (3,3)-generating pair has tau = 0";
        const std::array taus{zero};
        mech.orbit = find_free_orbit(d, m, n, taus, std::nullopt);
        std::uint64_t tau_zero_pairs = 0;
        for_each_mn_generating_pair(d, 3, 3, [&](Elem a, Elem b) {
          if (pair_trace(d.host(), a, b) == zero) ++tau_zero_pairs;
        });
        mech.extra["mn_pairs_with_tau_zero"] = tau_zero_pairs;
        mech.holds = mech.orbit.has_value() && tau_zero_pairs == 0;
      }
      break;
  }
  return mech;
}

}  // namespace

json to_json(const ClaimReport& r) {
  return json{{"schema", kClaimSchema},
              {"claim_id", r.claim_id},
              {"parameters", r.parameters},
              {"passed", r.passed},
              {"evidence", r.evidence},
              {"elapsed_ms", r.elapsed_ms},
              {"tool_version", std::string(tool_version())},
              {"cache_hit", r.cache_hit}};
}

Workspace::Workspace(Config cfg) : cfg_(std::move(cfg)) {
  if (cfg_.pair_budget < 1) throw PreconditionError("pair budget must be at least 1");
  if (cfg_.threads < 1) throw PreconditionError("thread count must be at least 1");
}

std::shared_ptr<const FiniteGroup> Workspace::psl2(std::uint64_t q) {
  std::lock_guard lock(mu_);
  auto& slot = psl_[q];
  if (!slot) slot = std::make_shared<const FiniteGroup>(build_psl2(q));
  return slot;
}

std::shared_ptr<const FiniteGroup> Workspace::sl2(std::uint64_t q) {
  std::lock_guard lock(mu_);
  auto& slot = sl_[q];
  if (!slot) slot = std::make_shared<const FiniteGroup>(build_sl2(q));
  return slot;
}

std::shared_ptr<const OrbitDecomposition> Workspace::nielsen_psl2(std::uint64_t q) {
  require_prime_power(q);
  const std::uint64_t n = psl2_order(q);
  if (n > (std::uint64_t{1} << 32) || n * n > cfg_.pair_budget) {
    throw BudgetExceeded("PSL(2," + std::to_string(q) + ") has " + std::to_string(n) +
                         "^2 pairs, above the pair budget of " +
                         std::to_string(cfg_.pair_budget));
  }
  auto host = psl2(q);
  std::lock_guard lock(mu_);
  if (auto it = nielsen_.find(q); it != nielsen_.end()) {
    if (it->second.from_disk) t_cache_hit = true;
    return it->second.d;
  }
  std::optional<OrbitCache> cache;
  if (cfg_.cache_dir) cache.emplace(*cfg_.cache_dir);
  if (cache) {
    if (auto loaded = cache->load(host, OrbitAction::kNielsen, false)) {
      auto d = std::make_shared<const OrbitDecomposition>(std::move(*loaded));
      nielsen_[q] = {d, true};
      t_cache_hit = true;
      return d;
    }
  }
  DecomposeOptions opts;
  opts.pair_budget = cfg_.pair_budget;
  opts.threads = cfg_.threads;
  auto d = std::make_shared<const OrbitDecomposition>(decompose_nielsen_orbits(host, opts));
  if (cache) cache->store(*d);
  nielsen_[q] = {d, false};
  return d;
}

OrbitDecomposition Workspace::nielsen(std::shared_ptr<const FiniteGroup> g) const {
  DecomposeOptions opts;
  opts.pair_budget = cfg_.pair_budget;
  opts.threads = cfg_.threads;
  return decompose_nielsen_orbits(std::move(g), opts);
}

std::optional<TheoremCase> parse_theorem_case(std::string_view s) {
  if (s == "i") return TheoremCase::kI;
  if (s == "ii") return TheoremCase::kII;
  if (s == "iii") return TheoremCase::kIII;
  if (s == "iv") return TheoremCase::kIV;
  return std::nullopt;
}

std::vector<FieldElement> expected_trace_spectrum(const Field& f) {
  const std::uint64_t q = f.order();
  if (q == 5) return {f.from_int(1), f.from_int(3)};
  if (q == 7) return {f.from_int(3), f.from_int(4), f.from_int(5), f.from_int(6)};
  std::vector<FieldElement> excluded{f.from_int(2)};
  if (q == 3 || q == 9 || q == 11) excluded.push_back(f.from_int(1));
  std::vector<FieldElement> out;
  for (std::uint32_t code = 0; code < q; ++code) {
    const FieldElement x = f.element(code);
    if (std::find(excluded.begin(), excluded.end(), x) == excluded.end()) out.push_back(x);
  }
  return out;
}

ClaimReport verify_trace_table(Workspace& ws, std::uint64_t q) {
  return run_driver("trace-table", {{"q", q}}, [&](ClaimReport& r) {
    require_prime_power(q);
    const auto d = ws.nielsen_psl2(q);
    const Field& f = *d->host().field();
    const auto spectrum = trace_spectrum(*d);
    const auto expected = expected_trace_spectrum(f);
    r.passed = spectrum == expected;
    r.evidence = {{"group_order", d->host().order()},
                  {"gamma_size", d->gamma_size()},
                  {"generating_orbits", d->generating_orbit_ids().size()},
                  {"spectrum", elements_json(f, spectrum)},
                  {"expected", elements_json(f, expected)},
                  {"missing", elements_json(f, set_minus(expected, spectrum))},
                  {"unexpected", elements_json(f, set_minus(spectrum, expected))}};
  });
}

ClaimReport verify_prop_key(Workspace& ws, std::uint64_t q) {
  return run_driver("prop-key", {{"q", q}}, [&](ClaimReport& r) {
    require_prime_power(q);
    if (q % 4 != 3) throw PreconditionError("prop-key requires q = 3 mod 4");
    const auto sl = ws.sl2(q);
    const Field& f = *sl->field();
    const FieldElement minus_two = f.from_int(-2);
    const ConjugacyClasses classes = conjugacy_classes(*sl);

    json reps = json::array();
    std::uint64_t scanned = 0, generating = 0, violations = 0;
    json witnesses = json::array();
    for (Elem a : classes.representatives) {
      if (!divides(sl->element_order(a), 4)) continue;
      reps.push_back({{"index", a},
                      {"matrix", to_string(sl->matrix(a))},
                      {"order", sl->element_order(a)}});
      for (Elem b = 0; b < sl->order(); ++b) {
        ++scanned;
        if (!generates(*sl, a, b)) continue;
        ++generating;
        if (trace(sl->matrix(sl->commutator(a, b))) == minus_two) {
          ++violations;
          if (witnesses.size() < 10) {
            witnesses.push_back(
                {{"A", to_string(sl->matrix(a))}, {"B", to_string(sl->matrix(b))}});
          }
        }
      }
    }
    r.passed = violations == 0 && generating > 0;
    r.evidence = {{"class_representatives", reps},
                  {"pairs_scanned", scanned},
                  {"generating_pairs", generating},
                  {"violations", violations},
                  {"witnesses", witnesses}};
  });
}

ClaimReport verify_lemma5(Workspace& ws) {
  return run_driver("lemma5", json::object(), [&](ClaimReport& r) {
    const auto sl = ws.sl2(5);
    const Field& f = *sl->field();
    const std::array forbidden{f.from_int(-2)};
    const CubeScan s = scan_cube_pairs(*sl, forbidden);

    // The permutation computation in Alt(5).
    const Perm5 c = perm_commutator(perm_cycle({1, 2, 3}), perm_cycle({1, 4, 5}));
    const bool witness_ok = c == perm_cycle({1, 4, 2}) && perm_order(c) == 3;

    // Every pair of 3-cycles, not only the one up to conjugacy.
    std::vector<Perm5> three_cycles;
    for (int a = 1; a <= 5; ++a)
      for (int b = 1; b <= 5; ++b)
        for (int d = 1; d <= 5; ++d) {
          if (a == b || b == d || a == d || a > b || a > d) continue;
          three_cycles.push_back(perm_cycle({a, b, d}));
        }
    std::uint64_t five_cycles = 0;
    for (const Perm5& x : three_cycles)
      for (const Perm5& y : three_cycles)
        if (perm_order(perm_commutator(x, y)) == 5) ++five_cycles;

    r.passed = s.violations == 0 && s.generating_pairs > 0 && witness_ok && five_cycles == 0;
    r.evidence = {{"cube_elements", s.cube_elements},
                  {"qualifying_pairs", s.generating_pairs},
                  {"commutator_traces", s.traces},
                  {"violations", s.violations},
                  {"witnesses", s.witnesses},
                  {"permutation_commutator", {{"x", "(1 2 3)"},
                                              {"y", "(1 4 5)"},
                                              {"value", perm_string(c)},
                                              {"order", perm_order(c)}}},
                  {"three_cycles", three_cycles.size()},
                  {"five_cycle_commutators", five_cycles}};
  });
}

ClaimReport verify_lemma7(Workspace& ws) {
  return run_driver("lemma7", json::object(), [&](ClaimReport& r) {
    const auto sl = ws.sl2(7);
    const auto psl = ws.psl2(7);
    const Field& f = *sl->field();
    const std::array forbidden{f.from_int(3), f.from_int(-3)};
    const CubeScan s = scan_cube_pairs(*sl, forbidden);

    std::uint64_t trace3 = 0, order8 = 0, image_order4 = 0;
    for (Elem g = 0; g < sl->order(); ++g) {
      const FieldElement t = trace(sl->matrix(g));
      if (t != forbidden[0] && t != forbidden[1]) continue;
      ++trace3;
      if (sl->element_order(g) == 8) ++order8;
      const auto image = psl->index_of(sl->matrix(g));
      if (image && psl->element_order(*image) == 4) ++image_order4;
    }
    r.passed = s.violations == 0 && s.generating_pairs > 0 && trace3 > 0 &&
               order8 == trace3 && image_order4 == trace3;
    r.evidence = {{"cube_elements", s.cube_elements},
                  {"qualifying_pairs", s.generating_pairs},
                  {"commutator_traces", s.traces},
                  {"violations", s.violations},
                  {"witnesses", s.witnesses},
                  {"trace_pm3_elements", trace3},
                  {"trace_pm3_of_order_8", order8},
                  {"trace_pm3_image_order_4", image_order4}};
  });
}

ClaimReport verify_theorem(Workspace& ws, TheoremCase c, std::uint64_t q,
                           std::optional<std::uint64_t> m) {
  json params{{"case", case_name(c)}, {"q", q}};
  if (m) params["m"] = *m;
  return run_driver("thm-" + std::string(case_name(c)), params, [&](ClaimReport& r) {
    const auto [p, k] = require_prime_power(q);
    std::uint64_t mm = 2, nn = 3;
    switch (c) {
      case TheoremCase::kI:
        if (q < 4 || q == 9) throw PreconditionError("case (i) requires q >= 4, q != 9");
        break;
      case TheoremCase::kII:
        if (p < 3 || q < 7 || q == 9) {
          throw PreconditionError("case (ii) requires odd q >= 7, q != 9");
        }
        if (m && *m != p) throw PreconditionError("case (ii) fixes m = p");
        nn = p;
        break;
      case TheoremCase::kIII: {
        if (q % 4 != 3 || q == 3) throw PreconditionError("case (iii) requires q = 3 mod 4, q != 3");
        if (!m || *m == 0) throw PreconditionError("case (iii) requires m >= 1");
        const bool hyp = *m % p == 0 || std::gcd(*m, (q + 1) / 2) >= 3 ||
                         std::gcd(*m, (q - 1) / 2) >= 3;
        if (!hyp) {
          throw PreconditionError("m = " + std::to_string(*m) +
                                  " fails p | m or gcd(m,(q+1)/2) >= 3 or gcd(m,(q-1)/2) >= 3");
        }
        nn = *m;
        break;
      }
      case TheoremCase::kIV:
        if (q < 5) throw PreconditionError("case (iv) requires q >= 5");
        mm = 3;
        nn = 3;
        break;
    }
    r.parameters["mn"] = json::array({mm, nn});

    const auto d = ws.nielsen_psl2(q);
    const FiniteGroup& host = d->host();
    const ConjugacyClasses classes = conjugacy_classes(host);
    const auto witness = find_mn_generating_pair(host, mm, nn, classes);

    json orbits = json::array();
    std::uint64_t free_count = 0;
    for (std::uint32_t id : d->generating_orbit_ids()) {
      json row = orbit_row(*d, d->orbit(id));
      const bool free = d->is_mn_free(id, mm, nn);
      row["free"] = free;
      free_count += free;
      orbits.push_back(std::move(row));
    }
    const Mechanism mech = theorem_mechanism(*d, c, q, p, mm, nn);
    json mech_json = mech.extra;
    mech_json["rule"] = mech.rule;
    mech_json["orbit"] = mech.orbit ? json(*mech.orbit) : json(nullptr);
    mech_json["holds"] = mech.holds;

    r.passed = witness.has_value() && free_count > 0 && mech.holds;
    r.evidence = {{"group_order", host.order()},
                  {"gamma_size", d->gamma_size()},
                  {"mn_generated", witness.has_value()},
                  {"mn_generating_pair",
                   witness ? json::array({witness->first, witness->second}) : json(nullptr)},
                  {"free_orbits", free_count},
                  {"orbits", orbits},
                  {"mechanism", mech_json}};
  });
}

ClaimReport verify_s2p2(Workspace& ws, std::uint64_t q) {
  return run_driver("s2p2", {{"q", q}}, [&](ClaimReport& r) {
    const auto [p, k] = require_prime_power(q);
    if (p == 2 || q < 11) throw PreconditionError("s2p2 requires odd q >= 11");
    const auto d = ws.nielsen_psl2(q);
    const FiniteGroup& host = d->host();
    const Field& f = *host.field();
    const auto squares = squares_plus_two(f);

    std::uint64_t pairs = 0, outside = 0;
    json bad = json::array();
    for_each_mn_generating_pair(*d, 2, p, [&](Elem a, Elem b) {
      ++pairs;
      const FieldElement t = pair_trace(host, a, b);
      if (!std::binary_search(squares.begin(), squares.end(), t)) {
        ++outside;
        if (bad.size() < 10) bad.push_back({{"pair", {a, b}}, {"tau", f.to_string(t)}});
      }
    });
    const auto spectrum = trace_spectrum(*d);
    const auto witnesses = set_minus(spectrum, squares);

    bool witness_orbits_free = true;
    for (std::uint32_t id : d->generating_orbit_ids()) {
      const auto& tau = d->orbit(id).tau;
      if (tau && std::binary_search(witnesses.begin(), witnesses.end(), *tau)) {
        witness_orbits_free = witness_orbits_free && d->is_mn_free(id, 2, p);
      }
    }
    r.passed = outside == 0 && pairs > 0 && !witnesses.empty() && witness_orbits_free;
    r.evidence = {{"squares_plus_two", elements_json(f, squares)},
                  {"spectrum", elements_json(f, spectrum)},
                  {"witnesses", elements_json(f, witnesses)},
                  {"mn_pairs", pairs},
                  {"mn_pairs_outside", outside},
                  {"outside_examples", bad},
                  {"witness_orbits_free", witness_orbits_free}};
  });
}

ClaimReport verify_psl25_lift(Workspace& ws) {
  return run_driver("psl25-lift", json::object(), [&](ClaimReport& r) {
    const auto d = ws.nielsen_psl2(5);
    const FiniteGroup& psl = d->host();
    const Field& f = *psl.field();
    const auto sl = ws.sl2(5);

    const Mat2 A = Mat2::from_ints(f, 0, 1, -1, 0);
    const Mat2 B = Mat2::from_ints(f, 0, 3, 3, 0);
    const Mat2 C = Mat2::from_ints(f, 1, 1, 0, 1);
    const Mat2 D = C * C;
    const std::array<std::pair<Mat2, Mat2>, 3> reps{{{A, C}, {A, D}, {B, D}}};
    const std::array names{"(A,C)", "(A,D)", "(B,D)"};
    const std::array stated_commutators{Mat2::from_ints(f, 1, 1, 1, 2),
                                        Mat2::from_ints(f, 1, 2, 2, 0),
                                        Mat2::from_ints(f, 1, 2, 3, 2)};
    const std::array stated_tau{f.from_int(3), f.from_int(1), f.from_int(3)};

    const auto gen_ids = d->generating_orbit_ids();
    bool ok = gen_ids.size() == 3;
    json orbits = json::array();
    for (std::uint32_t id : gen_ids) {
      const auto w = find_mn_pair(*d, id, 2, 5);
      ok = ok && w.has_value();
      json row = orbit_row(*d, d->orbit(id));
      row["mn_2_5_pair"] = w ? pair_json(*w) : json(nullptr);
      orbits.push_back(std::move(row));
    }

    json pairs = json::array();
    std::set<std::uint32_t> seen;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto& [x, y] = reps[i];
      const Elem a = *psl.index_of(x);
      const Elem b = *psl.index_of(y);
      const auto orbit = d->orbit_of({a, b});
      const Mat2 comm = commutator(x, y);
      const bool generating = orbit && d->orbit(*orbit).is_generating;
      const bool orders_ok = psl.element_order(a) == 2 && psl.element_order(b) == 5;
      const FieldElement tau = trace(comm);
      ok = ok && generating && orders_ok && comm == stated_commutators[i] &&
           tau == stated_tau[i] && d->orbit(*orbit).tau == tau;
      if (orbit) seen.insert(*orbit);
      pairs.push_back({{"pair", names[i]},
                       {"orbit", orbit ? json(*orbit) : json(nullptr)},
                       {"orders", {psl.element_order(a), psl.element_order(b)}},
                       {"commutator", to_string(comm)},
                       {"tau", f.to_string(tau)}});
    }
    const bool distinct = seen.size() == 3;

    // [A,C] against [B,D], [D,B], -[B,D], -[D,B] in SL(2,5).
    const ConjugacyClasses classes = conjugacy_classes(*sl);
    const Mat2 ac = commutator(A, C);
    const Mat2 bd = commutator(B, D);
    const Mat2 db = commutator(D, B);
    const std::uint32_t ac_class = classes.class_of[*sl->index_of(ac)];
    json separation = json::object();
    bool separated = true;
    const std::array<std::pair<const char*, Mat2>, 4> others{
        {{"[B,D]", bd}, {"[D,B]", db}, {"-[B,D]", mat_neg(bd)}, {"-[D,B]", mat_neg(db)}}};
    for (const auto& [name, mtx] : others) {
      const bool conj = classes.class_of[*sl->index_of(mtx)] == ac_class;
      separation[name] = conj;
      separated = separated && !conj;
    }

    r.passed = ok && distinct && separated;
    r.evidence = {{"generating_orbits", gen_ids.size()},
                  {"orbits", orbits},
                  {"representatives", pairs},
                  {"distinct_orbits", distinct},
                  {"conjugate_to_AC", separation}};
  });
}

ClaimReport verify_remark(Workspace& ws, std::uint64_t m, std::uint64_t q) {
  return run_driver("remark", {{"m", m}, {"q", q}}, [&](ClaimReport& r) {
    require_prime_power(q);
    if (m == 0) throw PreconditionError("remark requires m >= 1");
    const auto d = ws.nielsen_psl2(q);
    const FiniteGroup& host = d->host();
    const Field& f = *host.field();

    std::set<FieldElement> taus;
    std::uint64_t pairs = 0;
    for_each_mn_generating_pair(*d, 2, m, [&](Elem a, Elem b) {
      ++pairs;
      taus.insert(pair_trace(host, a, b));
    });
    const std::vector<FieldElement> got(taus.begin(), taus.end());
    std::vector<FieldElement> expected;
    for (std::uint32_t code = 0; code < f.order(); ++code) {
      if (f.element(code) != f.from_int(2)) expected.push_back(f.element(code));
    }
    r.passed = got == expected;
    r.evidence = {{"interpretation", "(2,m)-generating pairs"},
                  {"mn_pairs", pairs},
                  {"taus", elements_json(f, got)},
                  {"expected", elements_json(f, expected)},
                  {"missing", elements_json(f, set_minus(expected, got))},
                  {"unexpected", elements_json(f, set_minus(got, expected))}};
  });
}

ClaimReport verify_miller_332(Workspace&) {
  return run_driver("miller-332", json::object(), [&](ClaimReport& r) {
    const Presentation p = parse_presentation("gens: x y\nrels: x^3 y^3 [x,y]^2\n");
    const CosetEnumeration e = todd_coxeter(p, {});
    const auto ab = abelianization(p);
    r.evidence = {{"presentation", "<x,y | x^3, y^3, [x,y]^2>"},
                  {"abelianization", ab},
                  {"cosets_defined", e.cosets_defined}};
    if (e.outcome != CosetOutcome::kComplete) {
      r.passed = false;
      r.evidence["outcome"] = "overflow";
      return;
    }
    const FiniteGroup k = group_from_coset_table(e.table, "K");
    const auto series = derived_series(k);
    std::vector<std::size_t> sizes;
    for (const auto& s : series) sizes.push_back(s.size());
    const std::size_t k2 = sizes.size() > 2 ? sizes[2] : 0;
    r.passed = k.order() == 288 && sizes == std::vector<std::size_t>{288, 32, 2, 1} &&
               ab == std::vector<std::int64_t>{3, 3} && k2 == 2;
    r.evidence["outcome"] = "complete";
    r.evidence["order"] = k.order();
    r.evidence["derived_series"] = sizes;
    r.evidence["derived_length"] = sizes.empty() ? 0 : sizes.size() - 1;
    r.evidence["second_derived_order"] = k2;
  });
}

ClaimReport verify_dihedral(Workspace& ws, std::uint64_t m) {
  return run_driver("dihedral", {{"m", m}}, [&](ClaimReport& r) {
    if (m < 3) throw PreconditionError("dihedral requires m >= 3");
    auto g = std::make_shared<const FiniteGroup>(build_dihedral(m));
    const OrbitDecomposition d = ws.nielsen(g);
    const auto labels = g->labels();
    auto shape = [&](Elem x) { return x < m ? "shift" : "reflection"; };

    bool ok = true;
    json orbits = json::array();
    for (std::uint32_t id : d.generating_orbit_ids()) {
      const OrbitRecord& rec = d.orbit(id);
      const auto w = find_mn_pair(d, id, 2, 2);
      ok = ok && w.has_value();
      json row{{"id", id},
               {"size", rec.size},
               {"rep", {labels[rec.rep.first], labels[rec.rep.second]}},
               {"rep_shape", {shape(rec.rep.first), shape(rec.rep.second)}}};
      if (w) {
        row["witness"] = {labels[w->first], labels[w->second]};
        row["witness_shape"] = {shape(w->first), shape(w->second)};
      } else {
        row["witness"] = nullptr;
      }
      orbits.push_back(std::move(row));
    }
    r.passed = ok && !orbits.empty();
    r.evidence = {{"group_order", g->order()},
                  {"gamma_size", d.gamma_size()},
                  {"generating_orbits", orbits.size()},
                  {"orbits", orbits}};
  });
}

ClaimReport verify_example_alt5(Workspace& ws) {
  return run_driver("example-alt5", json::object(), [&](ClaimReport& r) {
    const auto d = ws.nielsen_psl2(5);
    auto sizes_of = [](const OrbitDecomposition& od) {
      std::vector<std::uint64_t> s;
      for (std::uint32_t id : od.generating_orbit_ids()) s.push_back(od.orbit(id).size);
      std::sort(s.begin(), s.end());
      return s;
    };
    const auto nielsen_sizes = sizes_of(*d);
    const auto aut = aut_orbit_decomposition(*d);
    const auto aut_sizes = sizes_of(aut);
    const auto joint_sizes = sizes_of(joint_orbit_decomposition(*d));
    const bool aut_ok = aut_sizes.size() == 19 &&
                        std::all_of(aut_sizes.begin(), aut_sizes.end(),
                                    [](std::uint64_t s) { return s == 120; });
    r.passed = d->gamma_size() == 2280 &&
               nielsen_sizes == std::vector<std::uint64_t>{600, 600, 1080} && aut_ok &&
               joint_sizes == std::vector<std::uint64_t>{1080, 1200};
    r.evidence = {{"gamma_size", d->gamma_size()},
                  {"nielsen_orbit_sizes", nielsen_sizes},
                  {"aut_group_order", pgaml_order(5)},
                  {"aut_orbit_count", aut_sizes.size()},
                  {"aut_orbit_sizes", aut_sizes},
                  {"joint_orbit_sizes", joint_sizes}};
  });
}

ClaimReport verify_small_q_lifting(Workspace& ws) {
  return run_driver("small-q-lift", json::object(), [&](ClaimReport& r) {
    bool ok = true;
    json per_q = json::object();
    for (std::uint64_t q : {2, 3}) {
      const auto d = ws.nielsen_psl2(q);
      std::uint64_t free = 0;
      const auto ids = d->generating_orbit_ids();
      for (std::uint32_t id : ids) free += d->is_mn_free(id, 2, 3);
      ok = ok && free == 0 && !ids.empty();
      per_q[std::to_string(q)] = {{"generating_orbits", ids.size()}, {"free_orbits", free}};
    }
    const auto d7 = ws.nielsen_psl2(7);
    std::uint64_t free7 = 0;
    for (std::uint32_t id : d7->generating_orbit_ids()) free7 += d7->is_mn_free(id, 2, 3);
    r.passed = ok && free7 > 0;
    r.evidence = {{"lifting", per_q}, {"contrast_q7_free_orbits", free7}};
  });
}

ClaimReport verify_all(Workspace& ws, std::uint64_t max_q) {
  return run_driver("all", {{"max_q", max_q}}, [&](ClaimReport& r) {
    std::vector<ClaimReport> subs;
    auto within = [&](std::uint64_t q) { return q <= max_q; };
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13})
      if (within(q)) subs.push_back(verify_trace_table(ws, q));
    for (std::uint64_t q : {7, 11})
      if (within(q)) subs.push_back(verify_prop_key(ws, q));
    subs.push_back(verify_lemma5(ws));
    subs.push_back(verify_lemma7(ws));
    for (std::uint64_t q : {4, 5, 7, 8, 11, 13})
      if (within(q)) subs.push_back(verify_theorem(ws, TheoremCase::kI, q));
    for (std::uint64_t q : {7, 11, 13})
      if (within(q)) subs.push_back(verify_theorem(ws, TheoremCase::kII, q));
    for (auto [m, q] : std::initializer_list<std::pair<std::uint64_t, std::uint64_t>>{
             {4, 7}, {7, 7}, {3, 11}, {5, 11}, {6, 11}})
      if (within(q)) subs.push_back(verify_theorem(ws, TheoremCase::kIII, q, m));
    for (std::uint64_t q : {5, 7, 9, 11})
      if (within(q)) subs.push_back(verify_theorem(ws, TheoremCase::kIV, q));
    if (within(13)) subs.push_back(verify_s2p2(ws, 13));
    subs.push_back(verify_psl25_lift(ws));
    if (within(13)) subs.push_back(verify_remark(ws, 7, 13));
    subs.push_back(verify_miller_332(ws));
    for (std::uint64_t m = 3; m <= 12; ++m) subs.push_back(verify_dihedral(ws, m));
    subs.push_back(verify_example_alt5(ws));
    subs.push_back(verify_small_q_lifting(ws));

    json claims = json::array();
    std::uint64_t failed = 0;
    for (const ClaimReport& s : subs) {
      failed += !s.passed;
      claims.push_back({{"claim_id", s.claim_id}, {"parameters", s.parameters}, {"passed", s.passed}});
    }
    r.passed = failed == 0;
    r.evidence = {{"claims", claims}, {"total", subs.size()}, {"failed", failed}};
  });
}

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids{
      "trace-table", "prop-key", "lemma5",     "lemma7",       "thm-i",
      "thm-ii",      "thm-iii",  "thm-iv",     "s2p2",         "psl25-lift",
      "remark",      "miller-332", "dihedral", "example-alt5", "small-q-lift",
      "all"};
  return ids;
}

ClaimReport run_claim(Workspace& ws, std::string_view id, const ClaimArgs& args) {
  auto need = [&](const std::optional<std::uint64_t>& v, const char* flag) {
    if (!v) throw PreconditionError("claim " + std::string(id) + " requires --" + flag);
    return *v;
  };
  if (id == "trace-table") return verify_trace_table(ws, need(args.q, "q"));
  if (id == "prop-key") return verify_prop_key(ws, need(args.q, "q"));
  if (id == "lemma5") return verify_lemma5(ws);
  if (id == "lemma7") return verify_lemma7(ws);
  if (id.starts_with("thm-")) {
    if (const auto c = parse_theorem_case(id.substr(4))) {
      return verify_theorem(ws, *c, need(args.q, "q"), args.m);
    }
  }
  if (id == "s2p2") return verify_s2p2(ws, need(args.q, "q"));
  if (id == "psl25-lift") return verify_psl25_lift(ws);
  if (id == "remark") return verify_remark(ws, need(args.m, "m"), need(args.q, "q"));
  if (id == "miller-332") return verify_miller_332(ws);
  if (id == "dihedral") return verify_dihedral(ws, need(args.m, "m"));
  if (id == "example-alt5") return verify_example_alt5(ws);
  if (id == "small-q-lift") return verify_small_q_lifting(ws);
  if (id == "all") return verify_all(ws, args.max_q.value_or(13));
  throw PreconditionError("unknown claim id '" + std::string(id) + "'");
}

}  // namespace genlift

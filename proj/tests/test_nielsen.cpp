#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "genlift/error.hpp"
#include "genlift/nielsen.hpp"
#include "genlift/verify.hpp"
#include "oracles.hpp"

namespace genlift {
namespace {

std::shared_ptr<const FiniteGroup> psl(std::uint64_t q) {
  return std::make_shared<const FiniteGroup>(build_psl2(q));
}

std::multiset<std::uint64_t> generating_sizes(const OrbitDecomposition& d) {
  std::multiset<std::uint64_t> out;
  for (std::uint32_t id : d.generating_orbit_ids()) out.insert(d.orbit(id).size);
  return out;
}

TEST(Nielsen, MovesAreInvertible) {
  const auto g = psl(5);
  for (Elem a = 0; a < g->order(); ++a) {
    for (Elem b = 0; b < g->order(); b += 7) {
      const PairIndex p{a, b};
      const auto m = nielsen_moves(*g, p);
      EXPECT_EQ(nielsen_moves(*g, m[0])[0], p);
      EXPECT_EQ(nielsen_moves(*g, m[2])[2], p);
      // a -> a b^-1 has finite order as a permutation of pairs.
      PairIndex x = m[1];
      int steps = 1;
      while (x != p) {
        x = nielsen_moves(*g, x)[1];
        ++steps;
      }
      EXPECT_EQ(static_cast<std::uint32_t>(steps), g->element_order(b));
    }
  }
}

TEST(Nielsen, Psl25Orbits) {
  const auto d = decompose_nielsen_orbits(psl(5));
  EXPECT_EQ(d.gamma_size(), 2280u);
  EXPECT_EQ(generating_sizes(d), (std::multiset<std::uint64_t>{600, 600, 1080}));

  const auto aut = aut_orbit_decomposition(d);
  EXPECT_EQ(aut.orbits().size(), 19u);
  for (const OrbitRecord& r : aut.orbits()) EXPECT_EQ(r.size, 120u);
  EXPECT_EQ(pgaml_order(5), 120u);

  const auto joint = joint_orbit_decomposition(d);
  EXPECT_EQ(generating_sizes(joint), (std::multiset<std::uint64_t>{1080, 1200}));
}

TEST(Nielsen, SmallGroups) {
  const auto c5 = std::make_shared<const FiniteGroup>(build_cyclic(5));
  EXPECT_EQ(decompose_nielsen_orbits(c5).gamma_size(), 24u);
  const auto trivial = std::make_shared<const FiniteGroup>(build_cyclic(1));
  const auto d = decompose_nielsen_orbits(trivial);
  EXPECT_EQ(d.gamma_size(), 1u);
  EXPECT_EQ(d.orbits().size(), 1u);
}

TEST(Nielsen, AgreesWithNaivePartition) {
  std::vector<std::shared_ptr<const FiniteGroup>> groups{
      psl(2), psl(3), psl(4), psl(5),
      std::make_shared<const FiniteGroup>(build_sl2(3)),
      std::make_shared<const FiniteGroup>(build_cyclic(12)),
  };
  for (std::uint64_t m = 3; m <= 12; ++m)
    groups.push_back(std::make_shared<const FiniteGroup>(build_dihedral(m)));
  for (const auto& g : groups) {
    ASSERT_LE(g->order(), 60u);
    const auto r = testing::check_against_naive_partition(g);
    EXPECT_TRUE(r.ok) << r.detail;
  }
}

TEST(Nielsen, OrbitInvariantsExhaustive) {
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    const auto r = testing::check_orbit_invariants_exhaustive(q);
    EXPECT_TRUE(r.ok) << "q=" << q << ": " << r.detail;
  }
}

TEST(Nielsen, SpectrumMatchesBruteForceAndTable) {
  for (std::uint64_t q : {3, 4, 5, 7, 8, 9}) {
    const auto g = psl(q);
    const auto naive = testing::naive_nielsen_partition(*g);
    std::set<FieldElement> brute;
    const std::size_t n = g->order();
    for (std::size_t pid = 0; pid < n * n; ++pid) {
      if (!naive.generating[pid]) continue;
      brute.insert(trace(commutator(g->matrix(pid / n), g->matrix(pid % n))));
    }
    const auto got = trace_spectrum(decompose_nielsen_orbits(g));
    EXPECT_EQ(got, std::vector<FieldElement>(brute.begin(), brute.end())) << "q=" << q;
    EXPECT_EQ(got, expected_trace_spectrum(*g->field())) << "q=" << q;
  }
}

TEST(Nielsen, SlAndPslCommutatorsAgree) {
  // Lifting a PSL pair to any SL representatives gives the same commutator.
  const std::uint64_t q = 7;
  const auto g = psl(q);
  const auto d = decompose_nielsen_orbits(g);
  const auto sl = enumerate_sl2(*g->field());
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, sl.size() - 1);
  for (int t = 0; t < 2000; ++t) {
    const Mat2& x = sl[pick(rng)];
    const Mat2& y = sl[pick(rng)];
    const Elem a = *g->index_of(psl_canonical(x).rep());
    const Elem b = *g->index_of(psl_canonical(y).rep());
    const auto orbit = d.orbit_of({a, b});
    ASSERT_TRUE(orbit);
    ASSERT_EQ(d.orbit(*orbit).tau, trace(commutator(x, y)));
    const Elem c = *g->index_of(psl_canonical(commutator(x, y)).rep());
    ASSERT_EQ(c, g->commutator(a, b));
  }
}

TEST(Nielsen, CanonicalIdsAreStable) {
  const auto g = psl(7);
  const auto d = decompose_nielsen_orbits(g);
  std::uint64_t prev = 0;
  for (const OrbitRecord& r : d.orbits()) {
    const std::uint64_t pid = d.pack(r.rep);
    if (r.id > 0) EXPECT_GT(pid, prev);
    prev = pid;
    EXPECT_EQ(d.orbit_of(r.rep), r.id);
  }
  DecomposeOptions threaded;
  threaded.threads = 4;
  const auto d4 = decompose_nielsen_orbits(g, threaded);
  EXPECT_TRUE(std::ranges::equal(d.pair_to_orbit(), d4.pair_to_orbit()));
}

TEST(Nielsen, RestrictedModeKeepsGeneratingOrbits) {
  const auto g = psl(7);
  const auto full = decompose_nielsen_orbits(g);
  DecomposeOptions opts;
  opts.restrict_to_generating = true;
  const auto restricted = decompose_nielsen_orbits(g, opts);
  EXPECT_TRUE(restricted.restricted());
  EXPECT_EQ(restricted.gamma_size(), full.gamma_size());
  EXPECT_EQ(generating_sizes(restricted), generating_sizes(full));
  EXPECT_EQ(enumerate_generating_pairs(g).size(), full.gamma_size());
}

TEST(Nielsen, BudgetIsEnforced) {
  DecomposeOptions opts;
  opts.pair_budget = 1000;
  EXPECT_THROW(decompose_nielsen_orbits(psl(5), opts), BudgetExceeded);
}

TEST(Nielsen, AutOrbitsAreSemiRegular) {
  // PGammaL(2,q) acts freely on generating pairs, so every orbit has full size.
  for (std::uint64_t q : {4, 7, 8, 9}) {
    const auto d = decompose_nielsen_orbits(psl(q));
    const auto aut = aut_orbit_decomposition(d);
    std::uint64_t total = 0;
    for (const OrbitRecord& r : aut.orbits()) {
      EXPECT_EQ(r.size, pgaml_order(q)) << "q=" << q;
      total += r.size;
    }
    EXPECT_EQ(total, d.gamma_size());
  }
}

TEST(Nielsen, MnFreenessAndLifts) {
  const auto d = decompose_nielsen_orbits(psl(5));
  const FiniteGroup& g = d.host();
  for (std::uint32_t id : d.generating_orbit_ids()) {
    const OrbitRecord& r = d.orbit(id);
    const bool has25 = find_mn_pair(d, id, 2, 5).has_value();
    EXPECT_EQ(d.is_mn_free(id, 2, 5), !has25);
    EXPECT_EQ(lift_exists(d, 2, 5, r.rep), has25);
    if (auto p = find_mn_pair(d, id, 2, 3)) {
      EXPECT_EQ(g.power(p->first, 2), g.identity());
      EXPECT_EQ(g.power(p->second, 3), g.identity());
      EXPECT_EQ(d.orbit_of(*p), id);
    }
    // every PSL(2,5) orbit contains a (2,5)-pair
    EXPECT_TRUE(has25);
  }
  EXPECT_THROW(lift_exists(d, 2, 3, PairIndex{0, 0}), DomainError);
  EXPECT_THROW(d.is_mn_free(d.generating_orbit_ids()[0], 0, 3), DomainError);
}

TEST(Nielsen, HigmanContainment) {
  const auto d = decompose_nielsen_orbits(psl(8));
  const auto classes = conjugacy_classes(d.host());
  for (const HigmanResult& h : higman_check_all(d, classes)) EXPECT_TRUE(h.ok);
}

TEST(Nielsen, SpectrumFromOrder) {
  const auto f = make_field_of_order(11);
  std::vector<FieldElement> expect = expected_trace_spectrum(*f);
  EXPECT_EQ(trace_spectrum(11), expect);
  EXPECT_THROW(trace_spectrum(10), DomainError);
}

}  // namespace
}  // namespace genlift

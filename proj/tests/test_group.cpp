#include <gtest/gtest.h>

#include <set>

#include "genlift/error.hpp"
#include "genlift/group.hpp"

namespace genlift {
namespace {

void expect_latin_square(const FiniteGroup& g) {
  const std::size_t n = g.order();
  for (Elem a = 0; a < n; ++a) {
    std::vector<bool> row(n), col(n);
    for (Elem b = 0; b < n; ++b) {
      row[g.mul(a, b)] = true;
      col[g.mul(b, a)] = true;
    }
    for (std::size_t i = 0; i < n; ++i) ASSERT_TRUE(row[i] && col[i]) << g.name();
    ASSERT_EQ(g.mul(a, g.inv(a)), g.identity());
    ASSERT_EQ(g.mul(g.identity(), a), a);
  }
}

TEST(Group, Orders) {
  EXPECT_EQ(build_sl2(5).order(), 120u);
  EXPECT_EQ(build_psl2(5).order(), 60u);
  EXPECT_EQ(build_psl2(4).order(), 60u);
  EXPECT_EQ(build_psl2(7).order(), 168u);
  EXPECT_EQ(build_psl2(8).order(), 504u);
  EXPECT_EQ(build_psl2(9).order(), 360u);
  EXPECT_EQ(build_dihedral(6).order(), 12u);
  EXPECT_EQ(build_cyclic(5).order(), 5u);
  EXPECT_EQ(psl2_order(13), 1092u);
  EXPECT_EQ(psl2_order(16), 4080u);
}

TEST(Group, TablesAreLatinSquares) {
  expect_latin_square(build_psl2(5));
  expect_latin_square(build_sl2(3));
  expect_latin_square(build_psl2(8));
  expect_latin_square(build_dihedral(7));
  expect_latin_square(build_cyclic(9));
}

TEST(Group, Associativity) {
  const FiniteGroup g = build_sl2(3);
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      for (Elem c = 0; c < g.order(); ++c)
        ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
}

TEST(Group, MatrixLabelsMatchProducts) {
  const FiniteGroup g = build_psl2(7);
  for (Elem a = 0; a < g.order(); a += 3) {
    for (Elem b = 0; b < g.order(); b += 5) {
      const auto c = g.index_of(psl_canonical(g.matrix(a) * g.matrix(b)).rep());
      ASSERT_TRUE(c);
      ASSERT_EQ(*c, g.mul(a, b));
    }
  }
  EXPECT_EQ(g.matrix(g.identity()), Mat2::identity(*g.field()));
}

TEST(Group, OnDemandProductsMatchDenseTable) {
  GroupOptions sparse;
  sparse.dense_limit = 1;
  for (std::uint64_t q : {5, 8, 9}) {
    const FiniteGroup dense = build_psl2(q);
    const FiniteGroup lazy = build_psl2(q, sparse);
    ASSERT_TRUE(dense.has_dense_table());
    ASSERT_FALSE(lazy.has_dense_table());
    for (Elem a = 0; a < dense.order(); ++a)
      for (Elem b = 0; b < dense.order(); ++b) ASSERT_EQ(dense.mul(a, b), lazy.mul(a, b));
  }
  const FiniteGroup sl = build_sl2(5, sparse);
  const FiniteGroup sl_dense = build_sl2(5);
  for (Elem a = 0; a < sl.order(); ++a) EXPECT_EQ(sl.mul(a, a), sl_dense.mul(a, a));
}

TEST(Group, ClassCounts) {
  EXPECT_EQ(conjugacy_classes(build_sl2(5)).count(), 9u);
  EXPECT_EQ(conjugacy_classes(build_psl2(5)).count(), 5u);
  EXPECT_EQ(conjugacy_classes(build_psl2(4)).count(), 5u);
  EXPECT_EQ(conjugacy_classes(build_psl2(7)).count(), 6u);
  EXPECT_EQ(conjugacy_classes(build_psl2(9)).count(), 7u);
  EXPECT_EQ(conjugacy_classes(build_dihedral(3)).count(), 3u);
  EXPECT_EQ(conjugacy_classes(build_cyclic(7)).count(), 7u);
}

TEST(Group, ClassesArePartitionByConjugation) {
  const FiniteGroup g = build_psl2(7);
  const ConjugacyClasses cc = conjugacy_classes(g);
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); y += 11)
      ASSERT_EQ(cc.class_of[x], cc.class_of[g.conjugate(x, y)]);
}

TEST(Group, OrderFourElementsFormOneSlClass) {
  for (std::uint64_t q : {5, 7, 9, 11}) {
    const FiniteGroup g = build_sl2(q);
    const ConjugacyClasses cc = conjugacy_classes(g);
    std::set<std::uint32_t> classes;
    for (Elem x = 0; x < g.order(); ++x)
      if (g.element_order(x) == 4) classes.insert(cc.class_of[x]);
    EXPECT_EQ(classes.size(), 1u) << "q=" << q;
  }
}

TEST(Group, PossiblePslOrdersMatchElementOrders) {
  for (std::uint64_t q : {4, 5, 7, 8, 9, 11, 13}) {
    const FiniteGroup g = build_psl2(q);
    std::set<std::uint64_t> seen;
    for (Elem x = 0; x < g.order(); ++x) seen.insert(g.element_order(x));
    const auto expect = possible_psl_orders(q);
    EXPECT_EQ(std::vector<std::uint64_t>(seen.begin(), seen.end()), expect) << "q=" << q;
  }
}

TEST(Group, DerivedSeries) {
  auto sizes = [](const FiniteGroup& g) {
    std::vector<std::size_t> out;
    for (const ElementSet& s : derived_series(g)) out.push_back(s.size());
    return out;
  };
  EXPECT_EQ(sizes(build_dihedral(3)), (std::vector<std::size_t>{6, 3, 1}));
  EXPECT_EQ(sizes(build_sl2(3)), (std::vector<std::size_t>{24, 8, 2, 1}));
  EXPECT_EQ(sizes(build_psl2(5)), (std::vector<std::size_t>{60}));
  EXPECT_EQ(derived_length(build_sl2(3)), 3u);
  EXPECT_FALSE(derived_length(build_psl2(7)));
  EXPECT_EQ(derived_length(build_cyclic(1)), 0u);
}

TEST(Group, Generation) {
  const FiniteGroup g = build_dihedral(5);
  EXPECT_EQ(subgroup_closure(g, std::vector<Elem>{}).size(), 1u);
  std::size_t generating = 0;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b) generating += generates(g, a, b);
  // D10: pairs of two distinct reflections, or a rotation with a reflection.
  EXPECT_EQ(generating, 2u * (4 * 5) + 5 * 4);
  const auto gens = generating_set(build_psl2(11));
  const FiniteGroup p = build_psl2(11);
  EXPECT_EQ(subgroup_closure(p, gens).size(), p.order());
}

TEST(Group, MnGeneration) {
  const FiniteGroup g = build_psl2(9);
  EXPECT_FALSE(is_mn_generated(g, 2, 3));
  EXPECT_TRUE(is_mn_generated(g, 3, 3));
  EXPECT_TRUE(is_mn_generated(build_psl2(7), 2, 3));
  EXPECT_TRUE(is_mn_generated(build_psl2(5), 2, 5));
  EXPECT_FALSE(is_mn_generated(build_psl2(5), 2, 2));
  const auto pair = find_mn_generating_pair(g, 3, 3, conjugacy_classes(g));
  ASSERT_TRUE(pair);
  EXPECT_EQ(g.element_order(pair->first), 3u);
  EXPECT_EQ(g.element_order(pair->second), 3u);
  EXPECT_TRUE(generates(g, pair->first, pair->second));
}

TEST(Group, PowersAndOrders) {
  const FiniteGroup g = build_cyclic(12);
  for (Elem x = 0; x < g.order(); ++x) {
    EXPECT_EQ(g.power(x, g.element_order(x)), g.identity());
    EXPECT_EQ(g.power(x, -1), g.inv(x));
  }
}

TEST(Group, FromTable) {
  std::vector<Elem> z3{0, 1, 2, 1, 2, 0, 2, 0, 1};
  const FiniteGroup g = group_from_table("Z3", 3, z3, 0);
  EXPECT_EQ(g.element_order(1), 3u);
  std::vector<Elem> bad{0, 1, 2, 1, 1, 0, 2, 0, 1};
  EXPECT_THROW(group_from_table("bad", 3, bad, 0), InternalError);
  EXPECT_THROW(group_from_table("short", 3, std::vector<Elem>{0, 1}, 0), InternalError);
}

TEST(Group, Errors) {
  EXPECT_THROW(build_psl2(6), DomainError);
  EXPECT_THROW(build_dihedral(0), DomainError);
  EXPECT_THROW(build_cyclic(0), DomainError);
  EXPECT_THROW(possible_psl_orders(10), DomainError);
}

}  // namespace
}  // namespace genlift

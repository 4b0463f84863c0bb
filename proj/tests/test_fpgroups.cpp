#include <gtest/gtest.h>

#include "genlift/error.hpp"
#include "genlift/fpgroups.hpp"
#include "oracles.hpp"

namespace genlift {
namespace {

const char* kMiller = R"(# K = < x, y | x^3, y^3, [x,y]^2 >
gens: x y
rels: x^3 y^3 [x,y]^2
)";

Word w(std::string_view text, const Presentation& p) { return parse_word(text, p); }

TEST(Words, FreeReduction) {
  const Word x = Word::generator(0), y = Word::generator(1);
  EXPECT_TRUE((x * x.inverse()).empty());
  EXPECT_EQ(Word({{0, 1}, {1, 1}, {1, -1}, {0, -1}, {1, 1}}), y);
  EXPECT_EQ(Word::commutator(x, y), x.inverse() * y.inverse() * x * y);
  EXPECT_EQ(Word::commutator(x, y).size(), 4u);
  EXPECT_EQ((x * y).pow(-2), y.inverse() * x.inverse() * y.inverse() * x.inverse());
  EXPECT_EQ(Word::generator(1, -3).size(), 3u);
  EXPECT_TRUE(x.pow(0).empty());
  EXPECT_THROW(Word({{0, 2}}), DomainError);
  EXPECT_THROW(x.pow(std::int64_t{1} << 40), DomainError);
}

TEST(Parser, RelatorSyntax) {
  const Presentation p = parse_presentation(kMiller);
  EXPECT_EQ(p.generator_count, 2u);
  ASSERT_EQ(p.relators.size(), 3u);
  EXPECT_EQ(to_string(p.relators[0], p), "x^3");
  EXPECT_EQ(to_string(p.relators[2], p), "x^-1y^-1xyx^-1y^-1xy");

  const Presentation q = parse_presentation("gens: a, b\nrels: (ab)^-2, [a,b^2]\nrels: a^2 # more\n");
  ASSERT_EQ(q.relators.size(), 3u);
  EXPECT_EQ(to_string(q.relators[0], q), "b^-1a^-1b^-1a^-1");
  EXPECT_EQ(to_string(q.relators[1], q), "a^-1b^-2ab^2");

  EXPECT_EQ(w("y^-1 x", p), Word::generator(1, -1) * Word::generator(0));
  EXPECT_TRUE(w("1", p).empty());
  EXPECT_TRUE(w("  ", p).empty());
  EXPECT_TRUE(w("x x^-1", p).empty());
}

TEST(Parser, ErrorsCarryPosition) {
  auto position = [](std::string_view text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_presentation(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  EXPECT_EQ(position("gens: x y\nrels: x^3 z^2\n"), (std::pair<std::size_t, std::size_t>{2, 11}));
  EXPECT_EQ(position("gens: x y\nrels: x^3 y^3 [x,y^2\n"), (std::pair<std::size_t, std::size_t>{2, 21}));
  EXPECT_EQ(position("rels: x\n"), (std::pair<std::size_t, std::size_t>{1, 1}));
  EXPECT_EQ(position("gens: xy\n"), (std::pair<std::size_t, std::size_t>{1, 7}));
  EXPECT_EQ(position("gens: x x\n").first, 1u);
  EXPECT_EQ(position("gens: x\nfoo: x\n").first, 2u);
  EXPECT_EQ(position("# nothing\n").first, 1u);
  EXPECT_EQ(position("gens: x\nrels: (x\n").first, 2u);
  EXPECT_EQ(position("gens: x\nrels: x^\n").first, 2u);
  const Presentation p = parse_presentation(kMiller);
  EXPECT_THROW(parse_word("x z", p), ParseError);
}

TEST(ToddCoxeter, KnownOrders) {
  const auto r = testing::check_todd_coxeter_known();
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(ToddCoxeter, MillerGroup) {
  const Presentation p = parse_presentation(kMiller);
  const CosetEnumeration e = todd_coxeter(p, {});
  ASSERT_EQ(e.outcome, CosetOutcome::kComplete);
  EXPECT_EQ(e.table.coset_count, 288u);
  EXPECT_GE(e.cosets_defined, 288u);
  EXPECT_TRUE(verify_coset_table(p, e.table));

  const FiniteGroup k = group_from_coset_table(e.table, "K");
  std::vector<std::size_t> sizes;
  for (const ElementSet& s : derived_series(k)) sizes.push_back(s.size());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{288, 32, 2, 1}));
  EXPECT_EQ(abelianization(p), (std::vector<std::int64_t>{3, 3}));
}

TEST(ToddCoxeter, SubgroupIndex) {
  const Presentation p = parse_presentation(kMiller);
  const std::vector<Word> x{w("x", p)};
  const CosetEnumeration e = todd_coxeter(p, x);
  ASSERT_EQ(e.outcome, CosetOutcome::kComplete);
  EXPECT_EQ(e.table.coset_count, 96u);
  EXPECT_TRUE(verify_coset_table(p, e.table));

  const Presentation s3 = parse_presentation("gens: x y\nrels: x^2 y^3 (xy)^2\n");
  const std::vector<Word> y{w("y", s3)};
  EXPECT_EQ(todd_coxeter(s3, y).table.coset_count, 2u);
  const std::vector<Word> all{w("x", s3), w("y", s3)};
  EXPECT_EQ(todd_coxeter(s3, all).table.coset_count, 1u);
}

TEST(ToddCoxeter, Overflow) {
  const Presentation free2 = parse_presentation("gens: x y\n");
  const CosetEnumeration e = todd_coxeter(free2, {}, 1000);
  EXPECT_EQ(e.outcome, CosetOutcome::kOverflow);
  EXPECT_LE(e.cosets_defined, 1000u);
  EXPECT_THROW(group_from_coset_table(e.table), DomainError);

  const Presentation t334 = parse_presentation("gens: x y\nrels: x^3 y^3 (xy)^4\n");
  EXPECT_EQ(todd_coxeter(t334, {}, 5000).outcome, CosetOutcome::kOverflow);
  EXPECT_THROW(todd_coxeter(t334, {}, 0), PreconditionError);
}

TEST(ToddCoxeter, RegularRepresentationMatchesCosetAction) {
  const Presentation p = parse_presentation("gens: x y\nrels: x^2 y^3 (xy)^5\n");
  const CosetEnumeration e = todd_coxeter(p, {});
  const FiniteGroup g = group_from_coset_table(e.table, "A5");
  EXPECT_EQ(g.order(), 60u);
  EXPECT_EQ(conjugacy_classes(g).count(), 5u);
  EXPECT_EQ(derived_series(g).size(), 1u);
}

TEST(Smith, KnownExamples) {
  const SmithForm s = smith_normal_form({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  EXPECT_EQ(s.diagonal, (std::vector<std::int64_t>{2, 6, 12}));
  EXPECT_EQ(s.rank, 3u);
  const SmithForm z = smith_normal_form({{0, 0}, {0, 0}, {0, 0}});
  EXPECT_EQ(z.diagonal, (std::vector<std::int64_t>{0, 0}));
  EXPECT_EQ(z.rank, 0u);
  EXPECT_EQ(smith_normal_form({{4, 6}}).diagonal, (std::vector<std::int64_t>{2}));
  EXPECT_EQ(smith_normal_form({{2, 0}, {0, 3}}).diagonal, (std::vector<std::int64_t>{1, 6}));
}

TEST(Smith, RandomAgainstMinors) {
  const auto r = testing::check_snf_random(1000, 0x517f);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_GE(r.checks, 2000u);
}

TEST(Smith, OverflowIsReported) {
  const std::int64_t big = std::int64_t{1} << 62;
  EXPECT_THROW(smith_normal_form({{1, big}, {big, 1}}), DomainError);
}

TEST(Abelianization, Examples) {
  EXPECT_EQ(abelianization(parse_presentation("gens: x\nrels: x^6\n")),
            (std::vector<std::int64_t>{6}));
  EXPECT_EQ(abelianization(parse_presentation("gens: x y\nrels: x^2 y^3 [x,y]\n")),
            (std::vector<std::int64_t>{6}));
  EXPECT_EQ(abelianization(parse_presentation("gens: x y\n")),
            (std::vector<std::int64_t>{0, 0}));
  EXPECT_EQ(abelianization(parse_presentation("gens: x y\nrels: x^2 y^3 (xy)^5\n")),
            (std::vector<std::int64_t>{}));
  EXPECT_EQ(abelianization(parse_presentation("gens: x y\nrels: x^4\n")),
            (std::vector<std::int64_t>{4, 0}));
}

TEST(Abelianization, InvariantUnderRelatorPermutation) {
  const auto a = abelianization(parse_presentation("gens: x y z\nrels: x^4 y^6 z^2x^2 [x,z]\n"));
  const auto b = abelianization(parse_presentation("gens: x y z\nrels: [x,z] x^2z^2 y^6 x^4\n"));
  const auto c = abelianization(parse_presentation("gens: x y z\nrels: zx^2z y^6 x^4\n"));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

}  // namespace
}  // namespace genlift

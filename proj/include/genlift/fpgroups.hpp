#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genlift/group.hpp"

namespace genlift {

/// One symbol of a word: generator `gen` raised to `exp` = +1 or -1.
struct Letter {
  std::uint32_t gen = 0;
  int exp = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A freely reduced word in the generators of a free group.
class Word {
 public:
  Word() = default;
  /// Freely reduces the letters.
  explicit Word(std::vector<Letter> letters);

  static Word generator(std::uint32_t gen, int exp = 1);
  /// a^-1 b^-1 a b
  static Word commutator(const Word& a, const Word& b);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  Word inverse() const;
  Word pow(std::int64_t e) const;
  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

struct Presentation {
  std::uint32_t generator_count = 0;
  /// Single-character names used by the text format; may be empty.
  std::vector<std::string> generator_names;
  std::vector<Word> relators;

  /// Throws DomainError if a relator uses a generator out of range.
  void validate() const;
};

/// Right action of the generators on cosets. Column 2i is generator i,
/// column 2i+1 its inverse; -1 marks an undefined entry.
struct CosetTable {
  std::uint32_t generator_count = 0;
  std::size_t coset_count = 0;
  std::vector<std::int32_t> action;
  bool complete = false;

  std::int32_t act(std::size_t coset, Letter l) const {
    return action[coset * 2 * generator_count + 2 * l.gen + (l.exp < 0 ? 1 : 0)];
  }
};

enum class CosetOutcome { kComplete, kOverflow };

struct CosetEnumeration {
  CosetOutcome outcome = CosetOutcome::kOverflow;
  /// Compacted table on completion; empty on overflow.
  CosetTable table;
  /// Total coset definitions made, including those later identified.
  std::size_t cosets_defined = 0;
};

/// Coset enumeration by relator tracing (HLT) with coincidence processing.
/// Cosets are defined in a fixed order: relators are scanned from each live
/// coset in turn, then any remaining gaps in its row are filled. Overflow is
/// reported once more than `max_cosets` cosets would have to be defined.
CosetEnumeration todd_coxeter(const Presentation& p,
                              std::span<const Word> subgroup_gens,
                              std::size_t max_cosets = 1'000'000);

/// Every relator traced from every coset returns to that coset, and every
/// column is a permutation.
bool verify_coset_table(const Presentation& p, const CosetTable& t);

/// The group acting regularly on the cosets of the trivial subgroup.
/// Coset 0 is the identity. Throws DomainError for an incomplete table.
FiniteGroup group_from_coset_table(const CosetTable& t, std::string name = "fp");

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct SmithForm {
  /// min(rows, cols) entries d1 | d2 | ... , non-negative, zeros last.
  std::vector<std::int64_t> diagonal;
  std::size_t rank = 0;
};

/// Throws DomainError on 64-bit overflow.
SmithForm smith_normal_form(const IntMatrix& m);

/// Invariant factors of G/G', units dropped, 0 for each infinite cyclic
/// factor.
std::vector<std::int64_t> abelianization(const Presentation& p);

/// Parses
///
///     gens: x y
///     rels: x^3 y^3 [x,y]^2
///
/// Generators are single letters. Relators are separated by whitespace or
/// commas; a relator is a product of factors `atom` or `atom^e`, where an
/// atom is a generator, `(word)` or `[word,word]` (= a^-1 b^-1 a b).
/// `#` starts a comment. Errors carry line and column.
Presentation parse_presentation(std::string_view text);

/// One word over the generators of `p`, same grammar as a relator except
/// that spaces may separate factors. "1" or an empty string is the identity.
Word parse_word(std::string_view text, const Presentation& p);

std::string to_string(const Word& w, const Presentation& p);

}  // namespace genlift

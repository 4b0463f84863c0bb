#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "genlift/field.hpp"
#include "genlift/matrices.hpp"

namespace genlift {

/// Index of an element in a FiniteGroup.
using Elem = std::uint32_t;

/// A subset of the elements of a group, as a bitset over element indices.
class ElementSet {
 public:
  explicit ElementSet(std::size_t universe = 0)
      : words_((universe + 63) / 64, 0), universe_(universe) {}

  /// Returns true if g was not already present.
  bool insert(Elem g) noexcept {
    std::uint64_t& w = words_[g >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (g & 63);
    if (w & bit) return false;
    w |= bit;
    ++count_;
    return true;
  }
  bool contains(Elem g) const noexcept {
    return (words_[g >> 6] >> (g & 63)) & 1;
  }
  std::size_t size() const noexcept { return count_; }
  std::size_t universe() const noexcept { return universe_; }
  std::vector<Elem> elements() const;

  friend bool operator==(const ElementSet& a, const ElementSet& b) noexcept {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t universe_;
  std::size_t count_ = 0;
};

enum class GroupKind {
  kGeneric,
  kSpecialLinear,            // SL(2,q), labels are matrices
  kProjectiveSpecialLinear,  // PSL(2,q), labels are canonical representatives
  kDihedral,
  kCyclic,
};

struct GroupOptions {
  /// Groups up to this order get a dense n x n multiplication table; larger
  /// ones multiply on demand.
  std::size_t dense_limit = 4000;
  std::uint64_t max_field_order = Field::kDefaultMaxOrder;
};

/// A finite group given by indexed elements.
///
/// Immutable after construction. Multiplication is a table lookup when the
/// dense table is present, otherwise it is computed from the element labels
/// (matrix product and index lookup, or the closed form for dihedral and
/// cyclic groups).
class FiniteGroup {
 public:
  /// Everything a builder supplies. `table` is required for kGeneric;
  /// `field` and `matrices` (sorted by key) for the matrix kinds;
  /// `parameter` is m for D_2m and n for C_n.
  struct Data {
    std::string name;
    GroupKind kind = GroupKind::kGeneric;
    std::size_t order = 0;
    Elem identity = 0;
    std::vector<Elem> table;
    std::shared_ptr<const Field> field;
    std::vector<Mat2> matrices;
    std::vector<std::string> labels;
    std::uint64_t parameter = 0;
  };

  explicit FiniteGroup(Data data, std::size_t dense_limit = GroupOptions{}.dense_limit);

  std::size_t order() const noexcept { return n_; }
  Elem identity() const noexcept { return identity_; }

  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * n_ + b];
    return compute_product(a, b);
  }
  Elem inv(Elem a) const noexcept { return inv_[a]; }
  std::uint32_t element_order(Elem a) const noexcept { return orders_[a]; }
  std::span<const std::uint32_t> orders() const noexcept { return orders_; }

  /// a^-1 b^-1 a b
  Elem commutator(Elem a, Elem b) const {
    return mul(mul(inv_[a], inv_[b]), mul(a, b));
  }
  /// x^-1 g x
  Elem conjugate(Elem g, Elem x) const { return mul(mul(inv_[x], g), x); }
  Elem power(Elem g, std::int64_t e) const;

  const std::string& name() const noexcept { return name_; }
  GroupKind kind() const noexcept { return kind_; }
  bool has_dense_table() const noexcept { return !table_.empty(); }
  bool is_matrix_group() const noexcept {
    return kind_ == GroupKind::kSpecialLinear ||
           kind_ == GroupKind::kProjectiveSpecialLinear;
  }
  /// q for matrix groups.
  std::optional<std::uint64_t> q() const noexcept;
  std::uint64_t parameter() const noexcept { return parameter_; }

  const Field* field() const noexcept { return field_.get(); }
  const std::shared_ptr<const Field>& field_ptr() const noexcept { return field_; }
  /// Matrix label of g (the canonical representative for PSL).
  const Mat2& matrix(Elem g) const { return matrices_.at(g); }
  /// Index of a matrix; for PSL the matrix is canonicalized first.
  std::optional<Elem> index_of(const Mat2& m) const;

  std::span<const std::string> labels() const noexcept { return labels_; }

 private:
  Elem compute_product(Elem a, Elem b) const;
  std::optional<Elem> lookup_key(std::uint64_t key) const;

  std::string name_;
  GroupKind kind_;
  std::size_t n_;
  Elem identity_;
  std::uint64_t parameter_;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::vector<std::uint32_t> orders_;
  std::shared_ptr<const Field> field_;
  std::vector<Mat2> matrices_;
  std::vector<std::uint64_t> keys_;
  std::vector<Elem> direct_;  // key -> index for small q, else empty
  std::vector<std::string> labels_;
};

/// All determinant-1 matrices, indexed in lexicographic order.
FiniteGroup build_sl2(std::uint64_t q, const GroupOptions& opts = {});
/// SL(2,q) modulo {I, -I}; element labels are canonical representatives,
/// indexed in lexicographic order.
FiniteGroup build_psl2(std::uint64_t q, const GroupOptions& opts = {});
/// D_2m: indices 0..m-1 are the shifts r^i, m..2m-1 the reflections s r^i.
FiniteGroup build_dihedral(std::uint64_t m, const GroupOptions& opts = {});
FiniteGroup build_cyclic(std::uint64_t n, const GroupOptions& opts = {});
/// A group from a full multiplication table (row-major, n x n).
FiniteGroup group_from_table(std::string name, std::size_t n,
                             std::vector<Elem> table, Elem identity);

/// Least subgroup containing gens (and the identity).
ElementSet subgroup_closure(const FiniteGroup& g, std::span<const Elem> gens);
bool generates(const FiniteGroup& g, Elem a, Elem b);
/// A small deterministic generating set, chosen greedily by index.
std::vector<Elem> generating_set(const FiniteGroup& g);

struct ConjugacyClasses {
  std::vector<std::uint32_t> class_of;
  /// Least index in each class; classes are numbered by representative.
  std::vector<Elem> representatives;

  std::size_t count() const noexcept { return representatives.size(); }
};
ConjugacyClasses conjugacy_classes(const FiniteGroup& g);

/// [H, H] for a subgroup H given as a set.
ElementSet commutator_subgroup(const FiniteGroup& g, const ElementSet& h);
/// G, G', G'', ... up to and excluding the first repeated term.
std::vector<ElementSet> derived_series(const FiniteGroup& g);
/// Length of the derived series, or nullopt if G is not soluble.
std::optional<std::size_t> derived_length(const FiniteGroup& g);

/// m with m = p, m | (q+1)/gcd(2,q-1) or m | (q-1)/gcd(2,q-1).
std::vector<std::uint64_t> possible_psl_orders(std::uint64_t q);

/// Some generating pair (g1, g2) with g1^m = g2^n = 1, searching g1 over
/// conjugacy class representatives only.
std::optional<std::pair<Elem, Elem>> find_mn_generating_pair(
    const FiniteGroup& g, std::uint64_t m, std::uint64_t n,
    const ConjugacyClasses& classes);
bool is_mn_generated(const FiniteGroup& g, std::uint64_t m, std::uint64_t n);

std::uint64_t psl2_order(std::uint64_t q);

}  // namespace genlift

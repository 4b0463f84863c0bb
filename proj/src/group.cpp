#include "genlift/group.hpp"

#include <algorithm>
#include <numeric>

#include "genlift/error.hpp"

namespace genlift {

std::vector<Elem> ElementSet::elements() const {
  std::vector<Elem> out;
  out.reserve(count_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      const int b = __builtin_ctzll(bits);
      out.push_back(static_cast<Elem>(w * 64 + b));
      bits &= bits - 1;
    }
  }
  return out;
}

FiniteGroup::FiniteGroup(Data data, std::size_t dense_limit)
    : name_(std::move(data.name)),
      kind_(data.kind),
      n_(data.order),
      identity_(data.identity),
      parameter_(data.parameter),
      field_(std::move(data.field)),
      matrices_(std::move(data.matrices)),
      labels_(std::move(data.labels)) {
  if (n_ == 0) throw InternalError("group of order zero");
  if (is_matrix_group()) {
    if (!field_ || matrices_.size() != n_) {
      throw InternalError("matrix group without matrix labels");
    }
    keys_.reserve(n_);
    for (const Mat2& m : matrices_) keys_.push_back(m.key());
    if (!std::is_sorted(keys_.begin(), keys_.end())) {
      throw InternalError("matrix labels not in lexicographic order");
    }
    const std::uint64_t q = field_->order();
    const std::uint64_t span = q * q * q * q;
    if (span <= (std::uint64_t{1} << 22)) {
      direct_.assign(span, static_cast<Elem>(n_));
      for (std::size_t i = 0; i < n_; ++i) direct_[keys_[i]] = static_cast<Elem>(i);
    }
    const auto id = index_of(Mat2::identity(*field_));
    if (!id) throw InternalError("identity matrix missing from group");
    identity_ = *id;
  }

  if (!data.table.empty()) {
    if (data.table.size() != n_ * n_) throw InternalError("table size mismatch");
    table_ = std::move(data.table);
  } else if (kind_ == GroupKind::kGeneric) {
    throw InternalError("generic group requires a multiplication table");
  } else if (n_ <= dense_limit) {
    std::vector<Elem> t(n_ * n_);
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        t[a * n_ + b] = compute_product(static_cast<Elem>(a), static_cast<Elem>(b));
      }
    }
    table_ = std::move(t);
  }

  inv_.assign(n_, 0);
  switch (kind_) {
    case GroupKind::kSpecialLinear:
    case GroupKind::kProjectiveSpecialLinear:
      for (std::size_t g = 0; g < n_; ++g) {
        inv_[g] = index_of(mat_inv(matrices_[g])).value();
      }
      break;
    case GroupKind::kDihedral: {
      const std::size_t m = parameter_;
      for (std::size_t g = 0; g < n_; ++g) {
        inv_[g] = static_cast<Elem>(g < m ? (m - g) % m : g);
      }
      break;
    }
    case GroupKind::kCyclic:
      for (std::size_t g = 0; g < n_; ++g) inv_[g] = static_cast<Elem>((n_ - g) % n_);
      break;
    case GroupKind::kGeneric:
      for (std::size_t g = 0; g < n_; ++g) {
        bool found = false;
        for (std::size_t h = 0; h < n_ && !found; ++h) {
          if (mul(static_cast<Elem>(g), static_cast<Elem>(h)) == identity_) {
            inv_[g] = static_cast<Elem>(h);
            found = true;
          }
        }
        if (!found) throw InternalError("element without inverse");
      }
      break;
  }

  orders_.assign(n_, 0);
  for (std::size_t g = 0; g < n_; ++g) {
    Elem x = static_cast<Elem>(g);
    std::uint32_t ord = 1;
    while (x != identity_) {
      x = mul(x, static_cast<Elem>(g));
      if (++ord > n_) throw InternalError("element order exceeds group order");
    }
    orders_[g] = ord;
  }
}

std::optional<Elem> FiniteGroup::lookup_key(std::uint64_t key) const {
  if (!direct_.empty()) {
    if (key >= direct_.size() || direct_[key] == n_) return std::nullopt;
    return direct_[key];
  }
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<Elem>(it - keys_.begin());
}

std::optional<Elem> FiniteGroup::index_of(const Mat2& m) const {
  if (!is_matrix_group() || !(m.field() == *field_)) return std::nullopt;
  if (det(m) != field_->one()) return std::nullopt;
  if (kind_ == GroupKind::kProjectiveSpecialLinear) {
    return lookup_key(psl_canonical(m).rep().key());
  }
  return lookup_key(m.key());
}

std::optional<std::uint64_t> FiniteGroup::q() const noexcept {
  if (!field_) return std::nullopt;
  return field_->order();
}

Elem FiniteGroup::compute_product(Elem a, Elem b) const {
  switch (kind_) {
    case GroupKind::kSpecialLinear:
    case GroupKind::kProjectiveSpecialLinear: {
      const auto r = index_of(matrices_[a] * matrices_[b]);
      if (!r) throw InternalError("matrix product left the group");
      return *r;
    }
    case GroupKind::kDihedral: {
      // shifts r^i at i < m, reflections s r^i at m + i; r^i s = s r^-i
      const std::uint64_t m = parameter_;
      const bool ra = a >= m, rb = b >= m;
      const std::uint64_t i = ra ? a - m : a, j = rb ? b - m : b;
      const std::uint64_t exp = rb ? (m + j - i) % m : (i + j) % m;
      return static_cast<Elem>(ra != rb ? m + exp : exp);
    }
    case GroupKind::kCyclic:
      return static_cast<Elem>((std::uint64_t{a} + b) % n_);
    case GroupKind::kGeneric:
      break;
  }
  throw InternalError("no multiplication rule for group " + name_);
}

Elem FiniteGroup::power(Elem g, std::int64_t e) const {
  if (e < 0) {
    g = inv_[g];
    e = -e;
  }
  Elem r = identity_;
  while (e > 0) {
    if (e & 1) r = mul(r, g);
    g = mul(g, g);
    e >>= 1;
  }
  return r;
}

FiniteGroup build_sl2(std::uint64_t q, const GroupOptions& opts) {
  FiniteGroup::Data d;
  d.field = make_field_of_order(q, opts.max_field_order);
  d.matrices = enumerate_sl2(*d.field);
  d.order = d.matrices.size();
  d.kind = GroupKind::kSpecialLinear;
  d.name = "SL(2," + std::to_string(q) + ")";
  return FiniteGroup(std::move(d), opts.dense_limit);
}

FiniteGroup build_psl2(std::uint64_t q, const GroupOptions& opts) {
  FiniteGroup::Data d;
  d.field = make_field_of_order(q, opts.max_field_order);
  for (const Mat2& m : enumerate_sl2(*d.field)) {
    if (!(mat_neg(m) < m)) d.matrices.push_back(m);
  }
  d.order = d.matrices.size();
  d.kind = GroupKind::kProjectiveSpecialLinear;
  d.name = "PSL(2," + std::to_string(q) + ")";
  return FiniteGroup(std::move(d), opts.dense_limit);
}

FiniteGroup build_dihedral(std::uint64_t m, const GroupOptions& opts) {
  if (m < 1) throw DomainError("dihedral group needs m >= 1");
  FiniteGroup::Data d;
  d.kind = GroupKind::kDihedral;
  d.name = "D(" + std::to_string(2 * m) + ")";
  d.order = 2 * m;
  d.parameter = m;
  d.identity = 0;
  for (std::uint64_t i = 0; i < m; ++i) {
    d.labels.push_back(i == 0 ? "1" : i == 1 ? "r" : "r^" + std::to_string(i));
  }
  for (std::uint64_t i = 0; i < m; ++i) {
    d.labels.push_back(i == 0 ? "s" : i == 1 ? "s*r" : "s*r^" + std::to_string(i));
  }
  return FiniteGroup(std::move(d), opts.dense_limit);
}

FiniteGroup build_cyclic(std::uint64_t n, const GroupOptions& opts) {
  if (n < 1) throw DomainError("cyclic group needs n >= 1");
  FiniteGroup::Data d;
  d.kind = GroupKind::kCyclic;
  d.name = "C(" + std::to_string(n) + ")";
  d.order = n;
  d.parameter = n;
  d.identity = 0;
  return FiniteGroup(std::move(d), opts.dense_limit);
}

FiniteGroup group_from_table(std::string name, std::size_t n,
                             std::vector<Elem> table, Elem identity) {
  if (table.size() != n * n) throw InternalError("table size mismatch");
  // Latin square check
  std::vector<std::uint32_t> seen(n, UINT32_MAX);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Elem x = table[a * n + b];
      if (x >= n || seen[x] == 2 * a) throw InternalError("table row is not a permutation");
      seen[x] = static_cast<std::uint32_t>(2 * a);
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < n; ++a) {
      const Elem x = table[a * n + b];
      if (seen[x] == 2 * b + 1) throw InternalError("table column is not a permutation");
      seen[x] = static_cast<std::uint32_t>(2 * b + 1);
    }
  }
  FiniteGroup::Data d;
  d.name = std::move(name);
  d.order = n;
  d.identity = identity;
  d.table = std::move(table);
  return FiniteGroup(std::move(d));
}

ElementSet subgroup_closure(const FiniteGroup& g, std::span<const Elem> gens) {
  ElementSet set(g.order());
  std::vector<Elem> queue{g.identity()};
  queue.reserve(g.order());
  set.insert(g.identity());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Elem x = queue[i];
    for (const Elem s : gens) {
      const Elem y = g.mul(x, s);
      if (set.insert(y)) queue.push_back(y);
    }
  }
  return set;
}

bool generates(const FiniteGroup& g, Elem a, Elem b) {
  const std::array<Elem, 2> gens{a, b};
  return subgroup_closure(g, gens).size() == g.order();
}

std::vector<Elem> generating_set(const FiniteGroup& g) {
  std::vector<Elem> gens;
  ElementSet span = subgroup_closure(g, gens);
  for (Elem x = 0; x < g.order() && span.size() < g.order(); ++x) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = subgroup_closure(g, gens);
  }
  return gens;
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
  const auto gens = generating_set(g);
  constexpr std::uint32_t kUnset = UINT32_MAX;
  ConjugacyClasses cc;
  cc.class_of.assign(g.order(), kUnset);
  std::vector<Elem> stack;
  for (Elem x = 0; x < g.order(); ++x) {
    if (cc.class_of[x] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(cc.representatives.size());
    cc.representatives.push_back(x);
    cc.class_of[x] = id;
    stack.assign(1, x);
    while (!stack.empty()) {
      const Elem y = stack.back();
      stack.pop_back();
      for (const Elem s : gens) {
        const Elem z = g.conjugate(y, s);
        if (cc.class_of[z] == kUnset) {
          cc.class_of[z] = id;
          stack.push_back(z);
        }
      }
    }
  }
  return cc;
}

ElementSet commutator_subgroup(const FiniteGroup& g, const ElementSet& h) {
  const auto elems = h.elements();
  ElementSet comms(g.order());
  std::vector<Elem> gens;
  for (const Elem x : elems) {
    for (const Elem y : elems) {
      const Elem c = g.commutator(x, y);
      if (comms.insert(c)) gens.push_back(c);
    }
  }
  return subgroup_closure(g, gens);
}

std::vector<ElementSet> derived_series(const FiniteGroup& g) {
  ElementSet all(g.order());
  for (Elem x = 0; x < g.order(); ++x) all.insert(x);
  std::vector<ElementSet> series{std::move(all)};
  while (true) {
    ElementSet next = commutator_subgroup(g, series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

std::optional<std::size_t> derived_length(const FiniteGroup& g) {
  const auto series = derived_series(g);
  if (series.back().size() != 1) return std::nullopt;
  return series.size() - 1;
}

std::vector<std::uint64_t> possible_psl_orders(std::uint64_t q) {
  const auto pk = prime_power(q);
  if (!pk) throw DomainError(std::to_string(q) + " is not a prime power");
  const std::uint64_t d = q % 2 == 1 ? 2 : 1;
  std::vector<std::uint64_t> out{pk->first};
  for (const std::uint64_t n : {(q + 1) / d, (q - 1) / d}) {
    for (std::uint64_t m = 1; m <= n; ++m) {
      if (n % m == 0) out.push_back(m);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::pair<Elem, Elem>> find_mn_generating_pair(
    const FiniteGroup& g, std::uint64_t m, std::uint64_t n,
    const ConjugacyClasses& classes) {
  for (const Elem a : classes.representatives) {
    if (m % g.element_order(a) != 0) continue;
    for (Elem b = 0; b < g.order(); ++b) {
      if (n % g.element_order(b) != 0) continue;
      if (generates(g, a, b)) return std::pair{a, b};
    }
  }
  return std::nullopt;
}

bool is_mn_generated(const FiniteGroup& g, std::uint64_t m, std::uint64_t n) {
  return find_mn_generating_pair(g, m, n, conjugacy_classes(g)).has_value();
}

std::uint64_t psl2_order(std::uint64_t q) {
  return q * (q * q - 1) / (q % 2 == 1 ? 2 : 1);
}

}  // namespace genlift

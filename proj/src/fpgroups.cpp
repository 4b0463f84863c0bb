#include "genlift/fpgroups.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "genlift/error.hpp"

namespace genlift {

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    if (l.exp != 1 && l.exp != -1) throw DomainError("letter exponent must be +1 or -1");
    if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().exp == -l.exp) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word Word::generator(std::uint32_t gen, int exp) {
  return Word({Letter{gen, 1}}).pow(exp);
}

Word Word::commutator(const Word& a, const Word& b) {
  return a.inverse() * b.inverse() * a * b;
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l.exp = -l.exp;
  Word w;
  w.letters_ = std::move(out);
  return w;
}

Word Word::pow(std::int64_t e) const {
  const Word base = e < 0 ? inverse() : *this;
  const std::uint64_t n = e < 0 ? -static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(e);
  if (n > 0 && base.size() > 0 && n > (std::uint64_t{1} << 24) / base.size()) {
    throw DomainError("word power too long");
  }
  Word out;
  for (std::uint64_t i = 0; i < n; ++i) out = out * base;
  return out;
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> all = a.letters_;
  all.insert(all.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(all));
}

void Presentation::validate() const {
  if (!generator_names.empty() && generator_names.size() != generator_count) {
    throw DomainError("generator name count does not match generator count");
  }
  for (const Word& w : relators) {
    for (const Letter& l : w.letters()) {
      if (l.gen >= generator_count) throw DomainError("relator uses an unknown generator");
    }
  }
}

namespace {

struct Overflow {};

std::vector<std::uint32_t> columns_of(const Word& w) {
  std::vector<std::uint32_t> out;
  out.reserve(w.size());
  for (const Letter& l : w.letters()) out.push_back(2 * l.gen + (l.exp < 0 ? 1 : 0));
  return out;
}

class Enumerator {
 public:
  Enumerator(std::uint32_t gens, std::size_t max) : cols_(2 * gens), max_(max) {}

  std::int32_t& at(std::int32_t c, std::uint32_t x) { return table_[std::size_t(c) * cols_ + x]; }
  bool live(std::int32_t c) const { return parent_[c] == c; }
  std::size_t rows() const { return parent_.size(); }
  std::uint32_t cols() const { return cols_; }

  std::int32_t new_coset() {
    if (parent_.size() >= max_ ||
        parent_.size() >= std::size_t(std::numeric_limits<std::int32_t>::max())) {
      throw Overflow{};
    }
    const auto c = static_cast<std::int32_t>(parent_.size());
    table_.resize(table_.size() + cols_, -1);
    parent_.push_back(c);
    return c;
  }

  void define(std::int32_t c, std::uint32_t x) {
    const std::int32_t d = new_coset();
    at(c, x) = d;
    at(d, x ^ 1u) = c;
  }

  void scan_and_fill(std::int32_t alpha, const std::vector<std::uint32_t>& w) {
    if (w.empty()) return;
    std::int32_t f = alpha;
    std::int32_t b = alpha;
    std::ptrdiff_t i = 0;
    auto j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    for (;;) {
      while (i <= j && at(f, w[i]) >= 0) f = at(f, w[i++]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && at(b, w[j] ^ 1u) >= 0) b = at(b, w[j--] ^ 1u);
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        at(f, w[i]) = b;
        at(b, w[i] ^ 1u) = f;
        return;
      }
      define(f, w[i]);
    }
  }

  void coincidence(std::int32_t a, std::int32_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      const std::int32_t g = queue_[qi];
      for (std::uint32_t x = 0; x < cols_; ++x) {
        const std::int32_t d = at(g, x);
        if (d < 0) continue;
        at(d, x ^ 1u) = -1;
        const std::int32_t mu = rep(g);
        const std::int32_t nu = rep(d);
        if (at(mu, x) >= 0) {
          merge(nu, at(mu, x));
        } else if (at(nu, x ^ 1u) >= 0) {
          merge(mu, at(nu, x ^ 1u));
        } else {
          at(mu, x) = nu;
          at(nu, x ^ 1u) = mu;
        }
      }
    }
  }

  CosetTable compact(std::uint32_t gens) {
    std::vector<std::int32_t> relabel(parent_.size(), -1);
    std::size_t n = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (live(static_cast<std::int32_t>(c))) relabel[c] = static_cast<std::int32_t>(n++);
    }
    CosetTable t;
    t.generator_count = gens;
    t.coset_count = n;
    t.action.assign(n * cols_, -1);
    bool complete = true;
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (relabel[c] < 0) continue;
      for (std::uint32_t x = 0; x < cols_; ++x) {
        const std::int32_t d = table_[c * cols_ + x];
        if (d < 0) {
          complete = false;
          continue;
        }
        t.action[std::size_t(relabel[c]) * cols_ + x] = relabel[d];
      }
    }
    t.complete = complete;
    return t;
  }

 private:
  std::int32_t rep(std::int32_t c) {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];
      c = parent_[c];
    }
    return c;
  }

  void merge(std::int32_t a, std::int32_t b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue_.push_back(b);
  }

  std::uint32_t cols_;
  std::size_t max_;
  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> queue_;
};

}  // namespace

CosetEnumeration todd_coxeter(const Presentation& p, std::span<const Word> subgroup_gens,
                              std::size_t max_cosets) {
  p.validate();
  if (max_cosets < 1) throw PreconditionError("max_cosets must be at least 1");
  if (p.generator_count == 0) throw DomainError("presentation has no generators");
  for (const Word& w : subgroup_gens) {
    for (const Letter& l : w.letters()) {
      if (l.gen >= p.generator_count) throw DomainError("subgroup word uses an unknown generator");
    }
  }
  std::vector<std::vector<std::uint32_t>> rels;
  for (const Word& w : p.relators) {
    if (!w.empty()) rels.push_back(columns_of(w));
  }

  Enumerator e(p.generator_count, max_cosets);
  CosetEnumeration result;
  try {
    e.new_coset();
    for (const Word& w : subgroup_gens) e.scan_and_fill(0, columns_of(w));
    for (std::int32_t alpha = 0; static_cast<std::size_t>(alpha) < e.rows(); ++alpha) {
      for (const auto& r : rels) {
        if (!e.live(alpha)) break;
        e.scan_and_fill(alpha, r);
      }
      if (!e.live(alpha)) continue;
      for (std::uint32_t x = 0; x < e.cols(); ++x) {
        if (e.at(alpha, x) < 0) e.define(alpha, x);
      }
    }
  } catch (const Overflow&) {
    result.outcome = CosetOutcome::kOverflow;
    result.cosets_defined = e.rows();
    result.table.generator_count = p.generator_count;
    return result;
  }
  result.cosets_defined = e.rows();
  result.table = e.compact(p.generator_count);
  if (!result.table.complete || !verify_coset_table(p, result.table)) {
    throw InternalError("coset enumeration produced an inconsistent table");
  }
  result.outcome = CosetOutcome::kComplete;
  return result;
}

bool verify_coset_table(const Presentation& p, const CosetTable& t) {
  if (!t.complete) return false;
  const std::size_t cols = 2 * std::size_t{t.generator_count};
  if (t.action.size() != t.coset_count * cols) return false;
  for (std::size_t c = 0; c < t.coset_count; ++c) {
    for (std::size_t x = 0; x < cols; ++x) {
      const std::int32_t d = t.action[c * cols + x];
      if (d < 0 || static_cast<std::size_t>(d) >= t.coset_count) return false;
      if (t.action[std::size_t(d) * cols + (x ^ 1u)] != static_cast<std::int32_t>(c)) return false;
    }
  }
  for (const Word& w : p.relators) {
    for (std::size_t c = 0; c < t.coset_count; ++c) {
      std::size_t cur = c;
      for (const Letter& l : w.letters()) cur = static_cast<std::size_t>(t.act(cur, l));
      if (cur != c) return false;
    }
  }
  return true;
}

FiniteGroup group_from_coset_table(const CosetTable& t, std::string name) {
  if (!t.complete) throw DomainError("coset table is incomplete");
  const std::size_t n = t.coset_count;
  const std::size_t cols = 2 * std::size_t{t.generator_count};
  if (n > 65536) throw BudgetExceeded("coset table too large for a multiplication table");

  // Spanning tree from coset 0: each coset b != 0 is parent(b) * letter(b).
  std::vector<std::int32_t> parent(n, -1), via(n, -1), order;
  order.reserve(n);
  order.push_back(0);
  parent[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto c = static_cast<std::size_t>(order[i]);
    for (std::size_t x = 0; x < cols; ++x) {
      const std::int32_t d = t.action[c * cols + x];
      if (parent[d] < 0) {
        parent[d] = static_cast<std::int32_t>(c);
        via[d] = static_cast<std::int32_t>(x);
        order.push_back(d);
      }
    }
  }
  if (order.size() != n) throw DomainError("coset table is not connected");

  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    Elem* row = table.data() + a * n;
    row[0] = static_cast<Elem>(a);
    for (std::size_t i = 1; i < n; ++i) {
      const auto b = static_cast<std::size_t>(order[i]);
      row[b] = static_cast<Elem>(
          t.action[std::size_t(row[parent[b]]) * cols + static_cast<std::size_t>(via[b])]);
    }
  }
  return group_from_table(std::move(name), static_cast<std::uint32_t>(n), std::move(table), 0);
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("integer overflow in Smith normal form");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw DomainError("integer overflow in Smith normal form");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("integer overflow in Smith normal form");
  return r;
}

std::int64_t checked_abs(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) {
    throw DomainError("integer overflow in Smith normal form");
  }
  return a < 0 ? -a : a;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (const auto& r : m) {
    if (r.size() != cols) throw DomainError("ragged matrix");
  }
  IntMatrix a = m;
  const std::size_t lim = std::min(rows, cols);
  std::size_t t = 0;

  // Moves the smallest non-zero entry of the trailing block (or, when
  // `border_only`, of row t and column t) to (t, t).
  auto pivot = [&](bool border_only) {
    std::size_t bi = rows, bj = cols;
    std::int64_t best = 0;
    auto consider = [&](std::size_t i, std::size_t j) {
      if (a[i][j] == 0) return;
      const std::int64_t v = checked_abs(a[i][j]);
      if (best == 0 || v < best) {
        best = v;
        bi = i;
        bj = j;
      }
    };
    if (border_only) {
      for (std::size_t i = t; i < rows; ++i) consider(i, t);
      for (std::size_t j = t + 1; j < cols; ++j) consider(t, j);
    } else {
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) consider(i, j);
    }
    if (best == 0) return false;
    std::swap(a[t], a[bi]);
    for (auto& r : a) std::swap(r[t], r[bj]);
    return true;
  };

  while (t < lim && pivot(false)) {
    for (;;) {
      bool clean = true;
      const std::int64_t p = a[t][t];
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const std::int64_t q = a[i][t] / p;
        for (std::size_t j = t; j < cols; ++j) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[t][j]));
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const std::int64_t q = a[t][j] / p;
        for (std::size_t i = t; i < rows; ++i) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[i][t]));
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        pivot(true);
        continue;
      }
      // Row and column t are clear; enforce divisibility of the rest.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % p != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] = checked_add(a[t][j], a[bad][j]);
    }
    a[t][t] = checked_abs(a[t][t]);
    ++t;
  }

  SmithForm out;
  out.rank = t;
  out.diagonal.resize(lim, 0);
  for (std::size_t i = 0; i < t; ++i) out.diagonal[i] = a[i][i];
  return out;
}

std::vector<std::int64_t> abelianization(const Presentation& p) {
  p.validate();
  IntMatrix m;
  for (const Word& w : p.relators) {
    std::vector<std::int64_t> row(p.generator_count, 0);
    for (const Letter& l : w.letters()) row[l.gen] += l.exp;
    m.push_back(std::move(row));
  }
  const SmithForm s = smith_normal_form(m);
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.diagonal[i] != 1) out.push_back(s.diagonal[i]);
  }
  for (std::size_t i = s.rank; i < p.generator_count; ++i) out.push_back(0);
  return out;
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view line, std::size_t line_no, std::size_t col_offset,
             const std::vector<std::string>& names)
      : s_(line), line_(line_no), offset_(col_offset), names_(names) {}

  bool at_end() const { return pos_ >= s_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void skip_separators() {
    while (!at_end() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == ',')) ++pos_;
  }

  // A product of factors. At depth 0 whitespace and commas end the word.
  Word word(int depth) {
    Word w;
    for (;;) {
      if (depth > 0) skip_space();
      if (at_end()) break;
      const char c = s_[pos_];
      if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '(' || c == '[')) break;
      w = w * factor(depth);
    }
    return w;
  }

  Word relator() {
    const std::size_t start = pos_;
    Word w = word(0);
    if (pos_ == start) fail("expected a generator, '(' or '['");
    if (!at_end() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != ',') {
      fail(std::string("unexpected '") + s_[pos_] + "'");
    }
    return w;
  }

  // A single word in which whitespace is only a separator between factors.
  Word whole() {
    Word w = word(1);
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return w;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, offset_ + pos_ + 1);
  }

 private:
  Word factor(int depth) {
    Word base = atom(depth);
    if (depth > 0) skip_space();
    if (!at_end() && s_[pos_] == '^') {
      ++pos_;
      if (depth > 0) skip_space();
      bool neg = false;
      if (!at_end() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
      const std::size_t start = pos_;
      std::int64_t e = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + (s_[pos_++] - '0');
        if (e > 1'000'000) fail("exponent too large");
      }
      if (pos_ == start) {
        pos_ = start;
        fail("expected an integer exponent");
      }
      try {
        base = base.pow(neg ? -e : e);
      } catch (const DomainError& err) {
        fail(err.what());
      }
    }
    return base;
  }

  Word atom(int depth) {
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Word inner = word(depth + 1);
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      Word a = word(depth + 1);
      expect(',');
      Word b = word(depth + 1);
      expect(']');
      return Word::commutator(a, b);
    }
    const auto it = std::find(names_.begin(), names_.end(), std::string(1, c));
    if (it == names_.end()) fail(std::string("unknown generator '") + c + "'");
    ++pos_;
    return Word::generator(static_cast<std::uint32_t>(it - names_.begin()));
  }

  void expect(char c) {
    skip_space();
    if (at_end() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t offset_;
  const std::vector<std::string>& names_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  Presentation p;
  bool have_gens = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("expected 'gens:' or 'rels:'", line_no, 1);
    }
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view body = line.substr(colon + 1);
    const std::size_t body_col = colon + 1;

    if (key == "gens") {
      if (have_gens) throw ParseError("duplicate 'gens:' line", line_no, 1);
      have_gens = true;
      for (std::size_t i = 0; i < body.size(); ++i) {
        const char c = body[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') continue;
        if (!std::isalpha(static_cast<unsigned char>(c)) ||
            (i + 1 < body.size() && std::isalnum(static_cast<unsigned char>(body[i + 1])))) {
          throw ParseError("generator names must be single letters", line_no, body_col + i + 1);
        }
        const std::string name(1, c);
        if (std::find(p.generator_names.begin(), p.generator_names.end(), name) !=
            p.generator_names.end()) {
          throw ParseError("duplicate generator '" + name + "'", line_no, body_col + i + 1);
        }
        p.generator_names.push_back(name);
      }
      if (p.generator_names.empty()) throw ParseError("no generators", line_no, body_col + 1);
      p.generator_count = static_cast<std::uint32_t>(p.generator_names.size());
    } else if (key == "rels") {
      if (!have_gens) throw ParseError("'rels:' before 'gens:'", line_no, 1);
      WordParser wp(body, line_no, body_col, p.generator_names);
      for (;;) {
        wp.skip_separators();
        if (wp.at_end()) break;
        p.relators.push_back(wp.relator());
      }
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line_no, 1);
    }
  }
  if (!have_gens) throw ParseError("missing 'gens:' line", line_no == 0 ? 1 : line_no, 1);
  return p;
}

Word parse_word(std::string_view text, const Presentation& p) {
  std::size_t lead = 0;
  while (lead < text.size() && std::isspace(static_cast<unsigned char>(text[lead]))) ++lead;
  const std::string_view body = trim(text);
  if (body.empty() || body == "1") return Word{};
  WordParser wp(body, 1, lead, p.generator_names);
  return wp.whole();
}

std::string to_string(const Word& w, const Presentation& p) {
  if (w.empty()) return "1";
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const std::string name = ls[i].gen < p.generator_names.size()
                                 ? p.generator_names[ls[i].gen]
                                 : "g" + std::to_string(ls[i].gen);
    const auto run = static_cast<std::int64_t>(j - i) * ls[i].exp;
    out += name;
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

}  // namespace genlift

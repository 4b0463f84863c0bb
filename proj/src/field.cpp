#include "genlift/field.hpp"

#include <algorithm>

#include "genlift/error.hpp"

namespace genlift {

namespace {

// Dense polynomials over GF(p), lowest degree first, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  return pow_mod(a, p - 2, p);
}

// a mod f, f monic.
Poly reduce(Poly a, const Poly& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  trim(a);
  while (a.size() > k) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - k;
    for (std::size_t j = 0; j < k; ++j) {
      a[shift + j] = (a[shift + j] + (p - c) * f[j]) % p;
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly mul_poly(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  trim(r);
  return r;
}

Poly pow_poly_mod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly r = reduce({1}, f, p);
  base = reduce(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) r = reduce(mul_poly(r, base, p), f, p);
    base = reduce(mul_poly(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

Poly sub_poly(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Poly gcd_poly(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b for non-monic b
    const std::uint64_t lead_inv = inv_mod(b.back(), p);
    Poly monic_b = b;
    for (auto& c : monic_b) c = c * lead_inv % p;
    a = reduce(std::move(a), monic_b, p);
    std::swap(a, b);
  }
  return a;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(
    std::uint64_t q) noexcept {
  if (q < 2) return std::nullopt;
  std::uint64_t p = q;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1 || p > UINT32_MAX) return std::nullopt;
  return std::pair{static_cast<std::uint32_t>(p), k};
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> low_coeffs) {
  const std::size_t k = low_coeffs.size();
  if (k == 0) return false;
  if (k == 1) return true;
  Poly f(low_coeffs.begin(), low_coeffs.end());
  for (auto& c : f) c %= p;
  f.push_back(1);
  const Poly x{0, 1};

  // xp[i] = x^(p^i) mod f
  std::vector<Poly> xp{reduce(x, f, p)};
  for (std::size_t i = 1; i <= k; ++i) {
    xp.push_back(pow_poly_mod(xp.back(), p, f, p));
  }
  if (sub_poly(xp[k], reduce(x, f, p), p) != Poly{}) return false;
  for (std::uint64_t r : prime_factors(k)) {
    const Poly g = gcd_poly(f, sub_poly(xp[k / r], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field::Field(std::uint32_t p, std::uint32_t k, std::uint64_t max_order)
    : p_(p), k_(k) {
  if (!is_prime(p)) {
    throw DomainError("field characteristic " + std::to_string(p) +
                      " is not prime");
  }
  if (k == 0) throw DomainError("field degree must be positive");
  std::uint64_t q = 1;
  pow_p_.push_back(1);
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > max_order || q > UINT32_MAX) {
      throw BudgetExceeded("field order " + std::to_string(p) + "^" +
                           std::to_string(k) + " exceeds size bound " +
                           std::to_string(max_order));
    }
    pow_p_.push_back(static_cast<std::uint32_t>(q));
  }
  q_ = static_cast<std::uint32_t>(q);

  if (k_ == 1) {
    modulus_ = {0};
  } else {
    // Lexicographic order on (c0, ..., c_{k-1}) is the order of codes.
    for (std::uint32_t code = 0; code < q_ && modulus_.empty(); ++code) {
      const auto c = coeffs(FieldElement{code});
      if (is_irreducible(p_, c)) modulus_ = c;
    }
    if (modulus_.empty()) {
      throw InternalError("no irreducible polynomial of degree " +
                          std::to_string(k) + " over GF(" +
                          std::to_string(p) + ")");
    }
  }

  // Least primitive element, found with table-free arithmetic.
  const auto factors = prime_factors(q_ - 1);
  auto pow_ref = [&](FieldElement a, std::uint64_t e) {
    FieldElement r = one();
    while (e > 0) {
      if (e & 1) r = mul_reference(r, a);
      a = mul_reference(a, a);
      e >>= 1;
    }
    return r;
  };
  std::optional<FieldElement> gen;
  for (std::uint32_t code = 1; code < q_ && !gen; ++code) {
    const FieldElement g{code};
    const bool primitive = std::all_of(
        factors.begin(), factors.end(),
        [&](std::uint64_t r) { return pow_ref(g, (q_ - 1) / r) != one(); });
    if (primitive) gen = g;
  }
  if (!gen) throw InternalError("no primitive element found");

  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  FieldElement x = one();
  for (std::uint32_t i = 0; i + 1 < q_; ++i) {
    exp_[i] = x.code;
    log_[x.code] = i;
    x = mul_reference(x, *gen);
  }
}

FieldElement Field::from_int(std::int64_t n) const noexcept {
  const std::int64_t p = p_;
  const auto r = static_cast<std::uint32_t>(((n % p) + p) % p);
  return {r * pow_p_[k_ - 1]};
}

FieldElement Field::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() > k_) throw DomainError("too many coefficients for field");
  std::uint32_t code = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    const std::uint32_t ci = i < c.size() ? c[i] : 0;
    if (ci >= p_) throw DomainError("coefficient not reduced mod p");
    code += ci * pow_p_[k_ - 1 - i];
  }
  return {code};
}

FieldElement Field::element(std::uint32_t code) const {
  if (code >= q_) throw DomainError("field element code out of range");
  return {code};
}

std::vector<std::uint32_t> Field::coeffs(FieldElement a) const {
  std::vector<std::uint32_t> c(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    c[i] = (a.code / pow_p_[k_ - 1 - i]) % p_;
  }
  return c;
}

FieldElement Field::add(FieldElement a, FieldElement b) const noexcept {
  if (k_ == 1) {
    const std::uint32_t s = a.code + b.code;
    return {s >= p_ ? s - p_ : s};
  }
  // Digit-wise, no carries; digit position does not matter for addition.
  std::uint32_t x = a.code, y = b.code, out = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint32_t d = x % p_ + y % p_;
    if (d >= p_) d -= p_;
    out += d * pow_p_[i];
    x /= p_;
    y /= p_;
  }
  return {out};
}

FieldElement Field::neg(FieldElement a) const noexcept {
  if (k_ == 1) return {a.code == 0 ? 0 : p_ - a.code};
  std::uint32_t x = a.code, out = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    const std::uint32_t d = x % p_;
    out += (d == 0 ? 0 : p_ - d) * pow_p_[i];
    x /= p_;
  }
  return {out};
}

FieldElement Field::sub(FieldElement a, FieldElement b) const noexcept {
  return add(a, neg(b));
}

FieldElement Field::mul_reference(FieldElement a, FieldElement b) const {
  if (k_ == 1) {
    return {static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % p_)};
  }
  const auto ca = coeffs(a);
  const auto cb = coeffs(b);
  Poly f(modulus_.begin(), modulus_.end());
  f.push_back(1);
  Poly r = reduce(mul_poly(Poly(ca.begin(), ca.end()), Poly(cb.begin(), cb.end()), p_),
                  f, p_);
  std::vector<std::uint32_t> out(r.begin(), r.end());
  return from_coeffs(out);
}

FieldElement Field::inv(FieldElement a) const {
  if (a.code == 0) throw DomainError("inverse of zero");
  const std::uint32_t l = log_[a.code];
  return {exp_[l == 0 ? 0 : q_ - 1 - l]};
}

FieldElement Field::div(FieldElement a, FieldElement b) const {
  return mul(a, inv(b));
}

FieldElement Field::pow(FieldElement a, std::int64_t e) const {
  if (a.code == 0) {
    if (e < 0) throw DomainError("zero raised to a negative power");
    return e == 0 ? one() : zero();
  }
  const std::int64_t n = q_ - 1;
  const std::int64_t l = static_cast<std::int64_t>(log_[a.code]);
  // (l * e) mod n without overflow for |e| < 2^63
  const std::int64_t em = ((e % n) + n) % n;
  return {exp_[static_cast<std::size_t>(l * em % n)]};
}

bool Field::is_square(FieldElement a) const noexcept {
  if (p_ == 2 || a.code == 0) return true;
  return log_[a.code] % 2 == 0;
}

FieldElement Field::frobenius(FieldElement a) const noexcept {
  return pow(a, p_);
}

FieldElement Field::primitive_element() const noexcept {
  return {exp_[q_ > 2 ? 1 : 0]};
}

std::string Field::to_string(FieldElement a) const {
  const auto c = coeffs(a);
  if (k_ == 1) return std::to_string(c[0]);
  std::string out;
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += '+';
    out += std::to_string(c[i]);
    if (i == 1) out += "*x";
    if (i > 1) out += "*x^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::shared_ptr<const Field> make_field(std::uint32_t p, std::uint32_t k,
                                        std::uint64_t max_order) {
  return std::make_shared<const Field>(p, k, max_order);
}

std::shared_ptr<const Field> make_field_of_order(std::uint64_t q,
                                                 std::uint64_t max_order) {
  const auto pk = prime_power(q);
  if (!pk) throw DomainError(std::to_string(q) + " is not a prime power");
  return make_field(pk->first, pk->second, max_order);
}

std::vector<FieldElement> squares_plus_two(const Field& f) {
  std::vector<FieldElement> out;
  const FieldElement two = f.from_int(2);
  for (std::uint32_t c = 0; c < f.order(); ++c) {
    const FieldElement s{c};
    out.push_back(f.add(f.mul(s, s), two));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace genlift

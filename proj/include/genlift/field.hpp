#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace genlift {

/// An element of GF(p^k).
///
/// The payload is the rank of the coefficient sequence (c0, c1, ..., c_{k-1})
/// in lexicographic order, i.e. code = c0 * p^(k-1) + c1 * p^(k-2) + ... .
/// Comparing codes therefore compares coefficient sequences
/// lexicographically, which is the total order used for canonical matrix
/// representatives and canonical orbit representatives.
struct FieldElement {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// GF(p^k) = GF(p)[x] / (x^k + c_{k-1} x^{k-1} + ... + c0), where the
/// modulus is the lexicographically least monic irreducible of degree k.
///
/// A Field is immutable after construction. Multiplication goes through
/// discrete log / antilog tables built from the least primitive element;
/// mul_reference() performs the same product by polynomial arithmetic.
class Field {
 public:
  static constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t{1} << 16;

  /// Throws DomainError for a non-prime p or k == 0, BudgetExceeded if
  /// p^k > max_order.
  Field(std::uint32_t p, std::uint32_t k,
        std::uint64_t max_order = kDefaultMaxOrder);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return k_; }
  std::uint32_t order() const noexcept { return q_; }

  /// c0..c_{k-1} of the monic modulus. For k = 1 this is {0}.
  std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }

  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return {pow_p_[k_ - 1]}; }
  /// The image of an integer under Z -> GF(p) -> GF(q).
  FieldElement from_int(std::int64_t n) const noexcept;
  FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
  /// Checked conversion from a code in [0, q).
  FieldElement element(std::uint32_t code) const;
  std::vector<std::uint32_t> coeffs(FieldElement a) const;

  FieldElement add(FieldElement a, FieldElement b) const noexcept;
  FieldElement sub(FieldElement a, FieldElement b) const noexcept;
  FieldElement neg(FieldElement a) const noexcept;
  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    if (a.code == 0 || b.code == 0) return {0};
    std::uint32_t e = log_[a.code] + log_[b.code];
    if (e >= q_ - 1) e -= q_ - 1;
    return {exp_[e]};
  }
  /// Polynomial product reduced by the modulus, without lookup tables.
  FieldElement mul_reference(FieldElement a, FieldElement b) const;
  /// Throws DomainError for a == 0.
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const;
  /// Throws DomainError for a == 0 with e < 0.
  FieldElement pow(FieldElement a, std::int64_t e) const;
  bool is_square(FieldElement a) const noexcept;
  /// x -> x^p.
  FieldElement frobenius(FieldElement a) const noexcept;
  /// The least primitive element (generator of the multiplicative group).
  FieldElement primitive_element() const noexcept;

  /// "c0" for prime fields, "c0+c1*x+c2*x^2" (zero terms omitted) otherwise.
  std::string to_string(FieldElement a) const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.p_ == b.p_ && a.k_ == b.k_;
  }

 private:
  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^0 .. p^k
  std::vector<std::uint32_t> exp_;    // exp_[i] = g^i, i in [0, q-1)
  std::vector<std::uint32_t> log_;    // log_[exp_[i]] = i
};

std::shared_ptr<const Field> make_field(
    std::uint32_t p, std::uint32_t k,
    std::uint64_t max_order = Field::kDefaultMaxOrder);

/// Field of order q; throws DomainError unless q is a prime power.
std::shared_ptr<const Field> make_field_of_order(
    std::uint64_t q, std::uint64_t max_order = Field::kDefaultMaxOrder);

/// { s^2 + 2 : s in GF(q) }, sorted by code.
std::vector<FieldElement> squares_plus_two(const Field& f);

bool is_prime(std::uint64_t n) noexcept;
/// (p, k) with q = p^k, or nullopt if q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(
    std::uint64_t q) noexcept;
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Monic polynomial over GF(p) given by low-order coefficients c0..c_{k-1}.
/// Rabin's test: x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1 for
/// every prime r | k.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> low_coeffs);

}  // namespace genlift

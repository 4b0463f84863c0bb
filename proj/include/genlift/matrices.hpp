#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "genlift/field.hpp"

namespace genlift {

/// A 2x2 matrix over a finite field, entries stored row-major (a b; c d).
///
/// The matrix keeps a non-owning pointer to its field; the field must
/// outlive it. Groups built by groupcore hold the owning shared_ptr.
class Mat2 {
 public:
  Mat2(const Field& f, FieldElement a, FieldElement b, FieldElement c,
       FieldElement d) noexcept
      : field_(&f), e_{a, b, c, d} {}

  static Mat2 identity(const Field& f) noexcept {
    return {f, f.one(), f.zero(), f.zero(), f.one()};
  }
  /// Entries given as integers, reduced into the prime subfield.
  static Mat2 from_ints(const Field& f, std::int64_t a, std::int64_t b,
                        std::int64_t c, std::int64_t d) noexcept {
    return {f, f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d)};
  }

  const Field& field() const noexcept { return *field_; }
  FieldElement a() const noexcept { return e_[0]; }
  FieldElement b() const noexcept { return e_[1]; }
  FieldElement c() const noexcept { return e_[2]; }
  FieldElement d() const noexcept { return e_[3]; }
  const std::array<FieldElement, 4>& entries() const noexcept { return e_; }

  /// Packs the entry codes into one integer; ordering of keys is the
  /// lexicographic ordering of entry tuples.
  std::uint64_t key() const noexcept {
    const std::uint64_t q = field_->order();
    return ((e_[0].code * q + e_[1].code) * q + e_[2].code) * q + e_[3].code;
  }

  friend bool operator==(const Mat2& x, const Mat2& y) noexcept {
    return x.e_ == y.e_ && *x.field_ == *y.field_;
  }
  /// Lexicographic on (a, b, c, d); only meaningful over a common field.
  friend std::strong_ordering operator<=>(const Mat2& x, const Mat2& y) noexcept {
    return x.e_ <=> y.e_;
  }

 private:
  const Field* field_;
  std::array<FieldElement, 4> e_;
};

/// Throws FieldMismatch if the operands live over different fields.
Mat2 mat_mul(const Mat2& x, const Mat2& y);
inline Mat2 operator*(const Mat2& x, const Mat2& y) { return mat_mul(x, y); }
Mat2 mat_neg(const Mat2& x) noexcept;
FieldElement det(const Mat2& x) noexcept;
/// Inverse of a determinant-1 matrix (the adjugate). Throws DomainError
/// if det(x) != 1.
Mat2 mat_inv(const Mat2& x);
/// Inverse of any invertible matrix.
Mat2 gl_inv(const Mat2& x);
FieldElement trace(const Mat2& x) noexcept;
Mat2 mat_pow(Mat2 x, std::uint64_t e);
/// Entrywise x -> x^p.
Mat2 mat_frobenius(const Mat2& x) noexcept;
/// x^-1 y^-1 x y for determinant-1 matrices.
Mat2 commutator(const Mat2& x, const Mat2& y);
/// Least n >= 1 with x^n = I, by iterated multiplication.
std::uint64_t element_order_sl(const Mat2& x);

std::string to_string(const Mat2& x);

/// Canonical representative of a coset {M, -M} of the centre of SL(2,q):
/// the lexicographically smaller of the two entry tuples.
class PslElement {
 public:
  const Mat2& rep() const noexcept { return rep_; }
  const Field& field() const noexcept { return rep_.field(); }

  friend bool operator==(const PslElement&, const PslElement&) = default;

 private:
  explicit PslElement(const Mat2& rep) noexcept : rep_(rep) {}
  friend PslElement psl_canonical(const Mat2& x);

  Mat2 rep_;
};

/// Throws DomainError unless det(x) = 1.
PslElement psl_canonical(const Mat2& x);

/// [[h1, h2]] = [R(h1), R(h2)] in SL(2,q); independent of the sign of either
/// representative.
Mat2 bracket(const PslElement& h1, const PslElement& h2);
/// tau(h1, h2) = tr [[h1, h2]].
FieldElement trace_invariant(const PslElement& h1, const PslElement& h2);

/// All of SL(2,q), sorted lexicographically by entry tuple.
std::vector<Mat2> enumerate_sl2(const Field& f);

}  // namespace genlift

#include "genlift/matrices.hpp"

#include <algorithm>

#include "genlift/error.hpp"

namespace genlift {

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  const Field& f = x.field();
  if (&f != &y.field() && !(f == y.field())) {
    throw FieldMismatch("matrix product over different fields");
  }
  return {f, f.add(f.mul(x.a(), y.a()), f.mul(x.b(), y.c())),
          f.add(f.mul(x.a(), y.b()), f.mul(x.b(), y.d())),
          f.add(f.mul(x.c(), y.a()), f.mul(x.d(), y.c())),
          f.add(f.mul(x.c(), y.b()), f.mul(x.d(), y.d()))};
}

Mat2 mat_neg(const Mat2& x) noexcept {
  const Field& f = x.field();
  return {f, f.neg(x.a()), f.neg(x.b()), f.neg(x.c()), f.neg(x.d())};
}

FieldElement det(const Mat2& x) noexcept {
  const Field& f = x.field();
  return f.sub(f.mul(x.a(), x.d()), f.mul(x.b(), x.c()));
}

Mat2 mat_inv(const Mat2& x) {
  const Field& f = x.field();
  if (det(x) != f.one()) {
    throw DomainError("mat_inv requires determinant 1, got det " +
                      f.to_string(det(x)));
  }
  return {f, x.d(), f.neg(x.b()), f.neg(x.c()), x.a()};
}

Mat2 gl_inv(const Mat2& x) {
  const Field& f = x.field();
  const FieldElement dt = det(x);
  if (dt == f.zero()) throw DomainError("singular matrix has no inverse");
  const FieldElement s = f.inv(dt);
  return {f, f.mul(s, x.d()), f.mul(s, f.neg(x.b())), f.mul(s, f.neg(x.c())),
          f.mul(s, x.a())};
}

FieldElement trace(const Mat2& x) noexcept {
  return x.field().add(x.a(), x.d());
}

Mat2 mat_pow(Mat2 x, std::uint64_t e) {
  Mat2 r = Mat2::identity(x.field());
  while (e > 0) {
    if (e & 1) r = mat_mul(r, x);
    x = mat_mul(x, x);
    e >>= 1;
  }
  return r;
}

Mat2 mat_frobenius(const Mat2& x) noexcept {
  const Field& f = x.field();
  return {f, f.frobenius(x.a()), f.frobenius(x.b()), f.frobenius(x.c()),
          f.frobenius(x.d())};
}

Mat2 commutator(const Mat2& x, const Mat2& y) {
  return mat_inv(x) * mat_inv(y) * x * y;
}

std::uint64_t element_order_sl(const Mat2& x) {
  const Field& f = x.field();
  if (det(x) != f.one()) throw DomainError("element_order_sl requires det 1");
  const std::uint64_t q = f.order();
  const std::uint64_t bound = q * (q * q - 1);
  const Mat2 id = Mat2::identity(f);
  Mat2 y = x;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (y == id) return n;
    y = y * x;
  }
  throw InternalError("element order exceeds |SL(2,q)|");
}

std::string to_string(const Mat2& x) {
  const Field& f = x.field();
  return "[[" + f.to_string(x.a()) + "," + f.to_string(x.b()) + "],[" +
         f.to_string(x.c()) + "," + f.to_string(x.d()) + "]]";
}

PslElement psl_canonical(const Mat2& x) {
  if (det(x) != x.field().one()) {
    throw DomainError("psl_canonical requires det 1");
  }
  const Mat2 y = mat_neg(x);
  return PslElement(y < x ? y : x);
}

Mat2 bracket(const PslElement& h1, const PslElement& h2) {
  return commutator(h1.rep(), h2.rep());
}

FieldElement trace_invariant(const PslElement& h1, const PslElement& h2) {
  return trace(bracket(h1, h2));
}

std::vector<Mat2> enumerate_sl2(const Field& f) {
  const std::uint32_t q = f.order();
  std::vector<Mat2> out;
  out.reserve(static_cast<std::size_t>(q) * (q * q - 1));
  const FieldElement one = f.one();
  for (std::uint32_t ia = 0; ia < q; ++ia) {
    const FieldElement a{ia};
    for (std::uint32_t ib = 0; ib < q; ++ib) {
      const FieldElement b{ib};
      if (a != f.zero()) {
        // d = (1 + bc) / a
        const FieldElement ainv = f.inv(a);
        for (std::uint32_t ic = 0; ic < q; ++ic) {
          const FieldElement c{ic};
          out.emplace_back(f, a, b, c, f.mul(f.add(one, f.mul(b, c)), ainv));
        }
      } else if (b != f.zero()) {
        // -bc = 1
        const FieldElement c = f.neg(f.inv(b));
        for (std::uint32_t id = 0; id < q; ++id) {
          out.emplace_back(f, a, b, c, FieldElement{id});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace genlift

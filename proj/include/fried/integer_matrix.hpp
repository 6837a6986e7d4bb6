#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace fried {

/// 2x2 integer matrix, row-major. Arithmetic is checked against int64
/// overflow and throws CapacityError.
struct Mat2i {
  std::array<std::int64_t, 4> m{1, 0, 0, 1};

  constexpr Mat2i() = default;
  constexpr Mat2i(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) : m{a, b, c, d} {}

  std::int64_t operator()(int i, int j) const { return m[2 * i + j]; }
  std::int64_t& operator()(int i, int j) { return m[2 * i + j]; }

  static constexpr Mat2i identity() { return {1, 0, 0, 1}; }

  std::int64_t det() const;
  std::int64_t trace() const;
  Mat2i transposed() const { return {m[0], m[2], m[1], m[3]}; }
  /// Inverse of a unimodular matrix; throws ValidationError otherwise.
  Mat2i unimodular_inverse() const;

  friend bool operator==(const Mat2i&, const Mat2i&) = default;
  std::string str() const;
};

Mat2i operator*(const Mat2i& x, const Mat2i& y);
Mat2i operator-(const Mat2i& x, const Mat2i& y);
Mat2i power(const Mat2i& x, int n);
/// x^n with entries reduced into [0, mod).
Mat2i power_mod(const Mat2i& x, std::int64_t n, std::int64_t mod);

/// Smith normal form U * M * V = diag(d1, d2), U and V unimodular,
/// d1, d2 >= 0 and d1 | d2.
struct SmithForm {
  Mat2i u;
  Mat2i v;
  std::int64_t d1 = 0;
  std::int64_t d2 = 0;
};

SmithForm smith_normal_form(const Mat2i& m);

}  // namespace fried

#include "fried/integer_matrix.hpp"

#include <cstdlib>
#include <sstream>
#include <utility>

#include "fried/errors.hpp"
#include "fried/numeric.hpp"

namespace fried {

std::int64_t Mat2i::det() const { return checked_sub(checked_mul(m[0], m[3]), checked_mul(m[1], m[2])); }

std::int64_t Mat2i::trace() const { return checked_add(m[0], m[3]); }

Mat2i Mat2i::unimodular_inverse() const {
  const auto dt = det();
  if (dt != 1 && dt != -1) throw ValidationError("matrix is not unimodular: " + str());
  return {m[3] * dt, -m[1] * dt, -m[2] * dt, m[0] * dt};
}

std::string Mat2i::str() const {
  std::ostringstream os;
  os << "[[" << m[0] << "," << m[1] << "],[" << m[2] << "," << m[3] << "]]";
  return os.str();
}

Mat2i operator*(const Mat2i& x, const Mat2i& y) {
  Mat2i r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r(i, j) = checked_add(checked_mul(x(i, 0), y(0, j)), checked_mul(x(i, 1), y(1, j)));
  return r;
}

Mat2i operator-(const Mat2i& x, const Mat2i& y) {
  Mat2i r;
  for (int k = 0; k < 4; ++k) r.m[k] = checked_sub(x.m[k], y.m[k]);
  return r;
}

Mat2i power(const Mat2i& x, int n) {
  if (n < 0) throw ValidationError("negative matrix power");
  Mat2i r = Mat2i::identity();
  Mat2i b = x;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n > 0) b = b * b;
  }
  return r;
}

namespace {

Mat2i mul_mod(const Mat2i& x, const Mat2i& y, std::int64_t mod) {
  Mat2i r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = mul_add_mod(x(i, 0), y(0, j), x(i, 1), y(1, j), mod);
  return r;
}

// Row/column operations on (U, M) and (M, V) keep U*M0*V == M.
void row_combine(Mat2i& u, Mat2i& m, int target, int source, std::int64_t c) {
  for (int j = 0; j < 2; ++j) {
    m(target, j) = checked_add(m(target, j), checked_mul(c, m(source, j)));
    u(target, j) = checked_add(u(target, j), checked_mul(c, u(source, j)));
  }
}
void col_combine(Mat2i& m, Mat2i& v, int target, int source, std::int64_t c) {
  for (int i = 0; i < 2; ++i) {
    m(i, target) = checked_add(m(i, target), checked_mul(c, m(i, source)));
    v(i, target) = checked_add(v(i, target), checked_mul(c, v(i, source)));
  }
}
void row_swap(Mat2i& u, Mat2i& m) {
  std::swap(m.m[0], m.m[2]);
  std::swap(m.m[1], m.m[3]);
  std::swap(u.m[0], u.m[2]);
  std::swap(u.m[1], u.m[3]);
}
void col_swap(Mat2i& m, Mat2i& v) {
  std::swap(m.m[0], m.m[1]);
  std::swap(m.m[2], m.m[3]);
  std::swap(v.m[0], v.m[1]);
  std::swap(v.m[2], v.m[3]);
}
void row_negate(Mat2i& u, Mat2i& m, int i) {
  for (int j = 0; j < 2; ++j) {
    m(i, j) = -m(i, j);
    u(i, j) = -u(i, j);
  }
}

}  // namespace

Mat2i power_mod(const Mat2i& x, std::int64_t n, std::int64_t mod) {
  if (mod <= 0) throw ValidationError("power_mod requires a positive modulus");
  Mat2i b;
  for (int k = 0; k < 4; ++k) b.m[k] = mod_floor(x.m[k], mod);
  Mat2i r;
  for (int k = 0; k < 4; ++k) r.m[k] = mod_floor(Mat2i::identity().m[k], mod);
  while (n > 0) {
    if (n & 1) r = mul_mod(r, b, mod);
    n >>= 1;
    if (n > 0) b = mul_mod(b, b, mod);
  }
  return r;
}

SmithForm smith_normal_form(const Mat2i& input) {
  Mat2i u = Mat2i::identity();
  Mat2i v = Mat2i::identity();
  Mat2i m = input;
  for (;;) {
    if (m.m[0] == 0 && m.m[1] == 0 && m.m[2] == 0 && m.m[3] == 0) break;
    // Move an entry of minimal nonzero modulus to the pivot.
    int bi = -1, bj = -1;
    std::int64_t best = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const auto a = std::llabs(m(i, j));
        if (a != 0 && (bi < 0 || a < best)) {
          best = a;
          bi = i;
          bj = j;
        }
      }
    if (bi == 1) row_swap(u, m);
    if (bj == 1) col_swap(m, v);
    const std::int64_t p = m(0, 0);
    bool reduced = true;
    if (m(1, 0) != 0) {
      row_combine(u, m, 1, 0, -(m(1, 0) / p));
      reduced = reduced && m(1, 0) == 0;
    }
    if (m(0, 1) != 0) {
      col_combine(m, v, 1, 0, -(m(0, 1) / p));
      reduced = reduced && m(0, 1) == 0;
    }
    if (!reduced) continue;
    if (m(1, 1) % p != 0) {
      // Pull the lower-right entry into the first row and repeat.
      row_combine(u, m, 0, 1, 1);
      continue;
    }
    break;
  }
  if (m(0, 0) < 0) row_negate(u, m, 0);
  if (m(1, 1) < 0) row_negate(u, m, 1);
  return SmithForm{u, v, m(0, 0), m(1, 1)};
}

}  // namespace fried

#include "fried/rep_theory.hpp"

#include <cmath>
#include <numeric>

#include "fried/errors.hpp"
#include "fried/kleinian_spectrum.hpp"
#include "fried/linalg.hpp"

namespace fried {

namespace {

std::size_t expected_angles(int n0) {
  if (n0 == 3) return 1;
  if (n0 >= 2 && n0 % 2 == 0) return static_cast<std::size_t>(n0 / 2);
  throw ValidationError("SO(n0) supported for even n0 >= 2 and n0 = 3, got n0 = " + std::to_string(n0));
}

}  // namespace

TorusElement TorusElement::make(int n0, std::vector<double> angles) {
  if (angles.size() != expected_angles(n0)) {
    throw ValidationError("SO(" + std::to_string(n0) + ") element needs " + std::to_string(expected_angles(n0)) +
                          " angles");
  }
  for (double& a : angles) a = reduce_angle(a);
  return TorusElement{n0, std::move(angles)};
}

TorusElement TorusElement::identity(int n0) { return make(n0, std::vector<double>(expected_angles(n0), 0.0)); }

TorusElement TorusElement::power(int j) const {
  std::vector<double> a = angles;
  for (double& x : a) x *= j;
  return make(n0, std::move(a));
}

std::vector<cplx> TorusElement::eigenvalues() const {
  std::vector<cplx> ev;
  for (double a : angles) {
    ev.push_back(std::polar(1.0, a));
    ev.push_back(std::polar(1.0, -a));
  }
  if (n0 % 2 != 0) ev.emplace_back(1.0, 0.0);
  return ev;
}

IrrepLabel IrrepLabel::nu(int l, int n0) {
  if (l < 0 || l > n0) throw ValidationError("nu(l) needs 0 <= l <= n0");
  return IrrepLabel{IrrepKind::nu, l, n0};
}

IrrepLabel IrrepLabel::sigma(int p, int n0) {
  if (p < 0) throw ValidationError("sigma(p) needs p >= 0");
  return IrrepLabel{IrrepKind::sigma, p, n0};
}

std::string IrrepLabel::str() const {
  return (kind == IrrepKind::nu ? "nu" : "sigma") + std::to_string(index);
}

double char_nu(int n0, int l, const TorusElement& g) {
  if (g.n0 != n0) throw ValidationError("torus element belongs to a different SO(n0)");
  if (l < 0 || l > n0) throw ValidationError("nu(l) needs 0 <= l <= n0");
  const auto ev = g.eigenvalues();
  return linalg::elementary_symmetric(ev, l).real();
}

double char_sigma(int n0, int p, const TorusElement& g) {
  if (g.n0 != n0) throw ValidationError("torus element belongs to a different SO(n0)");
  if (p < 0) throw ValidationError("sigma(p) needs p >= 0");
  const auto ev = g.eigenvalues();
  return (linalg::complete_homogeneous(ev, p) - linalg::complete_homogeneous(ev, p - 2)).real();
}

double character(const IrrepLabel& mu, const TorusElement& g) {
  return mu.kind == IrrepKind::nu ? char_nu(mu.n0, mu.index, g) : char_sigma(mu.n0, mu.index, g);
}

double character(const std::vector<IrrepLabel>& tensor, const TorusElement& g) {
  double v = 1.0;
  for (const auto& mu : tensor) v *= character(mu, g);
  return v;
}

double branching_check(int n0, int p, const TorusElement& g) {
  const auto ev = g.eigenvalues();
  const double hp = linalg::complete_homogeneous(ev, p).real();
  double s = 0.0;
  for (int q = 0; 2 * q <= p; ++q) s += char_sigma(n0, p - 2 * q, g);
  return std::abs(hp - s);
}

double tensor_decomposition_check(double theta) {
  const TorusElement g = TorusElement::make(2, {theta});
  const double lhs = std::pow(char_nu(2, 1, g), 2);
  const double rhs = char_sigma(2, 0, g) + char_nu(2, 2, g) + char_sigma(2, 2, g);
  return std::abs(lhs - rhs);
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i at each step.
    r = checked_mul(r, n - k + i) / i;
  }
  return r;
}

std::int64_t dim_sigma(int n, int m) {
  if (n < 1 || m < 0) throw ValidationError("dim_sigma needs n >= 1, m >= 0");
  return binomial(n + m - 1, m) - binomial(n + m - 3, m - 2);
}

std::int64_t dim_nu(int n, int l) { return binomial(n, l); }

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ValidationError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return Rational{num / g, den / g};
}

Rational casimir_constant(int n, int m) {
  const std::int64_t nn = n;
  const std::int64_t mm = m;
  return make_rational(checked_sub(checked_mul(nn, nn), checked_mul(4, checked_mul(mm, mm + nn - 2))), 4);
}

std::vector<double> symmetric_trace_sequence(const Eigen::MatrixXd& b, int r) {
  if (b.rows() != b.cols()) throw ValidationError("contraction matrix must be square");
  if (r < 0) return {};
  std::vector<double> p(static_cast<std::size_t>(r) + 1, 0.0);
  Eigen::MatrixXd pw = Eigen::MatrixXd::Identity(b.rows(), b.cols());
  for (int i = 1; i <= r; ++i) {
    pw = pw * b;
    p[static_cast<std::size_t>(i)] = pw.trace();
  }
  std::vector<double> h(static_cast<std::size_t>(r) + 1, 0.0);
  h[0] = 1.0;
  for (int n = 1; n <= r; ++n) {
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += p[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(n - i)];
    h[static_cast<std::size_t>(n)] = s / n;
  }
  return h;
}

double symmetric_trace_expansion(const Eigen::MatrixXd& b, int r) {
  if (r < 0) return 0.0;
  return symmetric_trace_sequence(b, r).back();
}

}  // namespace fried

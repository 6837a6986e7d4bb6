#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fried/numeric.hpp"

namespace fried {

/// Conjugacy class in SO(n0) through maximal-torus angles. Even n0 = 2m
/// uses m angles; n0 = 3 uses one angle and a fixed eigenvalue 1.
struct TorusElement {
  int n0 = 2;
  std::vector<double> angles;

  static TorusElement make(int n0, std::vector<double> angles);
  static TorusElement identity(int n0);
  /// All rotation angles multiplied by j (the class of g^j).
  TorusElement power(int j) const;
  /// Eigenvalues e^{+-i theta_k}, and 1 when n0 is odd.
  std::vector<cplx> eigenvalues() const;
};

enum class IrrepKind { nu, sigma };

/// nu(l): exterior power on l-forms; sigma(p): trace-free symmetric tensors.
struct IrrepLabel {
  IrrepKind kind = IrrepKind::sigma;
  int index = 0;
  int n0 = 2;

  static IrrepLabel nu(int l, int n0 = 2);
  static IrrepLabel sigma(int p, int n0 = 2);
  std::string str() const;
};

double char_nu(int n0, int l, const TorusElement& g);
double char_sigma(int n0, int p, const TorusElement& g);
double character(const IrrepLabel& mu, const TorusElement& g);
/// Character of a tensor product: the pointwise product.
double character(const std::vector<IrrepLabel>& tensor, const TorusElement& g);

/// |h_p - sum_{2q <= p} char_sigma(p - 2q)|.
double branching_check(int n0, int p, const TorusElement& g);
/// |chi_{nu1}^2 - (chi_{sigma0} + chi_{nu2} + chi_{sigma2})| for n0 = 2.
double tensor_decomposition_check(double theta);

std::int64_t binomial(std::int64_t n, std::int64_t k);
/// Dimension C(n+m-1, m) - C(n+m-3, m-2) of trace-free symmetric m-tensors.
std::int64_t dim_sigma(int n, int m);
std::int64_t dim_nu(int n, int l);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};
Rational make_rational(std::int64_t num, std::int64_t den);

/// n^2/4 - m(m + n - 2).
Rational casimir_constant(int n, int m);

/// h_r of the eigenvalues of b through Newton's identities on Tr(b^i).
double symmetric_trace_expansion(const Eigen::MatrixXd& b, int r);
/// h_0 .. h_r in one pass.
std::vector<double> symmetric_trace_sequence(const Eigen::MatrixXd& b, int r);

}  // namespace fried

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "fried/integer_matrix.hpp"
#include "fried/numeric.hpp"

namespace fried {

/// Result of validate_anosov.
struct AnosovDiagnostics {
  bool hyperbolic = false;
  std::int64_t det = 0;
  std::int64_t trace = 0;
  double lambda_u = 0.0;  ///< eigenvalue of modulus > 1
  double lambda_s = 0.0;  ///< eigenvalue of modulus < 1
};

/// Throws ValidationError unless |det A| = 1 and no eigenvalue lies on the
/// unit circle.
AnosovDiagnostics validate_anosov(const Mat2i& a);

/// Hyperbolic element of GL(2, Z) with cached eigen data and the Smith form
/// of A - I, which presents coker(A - I) as a product of cyclic groups.
class ToralAutomorphism {
 public:
  explicit ToralAutomorphism(const Mat2i& a);

  const Mat2i& matrix() const { return a_; }
  const AnosovDiagnostics& diagnostics() const { return diag_; }
  double lambda_u() const { return diag_.lambda_u; }
  double lambda_s() const { return diag_.lambda_s; }
  std::int64_t det() const { return diag_.det; }

  /// Orders of the nontrivial cyclic factors of coker(A - I).
  const std::vector<std::int64_t>& coker_orders() const { return coker_orders_; }
  /// |det(A - I)|, the order of coker(A - I).
  std::int64_t coker_size() const;
  /// Coordinates of v in the nontrivial cyclic factors, each reduced.
  std::vector<std::int64_t> coker_coordinates(std::int64_t v1, std::int64_t v2) const;

 private:
  Mat2i a_;
  AnosovDiagnostics diag_;
  SmithForm coker_snf_;
  std::vector<int> coker_rows_;
  std::vector<std::int64_t> coker_orders_;
};

struct TrigTerm {
  int k1 = 0;
  int k2 = 0;
  double cos_coef = 0.0;
  double sin_coef = 0.0;
};

/// c + sum_j (a_j cos 2pi(k.x) + b_j sin 2pi(k.x)) on the 2-torus.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  explicit TrigPolynomial(double constant, std::vector<TrigTerm> terms = {});

  double constant() const { return constant_; }
  const std::vector<TrigTerm>& terms() const { return terms_; }
  bool is_constant() const { return terms_.empty(); }

  double operator()(double x1, double x2) const;
  /// Evaluation at (n1, n2) / den with the phase reduced exactly mod den.
  double at_rational(std::int64_t n1, std::int64_t n2, std::int64_t den) const;
  /// Sum of absolute values of the nonconstant coefficients.
  double oscillation_bound() const;
  /// Certified lower bound: constant minus oscillation_bound().
  double lower_bound() const { return constant_ - oscillation_bound(); }
  double upper_bound() const { return constant_ + oscillation_bound(); }

 private:
  double constant_ = 0.0;
  std::vector<TrigTerm> terms_;
};

/// Suspension of a toral automorphism under an analytic roof, with the
/// time-change family X_tau = X_0 / (1 + tau g).
class SuspensionModel {
 public:
  SuspensionModel(ToralAutomorphism automorphism, TrigPolynomial roof, TrigPolynomial time_change = {});

  const ToralAutomorphism& automorphism() const { return automorphism_; }
  const TrigPolynomial& roof() const { return roof_; }
  const TrigPolynomial& time_change() const { return time_change_; }

  /// Open interval of tau on which 1 + tau g > 0 is certified.
  double tau_min() const { return tau_min_; }
  double tau_max() const { return tau_max_; }
  bool admits(double tau) const { return tau > tau_min_ && tau < tau_max_; }
  void require_admitted(double tau) const;

  /// Certified lower bound of the effective roof r (1 + tau g).
  double min_effective_roof(double tau) const;
  /// Growth-rate bound ln|lambda_u| / min_effective_roof(tau).
  double entropy_bound(double tau) const;

 private:
  ToralAutomorphism automorphism_;
  TrigPolynomial roof_;
  TrigPolynomial time_change_;
  double tau_min_;
  double tau_max_;
};

/// Point with coordinates (num1, num2) / den in [0,1)^2.
struct RationalPoint {
  std::int64_t num1 = 0;
  std::int64_t num2 = 0;
  std::int64_t den = 1;
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// Fix(A^n) with a common denominator, sorted by numerator pair.
struct FixedPointSet {
  int period = 0;
  std::int64_t den = 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> numerators;
  std::size_t size() const { return numerators.size(); }
};

/// Upper limit on |det(A^n - I)| accepted by enumeration.
inline constexpr std::int64_t kMaxFixedPoints = std::int64_t{1} << 27;

/// Fixed points of A^n on the torus, via the Smith form of A^n - I.
FixedPointSet fixed_points(const ToralAutomorphism& a, int n);

/// (coker class of v, winding n) in H_1 of the mapping torus.
struct HomologyClass {
  std::vector<std::int64_t> coker;
  std::int64_t winding = 0;
  friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

/// Sum of two classes: the class of a concatenated loop.
HomologyClass combine(const ToralAutomorphism& a, const HomologyClass& x, const HomologyClass& y);

struct OrbitRecord {
  int period = 0;
  RationalPoint base;
  double length = 0.0;  ///< length under the unit roof; see orbit_length
  bool primitive = true;
  HomologyClass homology;
  int epsilon = 1;
  double lambda_u_n = 0.0;
  double lambda_s_n = 0.0;
};

/// Class of the closed orbit through the point num / den of period n:
/// A^n x = x + v with v reduced modulo im(A - I).
HomologyClass homology_class(const ToralAutomorphism& a, std::int64_t num1, std::int64_t num2,
                             std::int64_t den, int period);
HomologyClass homology_class(const ToralAutomorphism& a, const OrbitRecord& orbit);

int orientation_index(const ToralAutomorphism& a, int period);
inline int orientation_index(const ToralAutomorphism& a, const OrbitRecord& orbit) {
  return orientation_index(a, orbit.period);
}

/// Primitive periodic orbits of period <= n_max, ordered by (period, base
/// point). The base point is the lexicographically smallest point of the orbit.
std::vector<OrbitRecord> primitive_orbits(const ToralAutomorphism& a, int n_max, unsigned workers = 0);

/// Numerators of the points A^i x, i = 0 .. period-1, over orbit.base.den.
std::vector<std::pair<std::int64_t, std::int64_t>> orbit_points(const ToralAutomorphism& a,
                                                                 const OrbitRecord& orbit);

/// Birkhoff sum of the effective roof r (1 + tau g) along the orbit.
double orbit_length(const SuspensionModel& model, const OrbitRecord& orbit, double tau);

/// Orbit integral of q_tau = -g / (1 + tau g) along the orbit of X_tau,
/// which equals -d/dtau of orbit_length.
double variation_coefficient(const SuspensionModel& model, const OrbitRecord& orbit, double tau);

/// Rank-one unitary character of H_1 of the mapping torus: u on the winding
/// generator, exp(2 pi i e_f / d_f) on the cyclic factors of coker(A - I).
struct Character {
  cplx u{1.0, 0.0};
  std::vector<std::int64_t> fiber_exponents;
  std::vector<std::int64_t> orders;

  static Character trivial(const ToralAutomorphism& a);
  /// u = exp(2 pi i angle_fraction).
  static Character make(const ToralAutomorphism& a, double angle_fraction,
                        std::vector<std::int64_t> fiber_exponents = {});
  static Character make(const ToralAutomorphism& a, cplx u, std::vector<std::int64_t> fiber_exponents = {});
  bool fiber_trivial() const;
};

cplx holonomy(const Character& chi, const HomologyClass& cls);

/// Tr of the k-th exterior power of the j-th iterate of the transverse
/// Poincare map, k in {0, 1, 2}.
double transverse_wedge_traces(const OrbitRecord& orbit, int j, int k);

}  // namespace fried

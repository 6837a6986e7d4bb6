#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "fried/numeric.hpp"
#include "fried/orbit_models.hpp"
#include "fried/zeta_products.hpp"

namespace fried {

struct VariationReport {
  cplx ratio;           ///< exp(-lambda * integral) at the final subdivision count
  cplx ratio_coarse;    ///< same with half the subdivisions
  double richardson_delta = 0.0;  ///< |ratio - ratio_coarse| / |ratio|
  int subdivisions = 0;
  /// Largest per-iterate disagreement between the q-form integrand and the
  /// wedge-power (A-form) integrand, checked at tau' in {0, tau/2, tau}.
  double max_form_residual = 0.0;
  double h = 0.0;
};

/// zeta_tau(lambda) / zeta_0(lambda) from the integrated variation formula,
/// over the orbit iterates admitted by policy (policy.n_max > 0 required).
/// Composite Simpson in tau' starting at policy.quad_subdivisions, doubled
/// until successive ratios agree to policy.richardson_tol.
VariationReport variation_rhs(const SuspensionModel& model, const Character& chi, cplx lambda, double tau,
                              const TruncationPolicy& policy);

/// exp(log zeta_tau(lambda) - log zeta_0(lambda)) from two truncated products.
cplx direct_quotient(const SuspensionModel& model, const Character& chi, cplx lambda, double tau,
                     const TruncationPolicy& policy);

/// Smooth family tau -> S_tau with its derivative.
struct MatrixFamily {
  std::function<Eigen::MatrixXd(double)> value;
  std::function<Eigen::MatrixXd(double)> derivative;
};

struct DeterminantExpansionResult {
  double q_closed = 0.0;  ///< -(1/det(I-M)) sum_k (-1)^k Tr(A^(k) wedge^k M)
  double q_fd = 0.0;      ///< centered difference of -det(I - S_tau S_tau1^{-1} M) / det(I - M)
  double residual = 0.0;  ///< |q_closed - q_fd| / max(1, |q_closed|)
};

DeterminantExpansionResult determinant_expansion_check(const MatrixFamily& s, const Eigen::MatrixXd& m, double tau1, double step = 1e-5);

enum class GuilleminWeights { identity, time_change };

struct GuilleminEntry {
  double t = 0.0;
  cplx coefficient;
  std::string label;
  int iterate = 1;
};

/// Orbit-iterate coefficients (ell#/ell) (int_gamma Tr(A^(k) wedge^k dphi))
/// Tr(rho) / |det(1 - P)| for all closed orbits with t = j ell <= t_max,
/// sorted by (t, label). k ranges over 0..3 (the full tangent space).
std::vector<GuilleminEntry> guillemin_series(const SuspensionModel& model, const Character& chi, int k, double t_max,
                                             GuilleminWeights weights, double tau = 0.0, unsigned workers = 0);

}  // namespace fried

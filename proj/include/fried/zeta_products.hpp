#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "fried/kleinian_spectrum.hpp"
#include "fried/numeric.hpp"
#include "fried/orbit_models.hpp"
#include "fried/rep_theory.hpp"

namespace fried {

/// Transverse data of a suspension orbit: P = diag(lambda_u^n, lambda_s^n).
struct Hyperbolic2D {
  double lambda_u = 0.0;
  double lambda_s = 0.0;
};

/// Closed geodesic of a hyperbolic 3-manifold with holonomy angle theta;
/// P is the 4x4 map of poincare_data.
struct Loxodromic {
  double theta = 0.0;
};

/// One primitive closed orbit, with the representation already evaluated on
/// its class (rho holds the eigenvalues of rho([gamma])).
struct OrbitTerm {
  std::string label;
  double length = 0.0;
  int period = 0;  ///< combinatorial period; 0 when there is none
  int epsilon = 1;
  int multiplicity = 1;
  std::vector<cplx> rho{cplx{1.0, 0.0}};
  std::variant<Hyperbolic2D, Loxodromic> transverse;
  double q_integral = 0.0;  ///< orbit integral of q at the spectrum's tau

  cplx trace_rho(int j) const;
  int transverse_dim() const;
  /// det(1 - P^j), signed.
  double det_one_minus_p(int j) const;
  /// det(1 - P_s^j); Loxodromic only.
  double det_one_minus_p_stable(int j) const;
  double wedge_trace(int j, int k) const;
  double theta() const;
};

struct OrbitSpectrum {
  std::vector<OrbitTerm> terms;
  /// Growth rate of the orbit count, used when the policy gives none.
  double entropy = std::numeric_limits<double>::quiet_NaN();
  /// Every primitive orbit shorter than this is present.
  double complete_length = std::numeric_limits<double>::infinity();

  /// Sorts by (length, label); all sums run in this order.
  void sort();
  double min_length() const;
};

struct TruncationPolicy {
  int n_max = 0;  ///< max j * period; 0 disables the period cut
  int j_max = 1;
  int p_max = 60;
  double h = std::numeric_limits<double>::quiet_NaN();  ///< entropy; NaN means the spectrum's
  double tail_tol = 1e-12;
  bool allow_outside = false;  ///< formal evaluation outside the convergence region
  unsigned workers = 0;
  int quad_subdivisions = 16;
  double richardson_tol = 1e-8;
};

struct ZetaValue {
  std::string kind;
  cplx lambda;
  cplx log_value;
  double tail_bound = 0.0;
  double h = 0.0;
  std::size_t terms = 0;
  TruncationPolicy policy;
  cplx value() const { return std::exp(log_value); }
};

/// (term index, iterate) pairs admitted by the policy, in spectrum order.
std::vector<std::pair<std::size_t, int>> admitted_iterates(const OrbitSpectrum& spec, const TruncationPolicy& policy);

double effective_entropy(const OrbitSpectrum& spec, const TruncationPolicy& policy);

/// log zeta = -sum (1/j) eps^j Tr(rho^j) e^{-lambda j ell}.
ZetaValue ruelle_log_zeta(const OrbitSpectrum& spec, cplx lambda, const TruncationPolicy& policy);

/// log Z_k = -sum (1/j) e^{-lambda j ell} Tr(rho^j) Tr(wedge^k P^j) / |det(1 - P^j)|.
ZetaValue graded_log_zeta(const OrbitSpectrum& spec, int k, cplx lambda, const TruncationPolicy& policy);

/// Sign s with sign(det(1 - P^j)) = s eps^j, so that zeta = prod_k Z_k^{s (-1)^k}.
int assembly_sign(int transverse_dim);

struct AssemblyResult {
  cplx log_zeta;
  std::vector<cplx> log_graded;
  int sign = 0;
  double max_residual = 0.0;
  double tail_bound = 0.0;
};

/// Checks the per-iterate sign identity and assembles log zeta from the
/// graded zetas. Throws ConventionViolation if any residual exceeds 1e-12.
AssemblyResult assemble_ruelle_from_graded(const OrbitSpectrum& spec, cplx lambda, const TruncationPolicy& policy);

/// log Z_{S,mu} = -sum (1/j) Tr(rho^j) chi_mu(m^j) e^{-lambda j ell} / det(1 - P_s^j).
ZetaValue selberg_log_zeta(const OrbitSpectrum& spec, const std::vector<IrrepLabel>& mu, cplx lambda,
                           const TruncationPolicy& policy);

struct FactorizationReport {
  int k = 0;
  int p_max = 0;
  cplx lhs_log;
  cplx rhs_log;          ///< from the per-iterate truncated triple sum
  cplx rhs_log_product;  ///< sum of selberg_log_zeta over (l, p, q)
  double max_residual = 0.0;
  double truncation_bound = 0.0;
};

/// Per-iterate comparison of the graded weight with the (l, p, q) triple sum
/// truncated at p + 2q <= p_max. The residual of an iterate is normalized by
/// the sum of absolute values of its l-components. Throws ConvergenceError if
/// tolerance > 0 and the truncation bound exceeds it.
FactorizationReport factorization_check(const OrbitSpectrum& spec, int k, cplx lambda, const TruncationPolicy& policy,
                                        double tolerance = 0.0);

/// Primitive orbits of the suspension up to period n_max at parameter tau,
/// with the character evaluated on each class.
OrbitSpectrum suspension_spectrum(const SuspensionModel& model, const Character& chi, int n_max, double tau,
                                  unsigned workers = 0);

/// Geodesic spectrum with trivial twist. complete_length defaults to the
/// largest length.
OrbitSpectrum loxodromic_spectrum(const std::vector<ComplexLengthRecord>& records, double entropy,
                                  double complete_length = std::numeric_limits<double>::quiet_NaN());

}  // namespace fried

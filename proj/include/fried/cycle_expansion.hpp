#pragma once

#include <vector>

#include "fried/numeric.hpp"
#include "fried/orbit_models.hpp"

namespace fried {

struct CycleExpansionOptions {
  int n_max = 14;
  double tau = 0.0;
  double tol = 1e-15;  ///< |c_n| stopping threshold
  unsigned workers = 0;
};

/// d_k(lambda) = sum_n c_n with c_n from the trace sequence
/// t_m = sum_{x in Fix A^m} e^{-lambda r_m(x)} hol(x) Tr(wedge^k A^m) / |det(1 - A^m)|
/// and c_n = -(1/n) sum_{m=1}^n t_m c_{n-m}.
struct DynamicalDeterminant {
  int k = 0;
  cplx lambda;
  std::vector<cplx> traces;        ///< t_1, t_2, ...
  std::vector<cplx> coefficients;  ///< c_0 = 1, c_1, ...
  cplx value;
  bool converged = false;  ///< two consecutive |c_n| at the noise floor
  /// |c_n|^{1/n} failed to decrease for some n >= 4 above the noise floor.
  bool continuation_unreliable = false;
  std::vector<double> root_decay;  ///< |c_n|^{1/n}
  double last_coefficient = 0.0;
};

DynamicalDeterminant dynamical_determinant(const SuspensionModel& model, const Character& chi, int k, cplx lambda,
                                           const CycleExpansionOptions& opt = {});

struct ZetaAtZero {
  cplx value;
  std::vector<DynamicalDeterminant> determinants;  ///< k = 0, 1, 2
  bool continuation_unreliable = false;
};

/// zeta(0) = prod_k d_k(0)^{(-1)^{k+1}}. Throws ResonanceAtZero if some
/// |d_k(0)| < zero_tol.
ZetaAtZero zeta_at_zero(const SuspensionModel& model, const Character& chi, const CycleExpansionOptions& opt = {},
                        double zero_tol = 1e-9);

/// prod_k d_k(lambda)^{(-1)^{k+1}} at an arbitrary lambda.
cplx zeta_from_determinants(const SuspensionModel& model, const Character& chi, cplx lambda,
                            const CycleExpansionOptions& opt = {});

}  // namespace fried

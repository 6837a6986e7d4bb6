#include "fried/cycle_expansion.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fried/errors.hpp"
#include "fried/zeta_products.hpp"

namespace fried {

namespace {

cplx trace_term(const SuspensionModel& model, const Character& chi, int k, cplx lambda, int m, double tau,
                unsigned workers) {
  const auto& a = model.automorphism();
  const FixedPointSet fps = fixed_points(a, m);
  const double lu = std::pow(a.lambda_u(), m);
  const double ls = std::pow(a.lambda_s(), m);
  const double det_abs = std::abs((1.0 - lu) * (1.0 - ls));
  double wedge = 1.0;
  if (k == 1) {
    wedge = static_cast<double>(power(a.matrix(), m).trace());
  } else if (k == 2) {
    wedge = (a.det() < 0 && m % 2 != 0) ? -1.0 : 1.0;
  }
  const Mat2i step = power_mod(a.matrix(), 1, fps.den);
  const bool constant_roof = model.roof().is_constant() && model.time_change().is_constant();
  const cplx s = deterministic_sum<cplx>(
      fps.size(),
      [&](std::size_t i) {
        auto p = fps.numerators[i];
        double r;
        if (constant_roof) {
          r = m * model.roof().constant() * (1.0 + tau * model.time_change().constant());
        } else {
          CompensatedSum<double> acc;
          for (int s = 0; s < m; ++s) {
            acc.add(model.roof().at_rational(p.first, p.second, fps.den) *
                    (1.0 + tau * model.time_change().at_rational(p.first, p.second, fps.den)));
            p = {mul_add_mod(step(0, 0), p.first, step(0, 1), p.second, fps.den),
                 mul_add_mod(step(1, 0), p.first, step(1, 1), p.second, fps.den)};
          }
          r = acc.value();
        }
        const auto& q = fps.numerators[i];
        const cplx hol = holonomy(chi, homology_class(a, q.first, q.second, fps.den, m));
        return std::exp(-lambda * r) * hol;
      },
      workers);
  return s * (wedge / det_abs);
}

}  // namespace

DynamicalDeterminant dynamical_determinant(const SuspensionModel& model, const Character& chi, int k, cplx lambda,
                                           const CycleExpansionOptions& opt) {
  if (k < 0 || k > 2) throw ValidationError("grading k must lie in 0..2 for suspension flows");
  if (opt.n_max < 1) throw ValidationError("n_max must be >= 1");
  model.require_admitted(opt.tau);
  DynamicalDeterminant d;
  d.k = k;
  d.lambda = lambda;
  d.coefficients.push_back(cplx{1.0, 0.0});
  constexpr double eps = std::numeric_limits<double>::epsilon();
  int quiet = 0;
  double prev_root = std::numeric_limits<double>::infinity();
  CompensatedSum<cplx> value;
  value.add(d.coefficients[0]);
  for (int n = 1; n <= opt.n_max; ++n) {
    d.traces.push_back(trace_term(model, chi, k, lambda, n, opt.tau, opt.workers));
    CompensatedSum<cplx> acc;
    double scale = 0.0;
    for (int m = 1; m <= n; ++m) {
      const cplx term = d.traces[static_cast<std::size_t>(m - 1)] * d.coefficients[static_cast<std::size_t>(n - m)];
      acc.add(term);
      scale += std::abs(term);
    }
    const cplx cn = -acc.value() / static_cast<double>(n);
    d.coefficients.push_back(cn);
    value.add(cn);
    const double mag = std::abs(cn);
    const double floor = std::max(opt.tol, 64.0 * eps * scale / n);
    const double root = std::pow(mag, 1.0 / n);
    d.root_decay.push_back(root);
    if (mag > floor) {
      if (n >= 5 && root > prev_root) d.continuation_unreliable = true;
      prev_root = root;
      quiet = 0;
    } else if (++quiet == 2) {
      d.converged = true;
      break;
    }
  }
  d.value = value.value();
  d.last_coefficient = std::abs(d.coefficients.back());
  return d;
}

ZetaAtZero zeta_at_zero(const SuspensionModel& model, const Character& chi, const CycleExpansionOptions& opt,
                        double zero_tol) {
  ZetaAtZero z;
  cplx v{1.0, 0.0};
  for (int k = 0; k <= 2; ++k) {
    z.determinants.push_back(dynamical_determinant(model, chi, k, cplx{0.0, 0.0}, opt));
    const cplx dk = z.determinants.back().value;
    if (std::abs(dk) < zero_tol) {
      std::ostringstream os;
      os << "resonance at zero: zeta value undefined (|d_" << k << "(0)| = " << std::abs(dk) << ")";
      throw ResonanceAtZero(os.str());
    }
    z.continuation_unreliable = z.continuation_unreliable || z.determinants.back().continuation_unreliable;
    v = (k % 2 == 0) ? v / dk : v * dk;
  }
  z.value = v;
  return z;
}

cplx zeta_from_determinants(const SuspensionModel& model, const Character& chi, cplx lambda,
                            const CycleExpansionOptions& opt) {
  cplx v{1.0, 0.0};
  for (int k = 0; k <= 2; ++k) {
    const cplx dk = dynamical_determinant(model, chi, k, lambda, opt).value;
    v = (k % 2 == 0) ? v / dk : v * dk;
  }
  return v;
}

}  // namespace fried

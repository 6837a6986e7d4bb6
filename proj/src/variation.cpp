#include "fried/variation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fried/errors.hpp"
#include "fried/linalg.hpp"

namespace fried {

namespace {

// Tr(A^(k) wedge^k D) at a point where the time change takes the value g,
// with S_tau = diag(1 / (1 + tau g), 1, 1) in the frame (X_0, e_u, e_s).
double a_form_trace(double g, double tau, int k, const Eigen::Matrix3d& dphi) {
  if (k == 0) return 0.0;
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd ds = Eigen::MatrixXd::Zero(3, 3);
  Eigen::MatrixXd sinv = Eigen::MatrixXd::Identity(3, 3);
  const double speed = 1.0 + tau * g;
  s(0, 0) = 1.0 / speed;
  ds(0, 0) = -g / (speed * speed);
  sinv(0, 0) = speed;
  const Eigen::MatrixXd a = linalg::wedge_power_derivative(s, ds, k) * linalg::wedge_power(sinv, k);
  return (a * linalg::wedge_power(dphi, k)).trace();
}

struct PreparedOrbit {
  OrbitRecord orbit;
  std::vector<std::pair<std::int64_t, std::int64_t>> points;
  cplx hol;
};

double length_at(const SuspensionModel& model, const PreparedOrbit& o, double tau) {
  CompensatedSum<double> acc;
  for (const auto& p : o.points) {
    acc.add(model.roof().at_rational(p.first, p.second, o.orbit.base.den) *
            (1.0 + tau * model.time_change().at_rational(p.first, p.second, o.orbit.base.den)));
  }
  return acc.value();
}

// Integral over the j-fold orbit of Tr(A^(k) wedge^k dphi) at parameter tau.
double a_form_integral(const SuspensionModel& model, const PreparedOrbit& o, int j, int k, double tau) {
  Eigen::Matrix3d dphi = Eigen::Matrix3d::Zero();
  dphi(0, 0) = 1.0;
  dphi(1, 1) = std::pow(o.orbit.lambda_u_n, j);
  dphi(2, 2) = std::pow(o.orbit.lambda_s_n, j);
  CompensatedSum<double> acc;
  for (const auto& p : o.points) {
    const double r = model.roof().at_rational(p.first, p.second, o.orbit.base.den);
    const double g = model.time_change().at_rational(p.first, p.second, o.orbit.base.den);
    acc.add(r * (1.0 + tau * g) * a_form_trace(g, tau, k, dphi));
  }
  return j * acc.value();
}

std::vector<PreparedOrbit> prepare(const SuspensionModel& model, const Character& chi, int n_max, unsigned workers) {
  const auto& a = model.automorphism();
  std::vector<PreparedOrbit> out;
  for (auto& o : primitive_orbits(a, n_max, workers)) {
    PreparedOrbit p;
    p.points = orbit_points(a, o);
    p.hol = holonomy(chi, o.homology);
    p.orbit = std::move(o);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

VariationReport variation_rhs(const SuspensionModel& model, const Character& chi, cplx lambda, double tau,
                              const TruncationPolicy& policy) {
  if (policy.n_max < 1) throw ValidationError("variation_rhs needs policy.n_max >= 1");
  if (policy.quad_subdivisions < 2 || (policy.quad_subdivisions & (policy.quad_subdivisions - 1)) != 0) {
    throw ValidationError("quadrature subdivisions must be a power of two >= 2");
  }
  model.require_admitted(0.0);
  model.require_admitted(tau);
  VariationReport rep;
  rep.h = std::isnan(policy.h) ? std::max(model.entropy_bound(0.0), model.entropy_bound(tau)) : policy.h;
  if (!(lambda.real() > rep.h) && !policy.allow_outside) {
    std::ostringstream os;
    os << "outside convergence region: Re lambda = " << lambda.real() << " <= " << rep.h;
    throw ConvergenceError(os.str());
  }
  if (tau == 0.0) {
    rep.ratio = rep.ratio_coarse = 1.0;
    return rep;
  }

  const auto orbits = prepare(model, chi, policy.n_max, policy.workers);
  std::vector<std::pair<std::size_t, int>> its;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    for (int j = 1; j <= policy.j_max && j * orbits[i].orbit.period <= policy.n_max; ++j) its.emplace_back(i, j);
  }
  std::vector<double> q0(orbits.size());
  for (std::size_t i = 0; i < orbits.size(); ++i) q0[i] = variation_coefficient(model, orbits[i].orbit, 0.0);

  auto q_integrand = [&](double t) {
    std::vector<double> len(orbits.size());
    std::vector<double> q(orbits.size());
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      len[i] = length_at(model, orbits[i], t);
      q[i] = variation_coefficient(model, orbits[i].orbit, t);
    }
    return deterministic_sum<cplx>(
        its.size(),
        [&](std::size_t n) {
          const auto [i, j] = its[n];
          const double eps = (orbits[i].orbit.epsilon < 0 && j % 2 != 0) ? -1.0 : 1.0;
          return q[i] * eps * std::pow(orbits[i].hol, j) * std::exp(-lambda * (j * len[i]));
        },
        policy.workers);
  };

  // Per-iterate agreement of the two integrands.
  for (double t : {0.0, 0.5 * tau, tau}) {
    for (const auto& [i, j] : its) {
      const auto& o = orbits[i];
      const double len = length_at(model, o, t);
      const double eps = (o.orbit.epsilon < 0 && j % 2 != 0) ? -1.0 : 1.0;
      const cplx common = std::pow(o.hol, j) * std::exp(-lambda * (j * len));
      const cplx qform = variation_coefficient(model, o.orbit, t) * eps * common;
      const double det = (1.0 - std::pow(o.orbit.lambda_u_n, j)) * (1.0 - std::pow(o.orbit.lambda_s_n, j));
      double alt = 0.0;
      for (int k = 0; k <= 3; ++k) alt += (k % 2 == 0 ? 1.0 : -1.0) * a_form_integral(model, o, j, k, t);
      const cplx aform = (alt / j) / std::abs(det) * common;
      // Cancelling orbit sums make |q| itself a poor scale.
      double mag = 0.0;
      for (const auto& p : o.points) {
        mag += std::abs(model.roof().at_rational(p.first, p.second, o.orbit.base.den) *
                        model.time_change().at_rational(p.first, p.second, o.orbit.base.den));
      }
      const double scale = mag * std::abs(common);
      if (scale > 0.0) rep.max_form_residual = std::max(rep.max_form_residual, std::abs(qform - aform) / scale);
    }
  }

  auto simpson = [&](int n) {
    const double hstep = tau / n;
    CompensatedSum<cplx> acc;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc.add(w * q_integrand(i * hstep));
    }
    return acc.value() * (hstep / 3.0);
  };

  int n = policy.quad_subdivisions;
  cplx coarse = std::exp(-lambda * simpson(n));
  for (;;) {
    const cplx fine = std::exp(-lambda * simpson(2 * n));
    const double delta = std::abs(fine - coarse) / std::abs(fine);
    if (delta <= policy.richardson_tol) {
      rep.ratio = fine;
      rep.ratio_coarse = coarse;
      rep.richardson_delta = delta;
      rep.subdivisions = 2 * n;
      return rep;
    }
    n *= 2;
    if (n > (1 << 16)) throw ConvergenceError("Simpson quadrature did not reach the Richardson tolerance");
    coarse = fine;
  }
}

cplx direct_quotient(const SuspensionModel& model, const Character& chi, cplx lambda, double tau,
                     const TruncationPolicy& policy) {
  TruncationPolicy p = policy;
  if (std::isnan(p.h)) p.h = std::max(model.entropy_bound(0.0), model.entropy_bound(tau));
  const auto at_tau = ruelle_log_zeta(suspension_spectrum(model, chi, policy.n_max, tau, policy.workers), lambda, p);
  const auto at_zero = ruelle_log_zeta(suspension_spectrum(model, chi, policy.n_max, 0.0, policy.workers), lambda, p);
  return std::exp(at_tau.log_value - at_zero.log_value);
}

DeterminantExpansionResult determinant_expansion_check(const MatrixFamily& s, const Eigen::MatrixXd& m, double tau1, double step) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw ValidationError("M must be square");
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const double d0 = (id - m).determinant();
  if (std::abs(d0) < 1e-12) throw ValidationError("singular input: det(I - M) = 0");
  const Eigen::MatrixXd s1 = s.value(tau1);
  const Eigen::MatrixXd ds1 = s.derivative(tau1);
  if (s1.rows() != n || ds1.rows() != n) throw ValidationError("family and M dimensions differ");
  const Eigen::MatrixXd s1inv = s1.inverse();

  DeterminantExpansionResult r;
  double acc = 0.0;
  for (int k = 1; k <= n; ++k) {
    const Eigen::MatrixXd a = linalg::wedge_power_derivative(s1, ds1, k) * linalg::wedge_power(s1inv, k);
    acc += (k % 2 == 0 ? 1.0 : -1.0) * (a * linalg::wedge_power(m, k)).trace();
  }
  r.q_closed = -acc / d0;
  auto f = [&](double t) { return -(id - s.value(t) * s1inv * m).determinant() / d0; };
  r.q_fd = (f(tau1 + step) - f(tau1 - step)) / (2.0 * step);
  r.residual = std::abs(r.q_closed - r.q_fd) / std::max(1.0, std::abs(r.q_closed));
  return r;
}

std::vector<GuilleminEntry> guillemin_series(const SuspensionModel& model, const Character& chi, int k, double t_max,
                                             GuilleminWeights weights, double tau, unsigned workers) {
  if (k < 0 || k > 3) throw ValidationError("grading k must lie in 0..3");
  model.require_admitted(tau);
  std::vector<GuilleminEntry> out;
  const int n_max = static_cast<int>(std::floor(t_max / model.min_effective_roof(tau)));
  if (n_max < 1) return out;
  for (const auto& o : prepare(model, chi, n_max, workers)) {
    const double ell0 = length_at(model, o, tau);
    for (int j = 1; j * ell0 <= t_max; ++j) {
      const double lu = std::pow(o.orbit.lambda_u_n, j);
      const double ls = std::pow(o.orbit.lambda_s_n, j);
      const double det = std::abs((1.0 - lu) * (1.0 - ls));
      double integral;
      if (weights == GuilleminWeights::identity) {
        const cplx ev[3] = {1.0, lu, ls};
        integral = j * ell0 * linalg::elementary_symmetric(ev, k).real();
      } else {
        integral = a_form_integral(model, o, j, k, tau);
      }
      std::ostringstream os;
      os << o.orbit.period << ':' << o.orbit.base.num1 << ',' << o.orbit.base.num2 << '/' << o.orbit.base.den;
      out.push_back(GuilleminEntry{j * ell0, (integral / j) / det * std::pow(o.hol, j), os.str(), j});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.t != b.t ? a.t < b.t : (a.label != b.label ? a.label < b.label : a.iterate < b.iterate);
  });
  return out;
}

}  // namespace fried

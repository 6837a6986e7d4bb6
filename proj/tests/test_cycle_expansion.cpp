#include "doctest.h"

#include <cmath>

#include "fried/cycle_expansion.hpp"
#include "fried/errors.hpp"
#include "fried/zeta_products.hpp"
#include "test_support.hpp"

using namespace fried;

namespace {

const ToralAutomorphism& cat() {
  static const ToralAutomorphism a(Mat2i{2, 1, 1, 1});
  return a;
}

}  // namespace

TEST_CASE("constant roof: d_0 and d_1 in closed form") {
  const SuspensionModel model(cat(), TrigPolynomial(1.0));
  const double lu = cat().lambda_u();
  for (double frac : {0.5, 0.2, 0.37}) {
    const Character chi = Character::make(cat(), frac);
    for (const cplx lam : {cplx(0.0, 0.0), cplx(0.3, 1.0), cplx(-0.5, 0.2)}) {
      const cplx z = chi.u * std::exp(-lam);
      const auto d0 = dynamical_determinant(model, chi, 0, lam);
      CHECK(std::abs(d0.value - (1.0 - z)) < 1e-13);
      CHECK(d0.coefficients.front() == cplx(1.0));
      for (std::size_t n = 2; n < d0.coefficients.size(); ++n) CHECK(std::abs(d0.coefficients[n]) < 1e-13);
      const auto d1 = dynamical_determinant(model, chi, 1, lam);
      CHECK(std::abs(d1.value - (1.0 - z * lu) * (1.0 - z / lu)) < 1e-12);
      CHECK(d1.converged);
      const auto d2 = dynamical_determinant(model, chi, 2, lam);
      CHECK(std::abs(d2.value - (1.0 - z)) < 1e-13);
    }
  }
  CHECK(std::abs(dynamical_determinant(model, Character::trivial(cat()), 0, 0.0).value) < 1e-14);
}

TEST_CASE("coefficient recursion holds as computed") {
  const SuspensionModel model(cat(), TrigPolynomial(1.0, {{1, 0, 0.08, 0.0}, {0, 1, 0.0, 0.05}}));
  const auto d = dynamical_determinant(model, Character::make(cat(), 0.5), 1, cplx(0.2, 0.4));
  REQUIRE(d.coefficients.size() == d.traces.size() + 1);
  for (std::size_t n = 1; n < d.coefficients.size(); ++n) {
    cplx s = 0.0;
    double mag = 0.0;
    for (std::size_t m = 1; m <= n; ++m) {
      s += d.traces[m - 1] * d.coefficients[n - m];
      mag += std::abs(d.traces[m - 1] * d.coefficients[n - m]);
    }
    CHECK(std::abs(d.coefficients[n] + s / static_cast<double>(n)) <= 1e-15 * mag);
  }
  cplx total = 0.0;
  for (const auto& c : d.coefficients) total += c;
  CHECK(std::abs(total - d.value) < 1e-15);
}

TEST_CASE("zeta at zero: exact cases") {
  const SuspensionModel model(cat(), TrigPolynomial(1.0));
  const auto z = zeta_at_zero(model, Character::make(cat(), 0.5));
  CHECK(std::abs(z.value - 1.25) < 1e-13);
  CHECK_FALSE(z.continuation_unreliable);

  const double lu = cat().lambda_u();
  const cplx i(0.0, 1.0);
  const cplx expect = (1.0 - i * lu) * (1.0 - i / lu) / ((1.0 - i) * (1.0 - i));
  const auto zi = zeta_at_zero(model, Character::make(cat(), 0.25));
  CHECK(std::abs(zi.value - expect) < 1e-12);
  CHECK(std::abs(zi.value) == doctest::Approx(1.5));

  CHECK_THROWS_AS(zeta_at_zero(model, Character::trivial(cat())), ResonanceAtZero);
}

TEST_CASE("fiber-nontrivial characters have trivial zeta for constant roofs") {
  const ToralAutomorphism a(Mat2i{3, 2, 1, 1});
  const SuspensionModel model(a, TrigPolynomial(1.0));
  const auto z = zeta_at_zero(model, Character::make(a, 0.0, {1}));
  CHECK(std::abs(z.value - 1.0) < 1e-12);
}

TEST_CASE("continuation agrees with the Euler product in the convergence region") {
  for (const Mat2i m : {Mat2i{2, 1, 1, 1}, Mat2i{-2, -1, -1, -1}}) {
    const ToralAutomorphism a(m);
    const SuspensionModel model(a, TrigPolynomial(1.0, {{1, 0, 0.1, 0.0}}));
    const Character chi = Character::make(a, 0.3);
    const double h = model.entropy_bound(0.0);
    const cplx lam(h + 2.0, 0.5);
    CycleExpansionOptions opt;
    opt.n_max = 12;
    const cplx cont = zeta_from_determinants(model, chi, lam, opt);
    const auto spec = suspension_spectrum(model, chi, 14, 0.0);
    TruncationPolicy p;
    p.n_max = 14;
    p.j_max = 14;
    const auto euler = ruelle_log_zeta(spec, lam, p);
    CHECK(std::abs(std::log(cont) - euler.log_value) <= std::max(euler.tail_bound, 1e-13));
  }
}

TEST_CASE("super-exponential decay for small roof perturbations") {
  const SuspensionModel model(cat(), TrigPolynomial(1.0, {{1, 0, 0.1, 0.0}}));
  CycleExpansionOptions opt;
  opt.n_max = 14;
  for (int k = 0; k <= 2; ++k) {
    const auto d = dynamical_determinant(model, Character::make(cat(), 0.5), k, 0.0, opt);
    CHECK(d.converged);
    CHECK_FALSE(d.continuation_unreliable);
  }
}

TEST_CASE("local constancy of zeta at zero along a time change") {
  const SuspensionModel model(cat(), TrigPolynomial(1.0), TrigPolynomial(0.0, {{1, 0, 0.05, 0.0}, {1, 1, 0.0, 0.03}}));
  const Character chi = Character::make(cat(), 0.5);
  CycleExpansionOptions opt;
  opt.n_max = 10;
  const cplx z0 = zeta_at_zero(model, chi, opt).value;
  for (double tau : {0.05, 0.1, -0.1}) {
    opt.tau = tau;
    CHECK(testing::rel_err(zeta_at_zero(model, chi, opt).value, z0) < 1e-9);
  }
}

TEST_CASE("worker count does not change results") {
  const SuspensionModel model(cat(), TrigPolynomial(1.0, {{1, 1, 0.05, 0.02}}));
  CycleExpansionOptions a;
  a.n_max = 10;
  a.workers = 1;
  CycleExpansionOptions b = a;
  b.workers = 3;
  const Character chi = Character::make(cat(), 0.5);
  for (int k = 0; k <= 2; ++k) {
    CHECK(dynamical_determinant(model, chi, k, cplx(0.3, 0.1), a).value ==
          dynamical_determinant(model, chi, k, cplx(0.3, 0.1), b).value);
  }
}

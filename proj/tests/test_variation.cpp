#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "fried/errors.hpp"
#include "fried/variation.hpp"
#include "test_support.hpp"

using namespace fried;

namespace {

const ToralAutomorphism& cat() {
  static const ToralAutomorphism a(Mat2i{2, 1, 1, 1});
  return a;
}

TruncationPolicy variation_policy(int n_max) {
  TruncationPolicy p;
  p.n_max = n_max;
  p.j_max = n_max;
  return p;
}

}  // namespace

TEST_CASE("variation: trivial cases") {
  const SuspensionModel flat(cat(), TrigPolynomial(1.0));
  const Character chi = Character::make(cat(), 0.5);
  const auto p = variation_policy(8);
  CHECK(variation_rhs(flat, chi, 3.0, 0.0, p).ratio == cplx(1.0));
  const auto r = variation_rhs(flat, chi, 3.0, 0.1, p);
  CHECK(std::abs(r.ratio - 1.0) < 1e-15);
  CHECK(std::abs(direct_quotient(flat, chi, 3.0, 0.1, p) - 1.0) < 1e-15);
}

TEST_CASE("variation formula against the direct quotient") {
  const SuspensionModel model(cat(), TrigPolynomial(1.0), TrigPolynomial(0.0, {{1, 0, 0.05, 0.0}}));
  const auto p = variation_policy(10);
  for (double frac : {0.5, 0.0, 0.3}) {
    const Character chi = Character::make(cat(), frac);
    const auto r = variation_rhs(model, chi, 3.0, 0.1, p);
    const cplx direct = direct_quotient(model, chi, 3.0, 0.1, p);
    CHECK(testing::rel_err(r.ratio, direct) < 1e-6);
    CHECK(r.richardson_delta <= 1e-8);
    CHECK(r.max_form_residual < 1e-12);
    CHECK(std::abs(r.ratio - 1.0) > 1e-5);
  }
  CHECK_THROWS_AS(variation_rhs(model, Character::make(cat(), 0.5), 0.5, 0.1, p), ConvergenceError);
}

TEST_CASE("variation with a richer family and negative orientation") {
  const ToralAutomorphism a(Mat2i{-2, -1, -1, -1});
  const SuspensionModel model(a, TrigPolynomial(1.0, {{0, 1, 0.1, 0.0}}),
                              TrigPolynomial(0.02, {{1, 0, 0.05, 0.0}, {1, 1, 0.0, 0.04}}));
  const auto p = variation_policy(8);
  const Character chi = Character::make(a, 0.2);
  const cplx lam(3.0, 0.7);
  const auto r = variation_rhs(model, chi, lam, -0.3, p);
  CHECK(testing::rel_err(r.ratio, direct_quotient(model, chi, lam, -0.3, p)) < 1e-6);
  CHECK(r.max_form_residual < 1e-12);
}

TEST_CASE("determinant expansion: closed cases") {
  MatrixFamily id{[](double) { return Eigen::MatrixXd::Identity(3, 3); },
                  [](double) { return Eigen::MatrixXd::Zero(3, 3); }};
  Eigen::MatrixXd m(3, 3);
  m << 0.2, 0.1, 0.0, 0.3, -0.4, 0.5, 0.0, 0.2, 0.7;
  const auto r0 = determinant_expansion_check(id, m, 0.3);
  CHECK(std::abs(r0.q_closed) < 1e-15);
  CHECK(std::abs(r0.q_fd) < 1e-9);

  MatrixFamily scale{[](double t) { return Eigen::MatrixXd::Constant(1, 1, 1.0 + t); },
                     [](double) { return Eigen::MatrixXd::Constant(1, 1, 1.0); }};
  for (double mu : {0.3, -2.0, 4.0}) {
    const auto r = determinant_expansion_check(scale, Eigen::MatrixXd::Constant(1, 1, mu), 0.0);
    CHECK(r.q_closed == doctest::Approx(mu / (1 - mu)).epsilon(1e-14));
    CHECK(r.residual < 1e-8);
  }
  CHECK_THROWS_AS(determinant_expansion_check(scale, Eigen::MatrixXd::Constant(1, 1, 1.0), 0.0), ValidationError);
}

TEST_CASE("determinant expansion: random exponential families") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 5;
    Eigen::MatrixXd b(dim, dim);
    Eigen::MatrixXd m(dim, dim);
    for (int i = 0; i < dim * dim; ++i) {
      b.data()[i] = 0.5 * n(rng);
      m.data()[i] = 0.5 * n(rng);
    }
    MatrixFamily s{[b](double t) { return Eigen::MatrixXd((t * b).exp()); },
                   [b](double t) { return Eigen::MatrixXd(b * (t * b).exp()); }};
    const auto r = determinant_expansion_check(s, m, 0.4);
    CHECK(r.residual < 1e-7);
  }
}

TEST_CASE("Guillemin series") {
  const SuspensionModel model(cat(), TrigPolynomial(1.0));
  const Character chi = Character::trivial(cat());
  CHECK(guillemin_series(model, chi, 0, 0.5, GuilleminWeights::identity).empty());
  const auto s = guillemin_series(model, chi, 0, 3.5, GuilleminWeights::identity);
  std::map<int, int> mult;
  for (const auto& e : s) ++mult[static_cast<int>(std::lround(e.t))];
  CHECK(mult == std::map<int, int>{{1, 1}, {2, 3}, {3, 6}});
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1].t <= s[i].t);
  const auto orbits = primitive_orbits(cat(), 3);
  for (const auto& e : s) {
    const int period = std::stoi(e.label.substr(0, e.label.find(':')));
    const double lu = std::pow(cat().lambda_u(), period * e.iterate);
    const double det = std::abs((1 - lu) * (1 - 1 / lu));
    CHECK(std::abs(e.coefficient - static_cast<double>(period) / det) < 1e-12);
  }
  CHECK_THROWS_AS(guillemin_series(model, chi, 4, 3.5, GuilleminWeights::identity), ValidationError);
}

TEST_CASE("Guillemin time-change weights alternate to the orbit integral of q") {
  const SuspensionModel model(cat(), TrigPolynomial(1.0), TrigPolynomial(0.0, {{1, 0, 0.05, 0.0}, {0, 1, 0.0, 0.02}}));
  const Character chi = Character::make(cat(), 0.5);
  const double tau = 0.2;
  std::vector<std::vector<GuilleminEntry>> by_k;
  for (int k = 0; k <= 3; ++k) by_k.push_back(guillemin_series(model, chi, k, 4.5, GuilleminWeights::time_change, tau));
  const auto orbits = primitive_orbits(cat(), 5);
  for (std::size_t i = 0; i < by_k[0].size(); ++i) {
    cplx alt = 0.0;
    for (int k = 0; k <= 3; ++k) alt += (k % 2 == 0 ? 1.0 : -1.0) * by_k[static_cast<std::size_t>(k)][i].coefficient;
    const auto& e = by_k[0][i];
    const auto it = std::find_if(orbits.begin(), orbits.end(), [&](const OrbitRecord& o) {
      std::ostringstream os;
      os << o.period << ':' << o.base.num1 << ',' << o.base.num2 << '/' << o.base.den;
      return os.str() == e.label;
    });
    REQUIRE(it != orbits.end());
    const cplx expect = variation_coefficient(model, *it, tau) * std::pow(holonomy(chi, it->homology), e.iterate);
    double mag = 0.0;
    for (const auto& p : orbit_points(cat(), *it)) mag += std::abs(model.time_change().at_rational(p.first, p.second, it->base.den));
    CHECK(std::abs(alt - expect) < 1e-13 * std::max(mag, 1e-3));
  }
}

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "fried/errors.hpp"
#include "fried/kleinian_spectrum.hpp"

using namespace fried;

namespace {

constexpr double kPi = std::numbers::pi;

// All reduced cyclic words of length n over {a, A, b, B}, modulo rotation.
std::set<std::vector<int>> brute_force_classes(int n) {
  std::set<std::vector<int>> out;
  std::vector<int> w(static_cast<std::size_t>(n), 0);
  const int total = 1 << (2 * n);
  for (int code = 0; code < total; ++code) {
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = (code >> (2 * i)) & 3;
    if (!cyclically_reduced(w)) continue;
    std::vector<int> best = w;
    for (int r = 1; r < n; ++r) {
      std::vector<int> rot(w.begin() + r, w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + r);
      best = std::min(best, rot);
    }
    out.insert(best);
  }
  return out;
}

Mat2c random_sl2(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  Mat2c m;
  m << cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng));
  return m / std::sqrt(m.determinant());
}

}  // namespace

TEST_CASE("Mobius generators") {
  Mat2c m;
  m << 2.0, 0.0, 0.0, 0.5;
  CHECK(MobiusGenerator(m).loxodromic());
  m << 1.0, 1.0, 0.0, 1.0;
  CHECK_FALSE(MobiusGenerator(m).loxodromic());
  m << 2.0, 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(MobiusGenerator{m}, ValidationError);
}

TEST_CASE("conjugacy class enumeration, small lengths") {
  const auto l1 = enumerate_conjugacy_classes(2, 1);
  CHECK(l1.size() == 4);
  for (const auto& w : l1) CHECK(w.primitive);
  const auto l2 = enumerate_conjugacy_classes(2, 2);
  CHECK(l2.size() == 4 + 8);
  std::set<std::string> nonprim;
  for (const auto& w : l2) {
    if (!w.primitive) nonprim.insert(word_label(w.letters));
  }
  CHECK(nonprim == std::set<std::string>{"aa", "AA", "bb", "BB"});
  std::set<std::string> len2;
  for (const auto& w : l2) {
    if (w.length() == 2) len2.insert(word_label(w.letters));
  }
  CHECK(len2 == std::set<std::string>{"aa", "AA", "bb", "BB", "ab", "aB", "Ab", "AB"});
}

TEST_CASE("length-3 class count agrees with brute force") {
  const auto l3 = enumerate_conjugacy_classes(2, 3);
  const auto n3 = std::count_if(l3.begin(), l3.end(), [](const CyclicWord& w) { return w.length() == 3; });
  const auto brute = brute_force_classes(3);
  CHECK(static_cast<std::size_t>(n3) == brute.size());
  CHECK(n3 == 12);
  // lengths 2 and 3 together
  CHECK(brute_force_classes(2).size() + brute.size() == 20);
}

TEST_CASE("enumeration matches brute force up to length 6") {
  const auto all = enumerate_conjugacy_classes(2, 6, 3);
  for (int n = 1; n <= 6; ++n) {
    std::set<std::vector<int>> got;
    for (const auto& w : all) {
      if (static_cast<int>(w.length()) == n) {
        got.insert(w.letters);
        CHECK(w.primitive == (minimal_period(w.letters) == w.length()));
      }
    }
    CHECK(got == brute_force_classes(n));
  }
  CHECK(all == enumerate_conjugacy_classes(2, 6, 1));
}

TEST_CASE("canonicalization is idempotent and rotation invariant") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> w;
    const int n = 1 + static_cast<int>(rng() % 8);
    while (static_cast<int>(w.size()) < n) {
      const int c = static_cast<int>(rng() % 4);
      if (!w.empty() && c == inverse_letter(w.back())) continue;
      w.push_back(c);
    }
    const auto c = canonical_rotation(w);
    CHECK(canonical_rotation(c) == c);
    std::vector<int> rot(w.begin() + 1, w.end());
    rot.push_back(w.front());
    CHECK(canonical_rotation(rot) == c);
    CHECK(parse_word(word_label(w)) == w);
  }
}

TEST_CASE("complex length") {
  const double l0 = 1.3;
  const double t0 = 0.7;
  Mat2c d = Mat2c::Zero();
  d(0, 0) = std::exp(cplx(l0, t0) / 2.0);
  d(1, 1) = std::exp(-cplx(l0, t0) / 2.0);
  auto cl = complex_length(d);
  CHECK(cl.ell == doctest::Approx(l0).epsilon(1e-14));
  CHECK(cl.theta == doctest::Approx(t0).epsilon(1e-14));

  Mat2c m;
  m << 3.0, -1.0, 1.0, 0.0;  // trace 3
  cl = complex_length(m);
  CHECK(cl.ell == doctest::Approx(2 * std::acosh(1.5)).epsilon(1e-14));
  CHECK(cl.ell == doctest::Approx(1.92485).epsilon(1e-5));
  CHECK(std::abs(cl.theta) < 1e-14);

  m << cplx(0, 2), -1.0, 1.0, 0.0;  // trace 2i
  cl = complex_length(m);
  CHECK(cl.ell == doctest::Approx(2 * std::log(1 + std::sqrt(2.0))).epsilon(1e-14));
  CHECK(cl.ell == doctest::Approx(1.76275).epsilon(1e-5));
  CHECK(cl.theta == doctest::Approx(kPi).epsilon(1e-14));

  m << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(complex_length(m), ValidationError);
}

TEST_CASE("complex length: conjugation invariance and powers") {
  std::mt19937_64 rng(8);
  int checked = 0;
  while (checked < 50) {
    const Mat2c m = random_sl2(rng);
    if (!MobiusGenerator(m).loxodromic()) continue;
    const auto cl = complex_length(m);
    if (cl.ell < 0.05) continue;
    const Mat2c g = random_sl2(rng);
    const auto cg = complex_length(g * m * g.inverse());
    CHECK(std::abs(cg.ell - cl.ell) <= 1e-10 * cl.ell);
    CHECK(std::abs(reduce_angle(cg.theta - cl.theta)) < 1e-9);
    Mat2c p = Mat2c::Identity();
    for (int j = 1; j <= 4; ++j) {
      p = p * m;
      const auto cj = complex_length(p);
      CHECK(std::abs(cj.ell - j * cl.ell) <= 1e-10 * j * cl.ell);
      CHECK(std::abs(reduce_angle(cj.theta - j * cl.theta)) < 1e-9);
    }
    ++checked;
  }
}

TEST_CASE("loxodromic generators realize their complex length") {
  const auto g = loxodromic_generator(2.5, -1.1, cplx(0.3, 0.2), cplx(-1.0, 0.5));
  const auto cl = complex_length(g.matrix());
  CHECK(cl.ell == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(cl.theta == doctest::Approx(-1.1).epsilon(1e-12));
  // attracting fixed point
  const Mat2c& m = g.matrix();
  const cplx p(0.3, 0.2);
  CHECK(std::abs((m(0, 0) * p + m(0, 1)) / (m(1, 0) * p + m(1, 1)) - p) < 1e-12);
}

TEST_CASE("Poincare data") {
  {
    const double ell = 0.8;
    const auto pd = poincare_data(ell, 0.0, 1, 0);
    CHECK(pd.wedge_trace == 1.0);
    CHECK(pd.det_one_minus_p_stable == doctest::Approx(std::pow(1 - std::exp(-ell), 2)).epsilon(1e-14));
  }
  CHECK(poincare_data(1.0, kPi / 3, 2, 0).det_one_minus_p_stable ==
        doctest::Approx(1 - 2 * std::exp(-2.0) * std::cos(2 * kPi / 3) + std::exp(-4.0)).epsilon(1e-14));
  CHECK(poincare_data(1.0, kPi / 3, 2, 0).det_one_minus_p_stable == doctest::Approx(1.15364).epsilon(1e-5));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  std::uniform_real_distribution<double> t(-kPi, kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const double ell = u(rng);
    const double th = t(rng);
    const int j = 1 + static_cast<int>(rng() % 3);
    const Eigen::Matrix4d p = poincare_matrix(ell, th, j);
    const double det = (Eigen::Matrix4d::Identity() - p).determinant();
    const auto pd = poincare_data(ell, th, j, 0);
    CHECK(std::abs(pd.det_one_minus_p - std::abs(det)) <= 1e-12 * std::abs(det));
    // |det(1 - P^j)| = e^{2 j ell} det(1 - e^{-j ell} R_{j theta}) det(1 - P_s^j)
    const double x = j * ell;
    const double rhs = std::exp(2 * x) * (1 - 2 * std::exp(-x) * std::cos(j * th) + std::exp(-2 * x)) *
                       pd.det_one_minus_p_stable;
    CHECK(std::abs(pd.det_one_minus_p - rhs) <= 1e-12 * rhs);
    for (int k = 0; k <= 4; ++k) {
      // wedge traces from the eigenvalues e^{-x +- i j th}, e^{x +- i j th}
      const std::vector<cplx> ev = {std::exp(cplx(-x, j * th)), std::exp(cplx(-x, -j * th)),
                                    std::exp(cplx(x, j * th)), std::exp(cplx(x, -j * th))};
      cplx e = 0.0;
      for (int mask = 0; mask < 16; ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
        cplx prod = 1.0;
        for (int b = 0; b < 4; ++b) {
          if (mask & (1 << b)) prod *= ev[static_cast<std::size_t>(b)];
        }
        e += prod;
      }
      const double wt = poincare_data(ell, th, j, k).wedge_trace;
      CHECK(std::abs(wt - e.real()) <= 1e-11 * std::max(1.0, std::abs(wt)));
    }
  }
}

TEST_CASE("Schottky spectrum") {
  const auto gens = default_schottky_pair();
  CHECK(disc_separation_heuristic(gens));
  const auto spec = schottky_spectrum(gens, 4, 2);
  CHECK_FALSE(spec.empty());
  for (std::size_t i = 1; i < spec.size(); ++i) CHECK(spec[i - 1].ell <= spec[i].ell);
  for (const auto& r : spec) {
    CHECK(r.primitive);
    const auto cl = complex_length(word_matrix(gens, parse_word(r.label)));
    CHECK(cl.ell == doctest::Approx(r.ell).epsilon(1e-12));
    CHECK(std::abs(reduce_angle(cl.theta - r.theta)) < 1e-10);
  }
  // generators themselves
  auto it = std::find_if(spec.begin(), spec.end(), [](const auto& r) { return r.label == "a"; });
  REQUIRE(it != spec.end());
  CHECK(it->ell == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(it->theta == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(schottky_spectrum(gens, 4, 1).size() == spec.size());
}

TEST_CASE("synthetic spectrum") {
  CHECK(synthetic_spectrum(2.0, 0, 1).empty());
  const auto a = synthetic_spectrum(2.0, 300, 42);
  const auto b = synthetic_spectrum(2.0, 300, 42);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].ell == b[i].ell);
    CHECK(a[i].theta == b[i].theta);
    CHECK(a[i].label == b[i].label);
    CHECK(a[i].ell >= 1.0);
    CHECK(a[i].theta > -kPi);
    CHECK(a[i].theta <= kPi);
    if (i > 0) CHECK(a[i - 1].ell <= a[i].ell);
  }
  CHECK(synthetic_spectrum(2.0, 300, 43)[5].ell != a[5].ell);
  const auto big = synthetic_spectrum(2.0, 1000, 7);
  CHECK(std::abs(big.back().ell - std::log(1000.0) / 2.0) <= 1.5);
  CHECK(counting_check(big, 2.0).within_factor_two());
  CHECK(counting_check(synthetic_spectrum(0.5, 500, 3), 0.5).within_factor_two());
}

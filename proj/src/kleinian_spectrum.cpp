#include "fried/kleinian_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "fried/errors.hpp"
#include "fried/linalg.hpp"

namespace fried {

MobiusGenerator::MobiusGenerator(const Mat2c& m) : m_(m) {
  if (std::abs(m.determinant() - cplx{1.0, 0.0}) >= 1e-12) {
    throw ValidationError("Mobius generator must have determinant 1");
  }
}

bool MobiusGenerator::loxodromic() const {
  const cplx t = trace();
  return !(std::abs(t.imag()) <= 1e-14 * std::max(1.0, std::abs(t)) && std::abs(t.real()) <= 2.0);
}

MobiusGenerator loxodromic_generator(double ell, double theta, cplx attracting, cplx repelling) {
  if (!(ell > 0.0)) throw ValidationError("loxodromic generator needs ell > 0");
  const cplx mu = std::exp(cplx{ell, theta} / 2.0);
  Mat2c t;
  t << attracting, repelling, 1.0, 1.0;
  const cplx dt = t.determinant();
  if (std::abs(dt) < 1e-14) throw ValidationError("fixed points must be distinct");
  Mat2c d = Mat2c::Zero();
  d(0, 0) = mu;
  d(1, 1) = 1.0 / mu;
  Mat2c m = t * d * t.inverse();
  return MobiusGenerator(m / std::sqrt(m.determinant()));
}

bool cyclically_reduced(const std::vector<int>& w) {
  const std::size_t n = w.size();
  if (n == 0) return false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (w[i + 1] == inverse_letter(w[i])) return false;
  }
  return n == 1 || w.front() != inverse_letter(w.back());
}

std::vector<int> canonical_rotation(const std::vector<int>& w) {
  std::vector<int> best = w;
  std::vector<int> r = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (r < best) best = r;
  }
  return best;
}

std::size_t minimal_period(const std::vector<int>& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return p;
  }
  return n;
}

std::string word_label(const std::vector<int>& w) {
  std::string s;
  for (int c : w) {
    const char base = (c % 2 == 0) ? 'a' : 'A';
    s.push_back(static_cast<char>(base + c / 2));
  }
  return s;
}

std::vector<int> parse_word(const std::string& label) {
  std::vector<int> w;
  for (char ch : label) {
    if (ch >= 'a' && ch <= 'z') {
      w.push_back(2 * (ch - 'a'));
    } else if (ch >= 'A' && ch <= 'Z') {
      w.push_back(2 * (ch - 'A') + 1);
    } else {
      throw ValidationError(std::string("bad letter in word label: ") + ch);
    }
  }
  return w;
}

namespace {

void extend_words(std::vector<int>& prefix, int letters, std::size_t target, std::vector<CyclicWord>& out) {
  if (prefix.size() == target) {
    if (cyclically_reduced(prefix) && canonical_rotation(prefix) == prefix) {
      out.push_back(CyclicWord{prefix, minimal_period(prefix) == prefix.size()});
    }
    return;
  }
  for (int c = 0; c < letters; ++c) {
    if (!prefix.empty() && c == inverse_letter(prefix.back())) continue;
    // A canonical representative never starts with a letter larger than
    // any later letter.
    if (c < prefix.front()) continue;
    prefix.push_back(c);
    extend_words(prefix, letters, target, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<CyclicWord> enumerate_conjugacy_classes(int num_generators, int l_max, unsigned workers) {
  if (num_generators < 2) throw ValidationError("need at least 2 generators");
  if (num_generators > 26) throw ValidationError("at most 26 generators are supported");
  if (l_max < 1) throw ValidationError("l_max must be >= 1");
  const int letters = 2 * num_generators;
  std::vector<CyclicWord> out;
  for (int len = 1; len <= l_max; ++len) {
    std::vector<std::vector<CyclicWord>> by_first(static_cast<std::size_t>(letters));
    parallel_for(
        static_cast<std::size_t>(letters),
        [&](std::size_t first) {
          std::vector<int> prefix{static_cast<int>(first)};
          extend_words(prefix, letters, static_cast<std::size_t>(len), by_first[first]);
        },
        workers);
    for (auto& block : by_first) {
      out.insert(out.end(), std::make_move_iterator(block.begin()), std::make_move_iterator(block.end()));
    }
  }
  return out;
}

std::vector<CyclicWord> enumerate_conjugacy_classes(const std::vector<MobiusGenerator>& generators, int l_max,
                                                    unsigned workers) {
  return enumerate_conjugacy_classes(static_cast<int>(generators.size()), l_max, workers);
}

Mat2c word_matrix(const std::vector<MobiusGenerator>& generators, const std::vector<int>& letters) {
  Mat2c m = Mat2c::Identity();
  for (int c : letters) {
    const std::size_t g = static_cast<std::size_t>(c / 2);
    if (g >= generators.size()) throw ValidationError("word uses a letter beyond the generator list");
    const Mat2c& x = generators[g].matrix();
    if (c % 2 == 0) {
      m = m * x;
    } else {
      Mat2c inv;
      inv << x(1, 1), -x(0, 1), -x(1, 0), x(0, 0);
      m = m * inv;
    }
  }
  return m;
}

double reduce_angle(double theta) {
  double r = std::remainder(theta, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

ComplexLength complex_length(const Mat2c& m) {
  const cplx t = m.trace();
  if (std::abs(t.imag()) <= 1e-14 * std::max(1.0, std::abs(t)) && std::abs(t.real()) <= 2.0) {
    throw ValidationError("not loxodromic: trace lies in [-2, 2]");
  }
  const cplx s = std::sqrt(t * t / 4.0 - m.determinant());
  const cplx l1 = t / 2.0 + s;
  const cplx l2 = t / 2.0 - s;
  const cplx lam = std::abs(l1) >= std::abs(l2) ? l1 : l2;
  return ComplexLength{2.0 * std::log(std::abs(lam)), reduce_angle(2.0 * std::arg(lam))};
}

Eigen::Matrix4d poincare_matrix(double ell, double theta, int j) {
  const double c = std::cos(j * theta);
  const double s = std::sin(j * theta);
  const double es = std::exp(-j * ell);
  const double eu = std::exp(j * ell);
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  p(0, 0) = es * c;
  p(0, 1) = -es * s;
  p(1, 0) = es * s;
  p(1, 1) = es * c;
  p(2, 2) = eu * c;
  p(2, 3) = -eu * s;
  p(3, 2) = eu * s;
  p(3, 3) = eu * c;
  return p;
}

PoincareData poincare_data(double ell, double theta, int j, int k) {
  if (!(ell > 0.0)) throw ValidationError("poincare_data needs ell > 0");
  if (j < 1) throw ValidationError("iterate index must be >= 1");
  if (k < 0 || k > 4) throw ValidationError("wedge degree must lie in 0..4");
  const double c = std::cos(j * theta);
  const double es = std::exp(-j * ell);
  const double eu = std::exp(j * ell);
  PoincareData d;
  d.det_one_minus_p_stable = 1.0 - 2.0 * es * c + es * es;
  d.det_one_minus_p = d.det_one_minus_p_stable * (1.0 - 2.0 * eu * c + eu * eu);
  d.wedge_trace = linalg::wedge_trace(poincare_matrix(ell, theta, j), k);
  return d;
}

std::vector<ComplexLengthRecord> schottky_spectrum(const std::vector<MobiusGenerator>& generators, int l_max,
                                                   unsigned workers) {
  std::vector<ComplexLengthRecord> out;
  for (const auto& w : enumerate_conjugacy_classes(generators, l_max, workers)) {
    if (!w.primitive) continue;
    const ComplexLength cl = complex_length(word_matrix(generators, w.letters));
    out.push_back(ComplexLengthRecord{word_label(w.letters), cl.ell, cl.theta, true, 1});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.ell != y.ell ? x.ell < y.ell : x.label < y.label;
  });
  return out;
}

bool disc_separation_heuristic(const std::vector<MobiusGenerator>& generators) {
  struct Disc {
    cplx center;
    double radius;
  };
  std::vector<Disc> discs;
  for (const auto& g : generators) {
    const Mat2c& m = g.matrix();
    const cplx c = m(1, 0);
    if (std::abs(c) < 1e-14) return false;
    const double r = 1.0 / std::abs(c);
    discs.push_back({-m(1, 1) / c, r});
    discs.push_back({m(0, 0) / c, r});
  }
  for (std::size_t i = 0; i < discs.size(); ++i) {
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      if (std::abs(discs[i].center - discs[j].center) <= discs[i].radius + discs[j].radius) return false;
    }
  }
  return true;
}

std::vector<MobiusGenerator> default_schottky_pair(double ell, double theta_a, double theta_b) {
  return {loxodromic_generator(ell, theta_a, cplx{1.0, 0.0}, cplx{-1.0, 0.0}),
          loxodromic_generator(ell, theta_b, cplx{0.0, 1.0}, cplx{0.0, -1.0})};
}

namespace {

double margulis_count(double h, double ell) { return std::exp(h * ell) / ell; }

// G is increasing on [1/h, inf), so bisection on a doubling bracket.
double invert_count(double h, double lo, double y) {
  double hi = std::max(2.0 * lo, lo + 1.0);
  while (margulis_count(h, hi) < y) hi = lo + 2.0 * (hi - lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (margulis_count(h, mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<ComplexLengthRecord> synthetic_spectrum(double h, std::size_t n, std::uint64_t seed) {
  if (!(h > 0.0)) throw ValidationError("synthetic_spectrum needs h > 0");
  std::vector<ComplexLengthRecord> out;
  out.reserve(n);
  std::mt19937_64 rng(seed);
  const double ell0 = std::max(1.0, 1.0 / h);
  const double c0 = margulis_count(h, ell0);
  double prev = ell0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform01(rng);
    const double v = uniform01(rng);
    const double ell = invert_count(h, prev, c0 + static_cast<double>(i) + u);
    prev = ell;
    const double theta = std::numbers::pi - 2.0 * std::numbers::pi * v;
    out.push_back(ComplexLengthRecord{"s" + std::to_string(i), ell, theta, true, 1});
  }
  return out;
}

CountingCheck counting_check(const std::vector<ComplexLengthRecord>& spectrum, double h) {
  CountingCheck c;
  if (spectrum.empty()) return c;
  std::vector<double> ells;
  for (const auto& r : spectrum) {
    for (int m = 0; m < r.multiplicity; ++m) ells.push_back(r.ell);
  }
  std::sort(ells.begin(), ells.end());
  c.min_ratio = std::numeric_limits<double>::infinity();
  c.max_ratio = 0.0;
  for (std::size_t i = ells.size() / 2; i < ells.size(); ++i) {
    const double ratio = static_cast<double>(i + 1) / margulis_count(h, ells[i]);
    c.min_ratio = std::min(c.min_ratio, ratio);
    c.max_ratio = std::max(c.max_ratio, ratio);
  }
  return c;
}

}  // namespace fried

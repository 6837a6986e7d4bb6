#include "fried/torsion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fried/errors.hpp"

namespace fried {

BasedChainComplex::BasedChainComplex(std::vector<int> dims, std::vector<Eigen::MatrixXcd> boundaries)
    : dims_(std::move(dims)), d_(std::move(boundaries)) {
  if (dims_.empty()) throw ValidationError("chain complex needs at least one degree");
  if (d_.size() + 1 != dims_.size()) throw ValidationError("need one boundary matrix per positive degree");
  for (int n : dims_) {
    if (n < 0) throw ValidationError("negative chain dimension");
  }
  for (int k = 1; k <= top_degree(); ++k) {
    const auto& m = d_[static_cast<std::size_t>(k - 1)];
    if (m.rows() != dim(k - 1) || m.cols() != dim(k)) {
      throw ValidationError("boundary d_" + std::to_string(k) + " has the wrong shape");
    }
  }
  for (int k = 2; k <= top_degree(); ++k) {
    const Eigen::MatrixXcd& a = d_[static_cast<std::size_t>(k - 2)];
    const Eigen::MatrixXcd& b = d_[static_cast<std::size_t>(k - 1)];
    if (a.size() == 0 || b.size() == 0) continue;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff());
    if ((a * b).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw ValidationError("d_" + std::to_string(k - 1) + " d_" + std::to_string(k) + " is not zero");
    }
  }
}

Eigen::MatrixXcd BasedChainComplex::boundary(int k) const {
  if (k < 1 || k > top_degree()) return Eigen::MatrixXcd::Zero(dim(k - 1), dim(k));
  return d_[static_cast<std::size_t>(k - 1)];
}

int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::MatrixXcd a = m;
  const double largest = a.cwiseAbs().maxCoeff();
  if (largest == 0.0) return 0;
  const double thresh = rel_tol * largest;
  int rank = 0;
  std::vector<bool> used(static_cast<std::size_t>(a.rows()), false);
  for (Eigen::Index col = 0; col < a.cols(); ++col) {
    Eigen::Index best = -1;
    double best_abs = thresh;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (!used[static_cast<std::size_t>(r)] && std::abs(a(r, col)) > best_abs) {
        best_abs = std::abs(a(r, col));
        best = r;
      }
    }
    if (best < 0) continue;
    used[static_cast<std::size_t>(best)] = true;
    ++rank;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == best) continue;
      const cplx f = a(r, col) / a(best, col);
      a.row(r) -= f * a.row(best);
    }
  }
  return rank;
}

AcyclicityReport is_acyclic(const BasedChainComplex& c) {
  AcyclicityReport rep;
  const int top = c.top_degree();
  std::vector<int> ranks(static_cast<std::size_t>(top) + 2, 0);
  for (int k = 1; k <= top; ++k) ranks[static_cast<std::size_t>(k)] = numerical_rank(c.boundary(k));
  rep.acyclic = true;
  for (int k = 0; k <= top; ++k) {
    const int b = c.dim(k) - ranks[static_cast<std::size_t>(k)] - ranks[static_cast<std::size_t>(k) + 1];
    rep.homology_ranks.push_back(b);
    if (b != 0) rep.acyclic = false;
  }
  return rep;
}

std::string convention_name(TorsionConvention c) { return c == TorsionConvention::turaev ? "turaev" : "milnor"; }

namespace {

// Rows of m (full column rank) chosen by partial pivoting on the columns in
// order; returned sorted.
std::vector<int> pivot_rows(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd a = m;
  std::vector<bool> used(static_cast<std::size_t>(a.rows()), false);
  std::vector<int> rows;
  const double largest = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index col = 0; col < a.cols(); ++col) {
    Eigen::Index best = -1;
    double best_abs = 1e-10 * largest;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (!used[static_cast<std::size_t>(r)] && std::abs(a(r, col)) > best_abs) {
        best_abs = std::abs(a(r, col));
        best = r;
      }
    }
    if (best < 0) throw ConvergenceError("numerically singular minor chain in torsion computation");
    used[static_cast<std::size_t>(best)] = true;
    rows.push_back(static_cast<int>(best));
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == best) continue;
      a.row(r) -= (a(r, col) / a(best, col)) * a.row(best);
    }
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

TorsionValue chain_torsion(const BasedChainComplex& c, TorsionConvention conv) {
  const auto acyc = is_acyclic(c);
  if (!acyc.acyclic) throw ValidationError("torsion needs an acyclic complex");
  const int top = c.top_degree();
  std::vector<int> s(static_cast<std::size_t>(c.dim(top)));
  std::iota(s.begin(), s.end(), 0);
  double log_mod = 0.0;
  cplx phase{1.0, 0.0};
  for (int k = top; k >= 1; --k) {
    const Eigen::MatrixXcd d = c.boundary(k);
    Eigen::MatrixXcd cols(d.rows(), static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = d.col(s[i]);
    const std::vector<int> r = s.empty() ? std::vector<int>{} : pivot_rows(cols);
    cplx det{1.0, 0.0};
    if (!s.empty()) {
      Eigen::MatrixXcd minor(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(s.size()));
      for (std::size_t i = 0; i < r.size(); ++i) minor.row(static_cast<Eigen::Index>(i)) = cols.row(r[i]);
      det = minor.determinant();
    }
    if (std::abs(det) == 0.0) throw ConvergenceError("numerically singular minor chain in torsion computation");
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^{k+1}
    log_mod += sign * std::log(std::abs(det));
    phase *= sign > 0 ? det / std::abs(det) : std::abs(det) / det;
    std::vector<int> next;
    for (int i = 0; i < c.dim(k - 1); ++i) {
      if (!std::binary_search(r.begin(), r.end(), i)) next.push_back(i);
    }
    s = std::move(next);
  }
  if (!s.empty()) throw ConvergenceError("numerically singular minor chain in torsion computation");
  TorsionValue t;
  t.convention = conv;
  if (conv == TorsionConvention::turaev) {
    t.modulus = std::exp(log_mod);
    t.phase = phase;
  } else {
    t.modulus = std::exp(-log_mod);
    t.phase = std::conj(phase);
  }
  return t;
}

BasedChainComplex mapping_cone_complex(const ToralAutomorphism& a, const Character& chi) {
  if (!chi.fiber_trivial()) throw ValidationError("mapping cone complex is built for fiber-trivial characters");
  const cplx u = chi.u;
  const Mat2i& m = a.matrix();
  // Degree k holds the cells of T^2 in degree k, then e x I for the cells e
  // of degree k-1. The cellular boundary of T^2 vanishes.
  Eigen::MatrixXcd d1 = Eigen::MatrixXcd::Zero(1, 3);
  d1(0, 2) = 1.0 - u;
  Eigen::MatrixXcd d2 = Eigen::MatrixXcd::Zero(3, 3);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      d2(i, j + 1) = (i == j ? 1.0 : 0.0) - u * static_cast<double>(m(i, j));
    }
  }
  Eigen::MatrixXcd d3 = Eigen::MatrixXcd::Zero(3, 1);
  d3(0, 0) = 1.0 - u * static_cast<double>(a.det());
  return BasedChainComplex({1, 3, 3, 1}, {d1, -d2, d3});
}

TorsionValue mapping_torus_torsion(const ToralAutomorphism& a, const Character& chi, TorsionConvention conv) {
  if (!chi.fiber_trivial()) {
    throw ValidationError("closed-form torsion covers fiber-trivial characters only");
  }
  const cplx u = chi.u;
  const Mat2i& m = a.matrix();
  const cplx h0 = 1.0 - u;
  const cplx h1 = (1.0 - u * static_cast<double>(m(0, 0))) * (1.0 - u * static_cast<double>(m(1, 1))) -
                  u * u * static_cast<double>(m(0, 1) * m(1, 0));
  const cplx h2 = 1.0 - u * static_cast<double>(a.det());
  for (const cplx& f : {h0, h1, h2}) {
    if (std::abs(f) < 1e-12) throw ValidationError("character is not acyclic: det(I - u H^k(A)) = 0");
  }
  const cplx turaev = h0 * h2 / h1;
  TorsionValue t;
  t.convention = conv;
  const cplx v = conv == TorsionConvention::turaev ? turaev : 1.0 / turaev;
  t.modulus = std::abs(v);
  t.phase = v / t.modulus;
  return t;
}

int calibrate_fried_exponent() {
  const ToralAutomorphism cat(Mat2i{2, 1, 1, 1});
  const SuspensionModel model(cat, TrigPolynomial(1.0));
  const Character chi = Character::make(cat, cplx{-1.0, 0.0});
  const double z = std::abs(zeta_at_zero(model, chi).value);
  const double tau = mapping_torus_torsion(cat, chi).modulus;
  return std::abs(z * tau - 1.0) <= std::abs(tau / z - 1.0) ? 1 : -1;
}

FriedReport fried_check(const SuspensionModel& model, const Character& chi, const CycleExpansionOptions& opt) {
  FriedReport rep;
  const ZetaAtZero z = zeta_at_zero(model, chi, opt);
  rep.zeta0 = z.value;
  rep.continuation_unreliable = z.continuation_unreliable;
  rep.torsion = mapping_torus_torsion(model.automorphism(), chi, TorsionConvention::turaev);
  rep.exponent = kFriedExponent;
  rep.deviation = std::abs(std::pow(std::abs(z.value), rep.exponent) * rep.torsion.modulus - 1.0);
  return rep;
}

}  // namespace fried

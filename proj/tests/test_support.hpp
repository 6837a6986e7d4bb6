#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "fried/integer_matrix.hpp"
#include "fried/torsion.hpp"

namespace testing {

inline double rel_err(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b)));
}

// Random hyperbolic matrix of GL(2, Z) as a product of elementary shears.
inline fried::Mat2i random_hyperbolic(std::mt19937_64& rng, double max_lambda = 4.0, bool allow_negative_det = true) {
  std::uniform_int_distribution<int> pick(0, 3);
  for (;;) {
    fried::Mat2i m = fried::Mat2i::identity();
    const int len = 2 + static_cast<int>(rng() % 4);
    for (int i = 0; i < len; ++i) {
      fried::Mat2i e;
      switch (pick(rng)) {
        case 0: e = {1, 1, 0, 1}; break;
        case 1: e = {1, 0, 1, 1}; break;
        case 2: e = {1, -1, 0, 1}; break;
        default: e = {1, 0, -1, 1}; break;
      }
      m = m * e;
    }
    if (allow_negative_det && (rng() & 1)) m = m * fried::Mat2i{0, 1, 1, 0};
    if (rng() & 1) m = m * fried::Mat2i{-1, 0, 0, -1};
    const double t = static_cast<double>(m.trace());
    const double d = static_cast<double>(m.det());
    const double disc = t * t - 4 * d;
    if (disc <= 0) continue;
    const double lu = std::max(std::abs(0.5 * (t + std::sqrt(disc))), std::abs(0.5 * (t - std::sqrt(disc))));
    if (lu > 1.0 + 1e-9 && lu <= max_lambda && std::abs(std::abs(d) - 1.0) < 0.5) {
      // exclude eigenvalues on the unit circle
      if (std::abs(lu - 1.0) > 1e-6) return m;
    }
  }
}

inline Eigen::MatrixXcd random_complex(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = {n(rng), n(rng)};
  }
  return m;
}

inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_complex(rng, n, n));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

// Random acyclic complex built from invertible blocks: C_k = B_k + B'_k with
// d_k mapping B'_k isomorphically onto B_{k-1}, then conjugated by random
// changes of basis.
inline fried::BasedChainComplex random_acyclic(std::mt19937_64& rng, int top_degree, int max_block = 3) {
  std::uniform_int_distribution<int> sz(1, max_block);
  // r[k] = rank of d_k for k = 1..top; r[0] = r[top+1] = 0.
  std::vector<int> r(static_cast<std::size_t>(top_degree) + 2, 0);
  for (int k = 1; k <= top_degree; ++k) r[static_cast<std::size_t>(k)] = sz(rng);
  std::vector<int> dims(static_cast<std::size_t>(top_degree) + 1);
  for (int k = 0; k <= top_degree; ++k) dims[static_cast<std::size_t>(k)] = r[static_cast<std::size_t>(k)] + r[static_cast<std::size_t>(k) + 1];
  std::vector<Eigen::MatrixXcd> g;
  for (int k = 0; k <= top_degree; ++k) {
    const int n = dims[static_cast<std::size_t>(k)];
    Eigen::MatrixXcd m = random_complex(rng, n, n);
    m += 2.0 * Eigen::MatrixXcd::Identity(n, n);
    g.push_back(m);
  }
  std::vector<Eigen::MatrixXcd> d;
  for (int k = 1; k <= top_degree; ++k) {
    const int rk = r[static_cast<std::size_t>(k)];
    const int lo = dims[static_cast<std::size_t>(k) - 1];
    const int hi = dims[static_cast<std::size_t>(k)];
    // C_k = (part mapped, size r_k) + (kernel part, size r_{k+1}); C_{k-1}
    // = (its own mapped part, size r_{k-1}) + (image part, size r_k).
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(lo, hi);
    Eigen::MatrixXcd inv = random_complex(rng, rk, rk) + 2.0 * Eigen::MatrixXcd::Identity(rk, rk);
    block.block(lo - rk, 0, rk, rk) = inv;
    d.push_back(g[static_cast<std::size_t>(k) - 1] * block * g[static_cast<std::size_t>(k)].inverse());
  }
  return fried::BasedChainComplex(dims, d);
}

}  // namespace testing

#include "fried/linalg.hpp"

#include "fried/errors.hpp"

namespace fried::linalg {

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

namespace {

double minor_det(const Eigen::MatrixXd& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXd sub(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
  return sub.determinant();
}

// Derivative of det(B + t dB) at t = 0 by row-wise replacement.
double minor_det_derivative(const Eigen::MatrixXd& m, const Eigen::MatrixXd& dm,
                            const std::vector<int>& rows, const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  if (k == 0) return 0.0;
  Eigen::MatrixXd sub(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
  double total = 0.0;
  for (int r = 0; r < k; ++r) {
    Eigen::MatrixXd rep = sub;
    for (int j = 0; j < k; ++j) rep(r, j) = dm(rows[r], cols[j]);
    total += rep.determinant();
  }
  return total;
}

}  // namespace

Eigen::MatrixXd wedge_power(const Eigen::MatrixXd& m, int k) {
  if (m.rows() != m.cols()) throw ValidationError("wedge_power needs a square matrix");
  const auto subsets = k_subsets(static_cast<int>(m.rows()), k);
  const auto n = static_cast<Eigen::Index>(subsets.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = minor_det(m, subsets[i], subsets[j]);
  return out;
}

Eigen::MatrixXd wedge_power_derivative(const Eigen::MatrixXd& m, const Eigen::MatrixXd& dm, int k) {
  if (m.rows() != m.cols() || dm.rows() != m.rows() || dm.cols() != m.cols())
    throw ValidationError("wedge_power_derivative: shape mismatch");
  const auto subsets = k_subsets(static_cast<int>(m.rows()), k);
  const auto n = static_cast<Eigen::Index>(subsets.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = minor_det_derivative(m, dm, subsets[i], subsets[j]);
  return out;
}

double wedge_trace(const Eigen::MatrixXd& m, int k) {
  if (m.rows() != m.cols()) throw ValidationError("wedge_trace needs a square matrix");
  double total = 0.0;
  for (const auto& s : k_subsets(static_cast<int>(m.rows()), k)) total += minor_det(m, s, s);
  return total;
}

cplx elementary_symmetric(std::span<const cplx> values, int k) {
  if (k < 0 || k > static_cast<int>(values.size())) return 0.0;
  // Coefficients of prod (1 + x_i t).
  std::vector<cplx> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (const auto& x : values)
    for (int j = k; j >= 1; --j) e[j] += x * e[j - 1];
  return e[k];
}

cplx complete_homogeneous(std::span<const cplx> values, int r) {
  if (r < 0) return 0.0;
  // Coefficients of prod 1 / (1 - x_i t).
  std::vector<cplx> h(static_cast<std::size_t>(r) + 1, 0.0);
  h[0] = 1.0;
  for (const auto& x : values)
    for (int j = 1; j <= r; ++j) h[j] += x * h[j - 1];
  return h[r];
}

}  // namespace fried::linalg

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "fried/numeric.hpp"

namespace fried::linalg {

/// k-subsets of {0..n-1} in lexicographic order; indexes the basis of the
/// k-th exterior power.
std::vector<std::vector<int>> k_subsets(int n, int k);

/// Matrix of the k-th exterior power (k-th compound matrix) of m.
Eigen::MatrixXd wedge_power(const Eigen::MatrixXd& m, int k);

/// d/dt of wedge_power(m + t * dm, k) at t = 0.
Eigen::MatrixXd wedge_power_derivative(const Eigen::MatrixXd& m, const Eigen::MatrixXd& dm, int k);

/// Tr of the k-th exterior power: the sum of principal k x k minors.
double wedge_trace(const Eigen::MatrixXd& m, int k);

/// Elementary symmetric polynomial e_k of the given values.
cplx elementary_symmetric(std::span<const cplx> values, int k);

/// Complete homogeneous symmetric polynomial h_r of the given values
/// (h_r = 0 for r < 0).
cplx complete_homogeneous(std::span<const cplx> values, int r);

}  // namespace fried::linalg

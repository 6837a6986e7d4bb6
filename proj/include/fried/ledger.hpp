#pragma once

#include <array>
#include <vector>

namespace fried {

/// Index triple (l, q, p) of a Selberg factor in the graded factorization.
struct ConditionCase {
  int l = 0;
  int q = 0;
  int p = 0;
  friend bool operator==(const ConditionCase&, const ConditionCase&) = default;
  friend auto operator<=>(const ConditionCase&, const ConditionCase&) = default;
};

/// All (l, q, p) with 0 <= l <= k, l <= n0, k - l <= n0, q, p >= 0 and
/// 2(q - l) + p + k <= 0, sorted by (l, q, p).
std::vector<ConditionCase> condition_enumerate(int k, int n0 = 2);

/// Multiplicities m_0 .. m_4 of 0 as a resonance on k-forms for a compact
/// hyperbolic 3-manifold, from the twisted cohomology dimensions.
std::array<int, 5> resonance_multiplicity_ledger(int h0, int h1);

/// Order contributed at lambda = 0 by one case of condition_enumerate(k, 2),
/// for k <= 2, following the case-by-case analysis of the Selberg factors.
int case_order(int k, const ConditionCase& c, int h0, int h1);

/// m_k assembled from case_order over condition_enumerate(k, 2); k > 2 by
/// the symmetry m_{4-k} = m_k.
std::array<int, 5> ledger_from_cases(int h0, int h1);

/// Order of the zero of the Selberg zeta function on trace-free symmetric
/// m-tensors at s0, given the kernel dimension d: d, or 2d when s0 = n/2.
/// Requires even n.
int selberg_order_ledger(int n, int m, double s0, int kernel_dim);

}  // namespace fried

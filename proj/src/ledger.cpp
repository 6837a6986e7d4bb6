#include "fried/ledger.hpp"

#include <cmath>
#include <string>

#include "fried/errors.hpp"

namespace fried {

std::vector<ConditionCase> condition_enumerate(int k, int n0) {
  if (k < 0 || k > 2 * n0) throw ValidationError("grading k must lie in 0..2 n0");
  if (n0 < 1) throw ValidationError("n0 must be positive");
  std::vector<ConditionCase> out;
  for (int l = 0; l <= k; ++l) {
    if (l > n0 || k - l > n0) continue;
    for (int q = 0; 2 * (q - l) + k <= 0; ++q) {
      for (int p = 0; 2 * (q - l) + p + k <= 0; ++p) out.push_back({l, q, p});
    }
  }
  return out;
}

std::array<int, 5> resonance_multiplicity_ledger(int h0, int h1) {
  if (h0 < 0 || h1 < 0) throw ValidationError("cohomology dimensions must be nonnegative");
  const int m0 = h0;
  const int m1 = 2 * h1;
  const int m2 = 2 * (h1 + h0);
  return {m0, m1, m2, m1, m0};
}

int case_order(int k, const ConditionCase& c, int h0, int h1) {
  // Orders of the Selberg factors at lambda = 0: sigma_0 and nu_0 ~ nu_2
  // give h0; each half of nu_1 ~ sigma_1 gives h1 - h0; sigma_2 gives none.
  const int nu1 = 2 * h1 - 2 * h0;
  if (k == 0 && c == ConditionCase{0, 0, 0}) return h0;
  if (k == 1) {
    if (c == ConditionCase{1, 0, 0}) return nu1;
    if (c == ConditionCase{1, 0, 1}) return 2 * h0;  // nu1 x sigma1 = sigma0 + nu2 + sigma2
  }
  if (k == 2) {
    if (c == ConditionCase{2, 0, 0}) return h0;
    if (c == ConditionCase{2, 1, 0}) return h0;
    if (c == ConditionCase{2, 0, 1}) return nu1;
    if (c == ConditionCase{2, 0, 2}) return 0;
    if (c == ConditionCase{1, 0, 0}) return 2 * h0;
  }
  throw ValidationError("no order recorded for case (l,q,p) = (" + std::to_string(c.l) + "," + std::to_string(c.q) +
                        "," + std::to_string(c.p) + ") at k = " + std::to_string(k));
}

std::array<int, 5> ledger_from_cases(int h0, int h1) {
  if (h0 < 0 || h1 < 0) throw ValidationError("cohomology dimensions must be nonnegative");
  std::array<int, 5> m{};
  for (int k = 0; k <= 2; ++k) {
    for (const auto& c : condition_enumerate(k, 2)) m[static_cast<std::size_t>(k)] += case_order(k, c, h0, h1);
  }
  m[3] = m[1];
  m[4] = m[0];
  return m;
}

int selberg_order_ledger(int n, int m, double s0, int kernel_dim) {
  if (n <= 0 || n % 2 != 0) throw ValidationError("the Selberg order formula needs even n > 0");
  if (m < 0 || kernel_dim < 0) throw ValidationError("tensor order and kernel dimension must be nonnegative");
  return std::abs(s0 - 0.5 * n) < 1e-12 ? 2 * kernel_dim : kernel_dim;
}

}  // namespace fried

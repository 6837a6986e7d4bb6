#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fried/cycle_expansion.hpp"
#include "fried/numeric.hpp"
#include "fried/orbit_models.hpp"

namespace fried {

/// Finite complex C_N -> ... -> C_0 over C with a distinguished ordered basis
/// in each degree. boundary(k) is the dims[k-1] x dims[k] matrix of d_k.
class BasedChainComplex {
 public:
  BasedChainComplex() = default;
  /// boundaries[k-1] is d_k for k = 1 .. dims.size()-1. Throws
  /// ValidationError on shape mismatch or if d_{k-1} d_k != 0 to 1e-12.
  BasedChainComplex(std::vector<int> dims, std::vector<Eigen::MatrixXcd> boundaries);

  int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
  int dim(int k) const { return (k < 0 || k > top_degree()) ? 0 : dims_[static_cast<std::size_t>(k)]; }
  const std::vector<int>& dims() const { return dims_; }
  /// d_k; an empty matrix of the right shape outside 1..top_degree.
  Eigen::MatrixXcd boundary(int k) const;
  const std::vector<Eigen::MatrixXcd>& boundaries() const { return d_; }

 private:
  std::vector<int> dims_;
  std::vector<Eigen::MatrixXcd> d_;
};

/// Rank by Gaussian elimination with maximal-modulus pivots; entries below
/// rel_tol times the largest entry count as zero.
int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol = 1e-10);

struct AcyclicityReport {
  bool acyclic = false;
  std::vector<int> homology_ranks;  ///< per degree
};

AcyclicityReport is_acyclic(const BasedChainComplex& c);

/// turaev: prod_k det(d_k[R_k, S_k])^{(-1)^{k+1}}; milnor is its inverse.
enum class TorsionConvention { turaev, milnor };
std::string convention_name(TorsionConvention c);

struct TorsionValue {
  double modulus = 0.0;
  cplx phase{1.0, 0.0};
  TorsionConvention convention = TorsionConvention::turaev;
  cplx value() const { return modulus * phase; }
};

/// Torsion of an acyclic based complex. The top-degree subset is the whole
/// basis; rows of d_k restricted to S_k are picked by greedy
/// maximal-modulus pivoting, and S_{k-1} is the complement of those rows.
TorsionValue chain_torsion(const BasedChainComplex& c, TorsionConvention conv = TorsionConvention::turaev);

/// Twisted cellular complex of the mapping torus of A on T^2 (cells 1, 2, 1)
/// for a fiber-trivial character: the algebraic mapping cone of 1 - u A_*,
/// with dimensions 1, 3, 3, 1.
BasedChainComplex mapping_cone_complex(const ToralAutomorphism& a, const Character& chi);

/// prod_k det(I - u H^k(A))^{(-1)^{k+sigma}}, H^0 = 1, H^1 = A^T, H^2 = det A,
/// sigma = 0 for turaev and 1 for milnor. Throws ValidationError for a
/// non-acyclic or fiber-nontrivial character.
TorsionValue mapping_torus_torsion(const ToralAutomorphism& a, const Character& chi,
                                   TorsionConvention conv = TorsionConvention::turaev);

/// Exponent e in |zeta(0)|^e * tau = 1, fixed on the cat map with u = -1 and
/// constant roof (turaev convention).
inline constexpr int kFriedExponent = 1;
/// Recomputes e from the reference case by comparing both candidates.
int calibrate_fried_exponent();

struct FriedReport {
  cplx zeta0;
  TorsionValue torsion;
  int exponent = kFriedExponent;
  double deviation = 0.0;  ///< ||zeta(0)|^e tau - 1|
  bool continuation_unreliable = false;
};

FriedReport fried_check(const SuspensionModel& model, const Character& chi, const CycleExpansionOptions& opt = {});

}  // namespace fried

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fried/numeric.hpp"

namespace fried {

using Mat2c = Eigen::Matrix2cd;

/// Element of SL(2, C) acting by Mobius transformations.
class MobiusGenerator {
 public:
  /// Throws ValidationError unless |det - 1| < 1e-12.
  explicit MobiusGenerator(const Mat2c& m);
  const Mat2c& matrix() const { return m_; }
  cplx trace() const { return m_.trace(); }
  bool loxodromic() const;

 private:
  Mat2c m_;
};

/// Loxodromic element with complex length ell + i theta, attracting fixed
/// point p and repelling fixed point q on the Riemann sphere.
MobiusGenerator loxodromic_generator(double ell, double theta, cplx attracting, cplx repelling);

/// Reduced cyclic word. Letter 2i is generator i, letter 2i+1 its inverse.
struct CyclicWord {
  std::vector<int> letters;
  bool primitive = true;
  std::size_t length() const { return letters.size(); }
  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
};

inline int inverse_letter(int c) { return c ^ 1; }

/// True if no adjacent pair cancels, the last and first letters included.
bool cyclically_reduced(const std::vector<int>& letters);
/// Lexicographically minimal rotation.
std::vector<int> canonical_rotation(const std::vector<int>& letters);
/// Smallest period p dividing the length such that the word is p-periodic.
std::size_t minimal_period(const std::vector<int>& letters);

/// Names like "a", "A" (inverse), "b", "B", ...
std::string word_label(const std::vector<int>& letters);
std::vector<int> parse_word(const std::string& label);

/// One canonical representative per rotation class of cyclically reduced
/// words of length 1..l_max over num_generators letters and their inverses,
/// sorted by (length, letters). A word and its inverse are distinct.
std::vector<CyclicWord> enumerate_conjugacy_classes(int num_generators, int l_max, unsigned workers = 0);
std::vector<CyclicWord> enumerate_conjugacy_classes(const std::vector<MobiusGenerator>& generators, int l_max,
                                                    unsigned workers = 0);

Mat2c word_matrix(const std::vector<MobiusGenerator>& generators, const std::vector<int>& letters);

struct ComplexLength {
  double ell = 0.0;
  double theta = 0.0;  ///< in (-pi, pi]
};

/// Reduces an angle to (-pi, pi].
double reduce_angle(double theta);

/// ell = 2 ln|lambda| for the larger-modulus eigenvalue lambda, theta =
/// 2 arg(lambda). Throws ValidationError for elliptic or parabolic input.
ComplexLength complex_length(const Mat2c& m);

/// Linearized return map along a closed geodesic of a hyperbolic 3-manifold:
/// P = diag(e^{-ell} R_theta, e^{ell} R_theta) acting on E_s + E_u.
struct PoincareData {
  double det_one_minus_p = 0.0;         ///< det(1 - P^j), positive
  double det_one_minus_p_stable = 0.0;  ///< det(1 - P_s^j)
  double wedge_trace = 0.0;             ///< Tr of the k-th exterior power of P^j
};

PoincareData poincare_data(double ell, double theta, int j, int k);
/// The 4x4 matrix P^j in the basis (E_s, E_u).
Eigen::Matrix4d poincare_matrix(double ell, double theta, int j);

struct ComplexLengthRecord {
  std::string label;
  double ell = 0.0;
  double theta = 0.0;
  bool primitive = true;
  int multiplicity = 1;
};

/// Primitive classes of length <= l_max with their complex lengths, sorted by
/// (ell, label).
std::vector<ComplexLengthRecord> schottky_spectrum(const std::vector<MobiusGenerator>& generators, int l_max,
                                                   unsigned workers = 0);

/// Isometric circles of all generators and inverses pairwise disjoint. A
/// sufficient picture for a Schottky group in typical examples; not a proof
/// of discreteness.
bool disc_separation_heuristic(const std::vector<MobiusGenerator>& generators);

/// Two loxodromic generators with fixed points at +-1 and +-i.
std::vector<MobiusGenerator> default_schottky_pair(double ell = 3.0, double theta_a = 0.4, double theta_b = -0.9);

/// Pseudo-random primitive spectrum whose counting function follows
/// e^{h ell} / ell: the i-th length solves G(ell) = G(ell_0) + i - 1 + u_i with
/// u_i uniform in [0, 1) and ell_0 = max(1, 1/h). Angles are uniform on (-pi, pi].
std::vector<ComplexLengthRecord> synthetic_spectrum(double h, std::size_t n, std::uint64_t seed);

/// Ratio range of #{ell_i <= ell} to e^{h ell}/ell over the upper half of the
/// spectrum (median to max).
struct CountingCheck {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  bool within_factor_two() const { return min_ratio >= 0.5 && max_ratio <= 2.0; }
};
CountingCheck counting_check(const std::vector<ComplexLengthRecord>& spectrum, double h);

}  // namespace fried

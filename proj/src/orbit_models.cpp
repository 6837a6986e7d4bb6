#include "fried/orbit_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fried/errors.hpp"

namespace fried {

AnosovDiagnostics validate_anosov(const Mat2i& a) {
  AnosovDiagnostics d;
  d.det = a.det();
  d.trace = a.trace();
  if (d.det != 1 && d.det != -1) {
    throw ValidationError("matrix " + a.str() + " is not unimodular (det = " + std::to_string(d.det) + ")");
  }
  const bool on_circle = d.det == 1 ? std::llabs(d.trace) <= 2 : d.trace == 0;
  if (on_circle) throw ValidationError("not Anosov: " + a.str() + " has an eigenvalue on the unit circle");
  const double tr = static_cast<double>(d.trace);
  const double disc = tr * tr - 4.0 * static_cast<double>(d.det);
  d.lambda_u = 0.5 * (tr + std::copysign(std::sqrt(disc), tr));
  d.lambda_s = static_cast<double>(d.det) / d.lambda_u;
  d.hyperbolic = true;
  return d;
}

ToralAutomorphism::ToralAutomorphism(const Mat2i& a) : a_(a), diag_(validate_anosov(a)) {
  coker_snf_ = smith_normal_form(a_ - Mat2i::identity());
  const std::int64_t ds[2] = {coker_snf_.d1, coker_snf_.d2};
  for (int i = 0; i < 2; ++i) {
    if (ds[i] > 1) {
      coker_rows_.push_back(i);
      coker_orders_.push_back(ds[i]);
    }
  }
}

std::int64_t ToralAutomorphism::coker_size() const { return checked_mul(coker_snf_.d1, coker_snf_.d2); }

std::vector<std::int64_t> ToralAutomorphism::coker_coordinates(std::int64_t v1, std::int64_t v2) const {
  std::vector<std::int64_t> out;
  out.reserve(coker_rows_.size());
  for (std::size_t f = 0; f < coker_rows_.size(); ++f) {
    const int i = coker_rows_[f];
    out.push_back(mul_add_mod(coker_snf_.u(i, 0), v1, coker_snf_.u(i, 1), v2, coker_orders_[f]));
  }
  return out;
}

TrigPolynomial::TrigPolynomial(double constant, std::vector<TrigTerm> terms)
    : constant_(constant), terms_(std::move(terms)) {}

double TrigPolynomial::operator()(double x1, double x2) const {
  double v = constant_;
  for (const auto& t : terms_) {
    const double ph = 2.0 * std::numbers::pi * (t.k1 * x1 + t.k2 * x2);
    v += t.cos_coef * std::cos(ph) + t.sin_coef * std::sin(ph);
  }
  return v;
}

double TrigPolynomial::at_rational(std::int64_t n1, std::int64_t n2, std::int64_t den) const {
  double v = constant_;
  for (const auto& t : terms_) {
    const std::int64_t r = mul_add_mod(t.k1, n1, t.k2, n2, den);
    const double ph = 2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(den));
    v += t.cos_coef * std::cos(ph) + t.sin_coef * std::sin(ph);
  }
  return v;
}

double TrigPolynomial::oscillation_bound() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.cos_coef) + std::abs(t.sin_coef);
  return s;
}

SuspensionModel::SuspensionModel(ToralAutomorphism automorphism, TrigPolynomial roof, TrigPolynomial time_change)
    : automorphism_(std::move(automorphism)), roof_(std::move(roof)), time_change_(std::move(time_change)) {
  if (!(roof_.lower_bound() > 0.0)) {
    throw ValidationError("roof positivity is not certified: constant minus coefficient sum is " +
                          std::to_string(roof_.lower_bound()));
  }
  const double g0 = time_change_.constant();
  const double s = time_change_.oscillation_bound();
  constexpr double inf = std::numeric_limits<double>::infinity();
  tau_max_ = (g0 - s >= 0.0) ? inf : 1.0 / (s - g0);
  tau_min_ = (g0 + s <= 0.0) ? -inf : -1.0 / (g0 + s);
}

void SuspensionModel::require_admitted(double tau) const {
  if (!admits(tau)) {
    std::ostringstream os;
    os << "tau = " << tau << " outside the certified positivity range (" << tau_min_ << ", " << tau_max_ << ")";
    throw ValidationError(os.str());
  }
}

double SuspensionModel::min_effective_roof(double tau) const {
  require_admitted(tau);
  const double speed = 1.0 + tau * time_change_.constant() - std::abs(tau) * time_change_.oscillation_bound();
  return roof_.lower_bound() * speed;
}

double SuspensionModel::entropy_bound(double tau) const {
  return std::log(std::abs(automorphism_.lambda_u())) / min_effective_roof(tau);
}

FixedPointSet fixed_points(const ToralAutomorphism& a, int n) {
  if (n < 1) throw ValidationError("fixed_points: period must be >= 1");
  const Mat2i m = power(a.matrix(), n) - Mat2i::identity();
  const std::int64_t count = std::llabs(m.det());
  if (count > kMaxFixedPoints) {
    throw CapacityError("|det(A^" + std::to_string(n) + " - I)| = " + std::to_string(count) +
                        " exceeds the enumeration limit " + std::to_string(kMaxFixedPoints));
  }
  const SmithForm snf = smith_normal_form(m);
  if (checked_mul(snf.d1, snf.d2) != count) throw ConventionViolation("Smith form disagrees with determinant");
  FixedPointSet out;
  out.period = n;
  out.den = snf.d2;
  out.numerators.reserve(static_cast<std::size_t>(count));
  const std::int64_t step = snf.d2 / snf.d1;
  // x = V y with y in (Z/d1 x Z/d2) / (d1, d2): every solution of (A^n - I) x in Z^2.
  for (std::int64_t s = 0; s < snf.d1; ++s) {
    const std::int64_t y1 = s * step;
    for (std::int64_t b = 0; b < snf.d2; ++b) {
      out.numerators.emplace_back(mul_add_mod(snf.v(0, 0), y1, snf.v(0, 1), b, out.den),
                                  mul_add_mod(snf.v(1, 0), y1, snf.v(1, 1), b, out.den));
    }
  }
  std::sort(out.numerators.begin(), out.numerators.end());
  return out;
}

HomologyClass combine(const ToralAutomorphism& a, const HomologyClass& x, const HomologyClass& y) {
  if (x.coker.size() != a.coker_orders().size() || y.coker.size() != a.coker_orders().size())
    throw ValidationError("homology class does not match the automorphism");
  HomologyClass r;
  r.winding = checked_add(x.winding, y.winding);
  for (std::size_t f = 0; f < x.coker.size(); ++f)
    r.coker.push_back(mod_floor(x.coker[f] + y.coker[f], a.coker_orders()[f]));
  return r;
}

HomologyClass homology_class(const ToralAutomorphism& a, std::int64_t num1, std::int64_t num2, std::int64_t den,
                             int period) {
  const Mat2i an = power(a.matrix(), period);
  const __int128 w1 = static_cast<__int128>(an(0, 0)) * num1 + static_cast<__int128>(an(0, 1)) * num2 - num1;
  const __int128 w2 = static_cast<__int128>(an(1, 0)) * num1 + static_cast<__int128>(an(1, 1)) * num2 - num2;
  if (w1 % den != 0 || w2 % den != 0) {
    throw ValidationError("inconsistent orbit data: point is not fixed by A^" + std::to_string(period));
  }
  const __int128 v1 = w1 / den;
  const __int128 v2 = w2 / den;
  constexpr __int128 lim = std::numeric_limits<std::int64_t>::max();
  if (v1 > lim || v1 < -lim || v2 > lim || v2 < -lim) throw CapacityError("translation vector exceeds int64");
  HomologyClass c;
  c.coker = a.coker_coordinates(static_cast<std::int64_t>(v1), static_cast<std::int64_t>(v2));
  c.winding = period;
  return c;
}

HomologyClass homology_class(const ToralAutomorphism& a, const OrbitRecord& orbit) {
  return homology_class(a, orbit.base.num1, orbit.base.num2, orbit.base.den, orbit.period);
}

int orientation_index(const ToralAutomorphism& a, int period) {
  return (a.lambda_u() < 0.0 && (period % 2 != 0)) ? -1 : 1;
}

namespace {

std::vector<int> prime_factors(int n) {
  std::vector<int> ps;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline std::pair<std::int64_t, std::int64_t> apply_mod(const Mat2i& m, const std::pair<std::int64_t, std::int64_t>& p,
                                                      std::int64_t den) {
  return {mul_add_mod(m(0, 0), p.first, m(0, 1), p.second, den),
          mul_add_mod(m(1, 0), p.first, m(1, 1), p.second, den)};
}

}  // namespace

std::vector<OrbitRecord> primitive_orbits(const ToralAutomorphism& a, int n_max, unsigned workers) {
  if (n_max < 1) throw ValidationError("primitive_orbits: n_max must be >= 1");
  std::vector<OrbitRecord> out;
  for (int n = 1; n <= n_max; ++n) {
    const FixedPointSet fps = fixed_points(a, n);
    const std::int64_t den = fps.den;
    const Mat2i step = power_mod(a.matrix(), 1, den);
    std::vector<Mat2i> sub_powers;
    for (int p : prime_factors(n)) sub_powers.push_back(power_mod(a.matrix(), n / p, den));

    constexpr std::size_t kChunk = 8192;
    const std::size_t nchunks = (fps.size() + kChunk - 1) / kChunk;
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> bases(nchunks);
    parallel_for(
        nchunks,
        [&](std::size_t c) {
          const std::size_t lo = c * kChunk;
          const std::size_t hi = std::min(fps.size(), lo + kChunk);
          for (std::size_t i = lo; i < hi; ++i) {
            const auto& p = fps.numerators[i];
            bool exact = true;
            for (const auto& b : sub_powers) {
              if (apply_mod(b, p, den) == p) {
                exact = false;
                break;
              }
            }
            if (!exact) continue;
            bool is_min = true;
            auto q = p;
            for (int s = 1; s < n; ++s) {
              q = apply_mod(step, q, den);
              if (q < p) {
                is_min = false;
                break;
              }
            }
            if (is_min) bases[c].push_back(p);
          }
        },
        workers);

    const int eps = orientation_index(a, n);
    const double lu = std::pow(a.lambda_u(), n);
    const double ls = std::pow(a.lambda_s(), n);
    for (const auto& chunk : bases) {
      for (const auto& p : chunk) {
        OrbitRecord r;
        r.period = n;
        r.base = RationalPoint{p.first, p.second, den};
        r.length = static_cast<double>(n);
        r.primitive = true;
        r.homology = homology_class(a, p.first, p.second, den, n);
        r.epsilon = eps;
        r.lambda_u_n = lu;
        r.lambda_s_n = ls;
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> orbit_points(const ToralAutomorphism& a, const OrbitRecord& orbit) {
  const std::int64_t den = orbit.base.den;
  const Mat2i step = power_mod(a.matrix(), 1, den);
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  pts.reserve(static_cast<std::size_t>(orbit.period));
  std::pair<std::int64_t, std::int64_t> p{orbit.base.num1, orbit.base.num2};
  for (int i = 0; i < orbit.period; ++i) {
    pts.push_back(p);
    p = apply_mod(step, p, den);
  }
  if (p != pts.front()) throw ValidationError("inconsistent orbit data: base point does not close up");
  return pts;
}

double orbit_length(const SuspensionModel& model, const OrbitRecord& orbit, double tau) {
  model.require_admitted(tau);
  CompensatedSum<double> acc;
  for (const auto& p : orbit_points(model.automorphism(), orbit)) {
    const double r = model.roof().at_rational(p.first, p.second, orbit.base.den);
    const double g = model.time_change().at_rational(p.first, p.second, orbit.base.den);
    acc.add(r * (1.0 + tau * g));
  }
  return acc.value();
}

double variation_coefficient(const SuspensionModel& model, const OrbitRecord& orbit, double tau) {
  model.require_admitted(tau);
  // Along each fibre q_tau = -g / (1 + tau g) is integrated over X_tau-time
  // r (1 + tau g), so the fibre contributes -r g.
  CompensatedSum<double> acc;
  for (const auto& p : orbit_points(model.automorphism(), orbit)) {
    const double r = model.roof().at_rational(p.first, p.second, orbit.base.den);
    const double g = model.time_change().at_rational(p.first, p.second, orbit.base.den);
    acc.add(-r * g);
  }
  return acc.value();
}

Character Character::trivial(const ToralAutomorphism& a) { return make(a, cplx{1.0, 0.0}); }

Character Character::make(const ToralAutomorphism& a, double angle_fraction, std::vector<std::int64_t> fiber) {
  return make(a, std::polar(1.0, 2.0 * std::numbers::pi * angle_fraction), std::move(fiber));
}

Character Character::make(const ToralAutomorphism& a, cplx u, std::vector<std::int64_t> fiber) {
  if (std::abs(std::abs(u) - 1.0) > 1e-12) throw ValidationError("character value u must have modulus 1");
  Character c;
  c.u = u;
  c.orders = a.coker_orders();
  if (fiber.empty()) fiber.assign(c.orders.size(), 0);
  if (fiber.size() != c.orders.size()) {
    throw ValidationError("fiber character needs " + std::to_string(c.orders.size()) + " exponents, got " +
                          std::to_string(fiber.size()));
  }
  for (std::size_t f = 0; f < fiber.size(); ++f) fiber[f] = mod_floor(fiber[f], c.orders[f]);
  c.fiber_exponents = std::move(fiber);
  return c;
}

bool Character::fiber_trivial() const {
  return std::all_of(fiber_exponents.begin(), fiber_exponents.end(), [](std::int64_t e) { return e == 0; });
}

cplx holonomy(const Character& chi, const HomologyClass& cls) {
  if (cls.coker.size() != chi.fiber_exponents.size()) throw ValidationError("character and class mismatch");
  // Fiber phase as an exact fraction of a full turn before converting.
  double turns = 0.0;
  for (std::size_t f = 0; f < cls.coker.size(); ++f) {
    const std::int64_t r = mul_add_mod(chi.fiber_exponents[f], cls.coker[f], 0, 0, chi.orders[f]);
    turns += static_cast<double>(r) / static_cast<double>(chi.orders[f]);
  }
  const cplx fiber = std::polar(1.0, 2.0 * std::numbers::pi * turns);
  const cplx circle = std::polar(1.0, static_cast<double>(cls.winding) * std::arg(chi.u));
  return circle * fiber;
}

double transverse_wedge_traces(const OrbitRecord& orbit, int j, int k) {
  if (j < 1) throw ValidationError("iterate index must be >= 1");
  switch (k) {
    case 0:
      return 1.0;
    case 1:
      return std::pow(orbit.lambda_u_n, j) + std::pow(orbit.lambda_s_n, j);
    case 2: {
      // det P = (det A)^n is exactly +-1.
      const double det_n = orbit.lambda_u_n * orbit.lambda_s_n;
      return (det_n < 0.0 && (j % 2 != 0)) ? -1.0 : 1.0;
    }
    default:
      throw ValidationError("transverse wedge degree must be 0, 1 or 2");
  }
}

}  // namespace fried

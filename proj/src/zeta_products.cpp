#include "fried/zeta_products.hpp"

#include <algorithm>
#include <sstream>

#include "fried/errors.hpp"

namespace fried {

cplx OrbitTerm::trace_rho(int j) const {
  cplx s{0.0, 0.0};
  for (const auto& mu : rho) s += std::pow(mu, j);
  return s;
}

int OrbitTerm::transverse_dim() const { return std::holds_alternative<Hyperbolic2D>(transverse) ? 2 : 4; }

double OrbitTerm::det_one_minus_p(int j) const {
  if (const auto* h = std::get_if<Hyperbolic2D>(&transverse)) {
    return (1.0 - std::pow(h->lambda_u, j)) * (1.0 - std::pow(h->lambda_s, j));
  }
  return poincare_data(length, std::get<Loxodromic>(transverse).theta, j, 0).det_one_minus_p;
}

double OrbitTerm::det_one_minus_p_stable(int j) const {
  const auto* l = std::get_if<Loxodromic>(&transverse);
  if (l == nullptr) throw ValidationError("stable determinant needs loxodromic orbit data");
  return poincare_data(length, l->theta, j, 0).det_one_minus_p_stable;
}

double OrbitTerm::wedge_trace(int j, int k) const {
  if (const auto* h = std::get_if<Hyperbolic2D>(&transverse)) {
    switch (k) {
      case 0:
        return 1.0;
      case 1:
        return std::pow(h->lambda_u, j) + std::pow(h->lambda_s, j);
      case 2:
        // det P^j is exactly +-1 for a toral automorphism.
        return std::pow(h->lambda_u, j) * std::pow(h->lambda_s, j) < 0.0 ? -1.0 : 1.0;
      default:
        throw ValidationError("wedge degree must lie in 0..2 for suspension orbits");
    }
  }
  return poincare_data(length, std::get<Loxodromic>(transverse).theta, j, k).wedge_trace;
}

double OrbitTerm::theta() const {
  const auto* l = std::get_if<Loxodromic>(&transverse);
  return l == nullptr ? 0.0 : l->theta;
}

void OrbitSpectrum::sort() {
  std::stable_sort(terms.begin(), terms.end(), [](const OrbitTerm& a, const OrbitTerm& b) {
    return a.length != b.length ? a.length < b.length : a.label < b.label;
  });
}

double OrbitSpectrum::min_length() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : terms) m = std::min(m, t.length);
  return m;
}

std::vector<std::pair<std::size_t, int>> admitted_iterates(const OrbitSpectrum& spec, const TruncationPolicy& policy) {
  if (policy.j_max < 1) throw ValidationError("j_max must be >= 1");
  std::vector<std::pair<std::size_t, int>> out;
  for (std::size_t i = 0; i < spec.terms.size(); ++i) {
    const int period = spec.terms[i].period;
    for (int j = 1; j <= policy.j_max; ++j) {
      if (policy.n_max > 0 && period > 0 && static_cast<long>(j) * period > policy.n_max) break;
      out.emplace_back(i, j);
    }
  }
  return out;
}

double effective_entropy(const OrbitSpectrum& spec, const TruncationPolicy& policy) {
  if (!std::isnan(policy.h)) return policy.h;
  if (!std::isnan(spec.entropy)) return spec.entropy;
  if (spec.terms.empty()) return 0.0;
  throw ValidationError("no entropy estimate: set policy.h");
}

namespace {

void require_region(double re_lambda, double bound, bool allow, const std::string& what) {
  if (!(re_lambda > bound) && !allow) {
    std::ostringstream os;
    os << "outside convergence region: Re lambda = " << re_lambda << " <= " << bound << " for " << what;
    throw ConvergenceError(os.str());
  }
}

double max_rho_dim(const OrbitSpectrum& spec) {
  double d = 0.0;
  for (const auto& t : spec.terms) d = std::max(d, static_cast<double>(t.rho.size() * t.multiplicity));
  return d;
}

// Geometric tail model: orbits missing from the truncated sum are longer
// than L, and their number grows like e^{h ell}.
double tail_estimate(const OrbitSpectrum& spec, const TruncationPolicy& policy, double re_lambda, double h,
                     double weight_bound) {
  if (spec.terms.empty()) return 0.0;
  const double delta = re_lambda - h;
  if (!(delta > 0.0)) return std::numeric_limits<double>::infinity();
  const double ell_min = spec.min_length();
  const double L = std::min(spec.complete_length, (policy.j_max + 1) * ell_min);
  if (!std::isfinite(L)) return 0.0;
  return weight_bound * max_rho_dim(spec) * std::exp(h) * std::exp(-delta * L) / (1.0 - std::exp(-delta));
}

ZetaValue make_value(std::string kind, cplx lambda, const TruncationPolicy& policy, double h) {
  ZetaValue v;
  v.kind = std::move(kind);
  v.lambda = lambda;
  v.policy = policy;
  v.h = h;
  return v;
}

}  // namespace

ZetaValue ruelle_log_zeta(const OrbitSpectrum& spec, cplx lambda, const TruncationPolicy& policy) {
  const double h = effective_entropy(spec, policy);
  require_region(lambda.real(), h, policy.allow_outside, "the Ruelle zeta function");
  const auto its = admitted_iterates(spec, policy);
  ZetaValue v = make_value("ruelle", lambda, policy, h);
  v.log_value = deterministic_sum<cplx>(
      its.size(),
      [&](std::size_t i) {
        const auto& t = spec.terms[its[i].first];
        const int j = its[i].second;
        const double eps = (t.epsilon < 0 && (j % 2 != 0)) ? -1.0 : 1.0;
        return -(eps * t.multiplicity / j) * t.trace_rho(j) * std::exp(-lambda * (j * t.length));
      },
      policy.workers);
  v.terms = its.size();
  v.tail_bound = tail_estimate(spec, policy, lambda.real(), h, 1.0);
  return v;
}

ZetaValue graded_log_zeta(const OrbitSpectrum& spec, int k, cplx lambda, const TruncationPolicy& policy) {
  const double h = effective_entropy(spec, policy);
  require_region(lambda.real(), h, policy.allow_outside, "the graded zeta function");
  const auto its = admitted_iterates(spec, policy);
  ZetaValue v = make_value("graded" + std::to_string(k), lambda, policy, h);
  v.log_value = deterministic_sum<cplx>(
      its.size(),
      [&](std::size_t i) {
        const auto& t = spec.terms[its[i].first];
        const int j = its[i].second;
        const double w = t.wedge_trace(j, k) / std::abs(t.det_one_minus_p(j));
        return -(w * t.multiplicity / j) * t.trace_rho(j) * std::exp(-lambda * (j * t.length));
      },
      policy.workers);
  v.terms = its.size();
  double wmax = 0.0;
  for (const auto& t : spec.terms) wmax = std::max(wmax, std::abs(t.wedge_trace(1, k) / t.det_one_minus_p(1)));
  v.tail_bound = tail_estimate(spec, policy, lambda.real(), h, wmax);
  return v;
}

int assembly_sign(int transverse_dim) { return (transverse_dim / 2) % 2 == 0 ? 1 : -1; }

AssemblyResult assemble_ruelle_from_graded(const OrbitSpectrum& spec, cplx lambda, const TruncationPolicy& policy) {
  AssemblyResult r;
  if (spec.terms.empty()) {
    r.sign = 1;
    return r;
  }
  const int dim = spec.terms.front().transverse_dim();
  r.sign = assembly_sign(dim);
  for (const auto& [idx, j] : admitted_iterates(spec, policy)) {
    const auto& t = spec.terms[idx];
    if (t.transverse_dim() != dim) throw ValidationError("mixed transverse dimensions in one spectrum");
    const double d = t.det_one_minus_p(j);
    double alt = 0.0;
    for (int k = 0; k <= dim; ++k) alt += (k % 2 == 0 ? 1.0 : -1.0) * t.wedge_trace(j, k);
    const double eps = (t.epsilon < 0 && (j % 2 != 0)) ? -1.0 : 1.0;
    const double rhs = r.sign * alt / std::abs(d);
    r.max_residual = std::max(r.max_residual, std::abs(eps - rhs));
  }
  if (r.max_residual > 1e-12) {
    std::ostringstream os;
    os << "orientation sign convention violated: residual " << r.max_residual;
    throw ConventionViolation(os.str());
  }
  cplx acc{0.0, 0.0};
  for (int k = 0; k <= dim; ++k) {
    const ZetaValue zk = graded_log_zeta(spec, k, lambda, policy);
    r.log_graded.push_back(zk.log_value);
    acc += static_cast<double>(r.sign * (k % 2 == 0 ? 1 : -1)) * zk.log_value;
    r.tail_bound += zk.tail_bound;
  }
  r.log_zeta = acc;
  return r;
}

namespace {

const Loxodromic& require_loxodromic(const OrbitTerm& t) {
  const auto* l = std::get_if<Loxodromic>(&t.transverse);
  if (l == nullptr) throw ValidationError("Selberg zeta functions need loxodromic orbit data (n0 = 2)");
  return *l;
}

}  // namespace

ZetaValue selberg_log_zeta(const OrbitSpectrum& spec, const std::vector<IrrepLabel>& mu, cplx lambda,
                           const TruncationPolicy& policy) {
  constexpr int n0 = 2;
  for (const auto& m : mu) {
    if (m.n0 != n0) throw ValidationError("Selberg zeta functions are implemented for n0 = 2");
  }
  require_region(lambda.real(), n0, policy.allow_outside, "the Selberg zeta function");
  const auto its = admitted_iterates(spec, policy);
  ZetaValue v = make_value("selberg", lambda, policy, n0);
  v.log_value = deterministic_sum<cplx>(
      its.size(),
      [&](std::size_t i) {
        const auto& t = spec.terms[its[i].first];
        const int j = its[i].second;
        const double theta = require_loxodromic(t).theta;
        const double chi = character(mu, TorusElement::make(n0, {j * theta}));
        const double w = chi / t.det_one_minus_p_stable(j);
        return -(w * t.multiplicity / j) * t.trace_rho(j) * std::exp(-lambda * (j * t.length));
      },
      policy.workers);
  v.terms = its.size();
  double dim = 1.0;
  for (const auto& m : mu) dim *= std::abs(character(m, TorusElement::identity(n0)));
  v.tail_bound = tail_estimate(spec, policy, lambda.real(), effective_entropy(spec, policy), dim * 4.0);
  return v;
}

FactorizationReport factorization_check(const OrbitSpectrum& spec, int k, cplx lambda, const TruncationPolicy& policy,
                                        double tolerance) {
  constexpr int n0 = 2;
  if (k < 0 || k > 2 * n0) throw ValidationError("grading k must lie in 0..4");
  if (policy.p_max < 0) throw ValidationError("p_max must be >= 0");
  const double h = effective_entropy(spec, policy);
  require_region(lambda.real(), h, policy.allow_outside, "the graded zeta function");
  FactorizationReport rep;
  rep.k = k;
  rep.p_max = policy.p_max;
  const int pm = policy.p_max;
  const auto its = admitted_iterates(spec, policy);

  struct IterateResult {
    cplx lhs, rhs;
    double residual, bound;
  };
  std::vector<IterateResult> res(its.size());
  parallel_for(
      its.size(),
      [&](std::size_t i) {
        const auto& t = spec.terms[its[i].first];
        const int j = its[i].second;
        const double theta = require_loxodromic(t).theta;
        const double x = j * t.length;
        const TorusElement g = TorusElement::make(n0, {j * theta});
        std::vector<double> chis(static_cast<std::size_t>(pm) + 1);
        for (int p = 0; p <= pm; ++p) chis[static_cast<std::size_t>(p)] = char_sigma(n0, p, g);
        const double det_s = t.det_one_minus_p_stable(j);
        const double lhs_w = t.wedge_trace(j, k) / std::abs(t.det_one_minus_p(j));
        double rhs_w = 0.0;
        double norm = 0.0;
        for (int l = 0; l <= k; ++l) {
          if (l > n0 || k - l > n0) continue;
          const double cnu = char_nu(n0, l, g) * char_nu(n0, k - l, g);
          CompensatedSum<double> acc;
          for (int p = 0; p <= pm; ++p) {
            for (int q = 0; p + 2 * q <= pm; ++q) {
              acc.add(chis[static_cast<std::size_t>(p)] * std::exp(-(2.0 * (q - l) + p + n0 + k) * x));
            }
          }
          const double comp = cnu * acc.value() / det_s;
          rhs_w += comp;
          norm += std::abs(comp);
        }
        const double scale = norm > 0.0 ? norm : 1.0;
        const cplx common = (static_cast<double>(t.multiplicity) / j) * t.trace_rho(j) * std::exp(-lambda * x);
        const double ex = std::exp(-x);
        const double bound = 4.0 * (pm + 4) * std::pow(ex, pm + 1) / ((1.0 - ex) * (1.0 - ex));
        res[i] = {-common * lhs_w, -common * rhs_w, std::abs(lhs_w - rhs_w) / scale, bound};
      },
      policy.workers);

  CompensatedSum<cplx> lhs, rhs;
  for (const auto& r : res) {
    lhs.add(r.lhs);
    rhs.add(r.rhs);
    rep.max_residual = std::max(rep.max_residual, r.residual);
    rep.truncation_bound = std::max(rep.truncation_bound, r.bound);
  }
  rep.lhs_log = lhs.value();
  rep.rhs_log = rhs.value();

  TruncationPolicy formal = policy;
  formal.allow_outside = true;
  CompensatedSum<cplx> prod;
  for (int l = 0; l <= k; ++l) {
    if (l > n0 || k - l > n0) continue;
    for (int p = 0; p <= pm; ++p) {
      const std::vector<IrrepLabel> mu{IrrepLabel::nu(l, n0), IrrepLabel::nu(k - l, n0), IrrepLabel::sigma(p, n0)};
      for (int q = 0; p + 2 * q <= pm; ++q) {
        const cplx shifted = lambda + static_cast<double>(2 * (q - l) + p + n0 + k);
        prod.add(selberg_log_zeta(spec, mu, shifted, formal).log_value);
      }
    }
  }
  rep.rhs_log_product = prod.value();

  if (tolerance > 0.0 && rep.truncation_bound > tolerance) {
    std::ostringstream os;
    os << "p_max = " << pm << " is insufficient: truncation bound " << rep.truncation_bound << " > " << tolerance;
    throw ConvergenceError(os.str());
  }
  return rep;
}

OrbitSpectrum suspension_spectrum(const SuspensionModel& model, const Character& chi, int n_max, double tau,
                                  unsigned workers) {
  model.require_admitted(tau);
  const auto& a = model.automorphism();
  const auto orbits = primitive_orbits(a, n_max, workers);
  OrbitSpectrum spec;
  spec.terms.resize(orbits.size());
  parallel_for(
      orbits.size(),
      [&](std::size_t i) {
        const auto& o = orbits[i];
        OrbitTerm& t = spec.terms[i];
        std::ostringstream os;
        os << o.period << ':' << o.base.num1 << ',' << o.base.num2 << '/' << o.base.den;
        t.label = os.str();
        t.length = orbit_length(model, o, tau);
        t.period = o.period;
        t.epsilon = o.epsilon;
        t.rho = {holonomy(chi, o.homology)};
        t.transverse = Hyperbolic2D{o.lambda_u_n, o.lambda_s_n};
        t.q_integral = variation_coefficient(model, o, tau);
      },
      workers);
  spec.sort();
  spec.entropy = model.entropy_bound(tau);
  spec.complete_length = (n_max + 1) * model.min_effective_roof(tau);
  return spec;
}

OrbitSpectrum loxodromic_spectrum(const std::vector<ComplexLengthRecord>& records, double entropy,
                                  double complete_length) {
  OrbitSpectrum spec;
  double max_ell = 0.0;
  for (const auto& r : records) {
    if (!(r.ell > 0.0)) throw ValidationError("geodesic lengths must be positive");
    if (r.multiplicity < 1) throw ValidationError("multiplicity must be positive");
    if (!r.primitive) continue;
    OrbitTerm t;
    t.label = r.label;
    t.length = r.ell;
    t.multiplicity = r.multiplicity;
    t.transverse = Loxodromic{reduce_angle(r.theta)};
    spec.terms.push_back(std::move(t));
    max_ell = std::max(max_ell, r.ell);
  }
  spec.sort();
  spec.entropy = entropy;
  spec.complete_length = std::isnan(complete_length) ? max_ell : complete_length;
  return spec;
}

}  // namespace fried

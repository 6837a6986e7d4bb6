#include "fried/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "fried/cycle_expansion.hpp"
#include "fried/errors.hpp"
#include "fried/io.hpp"
#include "fried/kleinian_spectrum.hpp"
#include "fried/ledger.hpp"
#include "fried/orbit_models.hpp"
#include "fried/torsion.hpp"
#include "fried/variation.hpp"
#include "fried/zeta_products.hpp"

namespace fried::cli {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config key " + key + ": expected a number, got `" + v + "`");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config key " + key + ": expected an integer, got `" + v + "`");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ValidationError("config key " + key + ": expected true/false, got `" + v + "`");
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& p : split(v, ',')) {
    if (!p.empty()) out.push_back(to_double(key, p));
  }
  return out;
}

// "re" or "re:im".
cplx to_complex(const std::string& key, const std::string& v) {
  const auto parts = split(v, ':');
  if (parts.size() == 1) return {to_double(key, parts[0]), 0.0};
  if (parts.size() == 2) return {to_double(key, parts[0]), to_double(key, parts[1])};
  throw ValidationError("config key " + key + ": expected re or re:im, got `" + v + "`");
}

std::vector<cplx> to_complexes(const std::string& key, const std::string& v) {
  std::vector<cplx> out;
  for (const auto& p : split(v, ',')) {
    if (!p.empty()) out.push_back(to_complex(key, p));
  }
  return out;
}

// "c0" or "c0; k1,k2,cos,sin; ...".
TrigPolynomial to_trig(const std::string& key, const std::string& v) {
  const auto parts = split(v, ';');
  if (parts.empty() || parts[0].empty()) throw ValidationError("config key " + key + " is empty");
  const double c0 = to_double(key, parts[0]);
  std::vector<TrigTerm> terms;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].empty()) continue;
    const auto f = split(parts[i], ',');
    if (f.size() != 4) throw ValidationError("config key " + key + ": each term is k1,k2,cos,sin");
    terms.push_back(TrigTerm{static_cast<int>(to_long(key, f[0])), static_cast<int>(to_long(key, f[1])),
                             to_double(key, f[2]), to_double(key, f[3])});
  }
  return TrigPolynomial(c0, std::move(terms));
}

}  // namespace

const std::map<std::string, std::string>& known_keys() {
  static const std::map<std::string, std::string> keys = {
      {"model.matrix", "entries a,b,c,d of the 2x2 integer matrix (row-major)"},
      {"model.roof", "roof c0; k1,k2,cos,sin; ... (default 1)"},
      {"model.time_change", "time change g, same format (default 0)"},
      {"model.tau", "family parameter for orbits and zeta-eval (default 0)"},
      {"model.tau_grid", "comma list of tau values for fried-check and variation"},
      {"rep.u_angle", "u = exp(2 pi i * u_angle) on the winding generator (default 0.5)"},
      {"rep.fiber", "comma list of fiber exponents against coker(A - I) factors"},
      {"policy.n_max", "max period (suspensions) or orbit-iterate period cut"},
      {"policy.j_max", "max iterate"},
      {"policy.p_max", "max symmetric order in the Selberg factorization"},
      {"policy.h", "entropy estimate for tail bounds"},
      {"policy.tail_tol", "tolerance for cycle-expansion coefficients"},
      {"policy.allow_outside", "allow formal evaluation outside the convergence region"},
      {"policy.quad_subdivisions", "initial Simpson subdivisions (power of two)"},
      {"policy.richardson_tol", "agreement required after doubling subdivisions"},
      {"policy.fried_tol", "deviation flag threshold for fried-check"},
      {"policy.workers", "worker threads (0 = available parallelism)"},
      {"zeta.lambda", "comma list of lambda values, each re or re:im"},
      {"zeta.kinds", "comma list: ruelle, graded<k>, assembled, selberg:<label*label...>"},
      {"spectrum.source", "synthetic, schottky or file"},
      {"spectrum.file", "path of a #fried-spectrum file"},
      {"spectrum.h", "growth rate of the synthetic spectrum"},
      {"spectrum.n", "number of synthetic orbits"},
      {"spectrum.seed", "seed of the synthetic spectrum"},
      {"spectrum.l_max", "max word length for schottky spectra"},
      {"spectrum.ell", "translation length of the default Schottky generators"},
      {"selberg.k", "comma list of gradings"},
      {"selberg.lambda", "lambda for the factorization check"},
      {"selberg.p_max_curve", "comma list of p_max values for the residual curve"},
      {"variation.lambda", "lambda for the variation check"},
      {"ledger.h0", "dim H^0"},
      {"ledger.h1", "dim H^1"},
      {"ledger.n", "dimension parameter for the Selberg order ledger"},
      {"ledger.m", "tensor order"},
      {"ledger.s0", "evaluation point"},
      {"ledger.kernel_dim", "kernel dimension"},
      {"io.output", "output path (default stdout)"},
      {"io.csv", "plot-data CSV path"},
      {"io.format", "json or csv (zeta-eval)"},
  };
  return keys;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"orbits",    "zeta-eval", "zeta-continue", "fried-check",
                                                 "selberg-factorize", "variation", "ledger", "spectrum-gen"};
  return names;
}

RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    try {
      c.assign(line);
    } catch (const ValidationError& e) {
      throw ValidationError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return from_text(ss.str());
}

void RunConfig::assign(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ValidationError("expected section.key = value, got `" + assignment + "`");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (known_keys().count(key) == 0) throw ValidationError("unknown config key " + key);
  values_[key] = value;
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) != 0; }

std::string RunConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ValidationError("missing config key " + key);
  resolved_[key] = it->second;
  return it->second;
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  const std::string v = it == values_.end() ? fallback : it->second;
  resolved_[key] = v;
  return v;
}

namespace {

struct Context {
  const RunConfig& cfg;
  std::ostream& err;
};

Mat2i matrix_from(const RunConfig& cfg) {
  const auto parts = split(cfg.get("model.matrix"), ',');
  if (parts.size() != 4) throw ValidationError("model.matrix needs 4 comma-separated integers");
  return Mat2i{to_long("model.matrix", parts[0]), to_long("model.matrix", parts[1]),
               to_long("model.matrix", parts[2]), to_long("model.matrix", parts[3])};
}

SuspensionModel model_from(const RunConfig& cfg) {
  ToralAutomorphism a(matrix_from(cfg));
  return SuspensionModel(a, to_trig("model.roof", cfg.get("model.roof", "1")),
                         to_trig("model.time_change", cfg.get("model.time_change", "0")));
}

Character character_from(const RunConfig& cfg, const ToralAutomorphism& a) {
  const double f = to_double("rep.u_angle", cfg.get("rep.u_angle", "0.5"));
  std::vector<std::int64_t> fiber;
  for (const auto& p : split(cfg.get("rep.fiber", ""), ',')) {
    if (!p.empty()) fiber.push_back(to_long("rep.fiber", p));
  }
  // Exact values at the common angles keep closed forms exact.
  cplx u;
  const double r = f - std::floor(f);
  if (r == 0.0) {
    u = {1.0, 0.0};
  } else if (r == 0.5) {
    u = {-1.0, 0.0};
  } else if (r == 0.25) {
    u = {0.0, 1.0};
  } else if (r == 0.75) {
    u = {0.0, -1.0};
  } else {
    u = std::polar(1.0, 2.0 * std::numbers::pi * r);
  }
  return Character::make(a, u, fiber);
}

TruncationPolicy policy_from(const RunConfig& cfg, int default_n_max, int default_j_max) {
  TruncationPolicy p;
  p.n_max = static_cast<int>(to_long("policy.n_max", cfg.get("policy.n_max", std::to_string(default_n_max))));
  p.j_max = static_cast<int>(to_long("policy.j_max", cfg.get("policy.j_max", std::to_string(default_j_max))));
  p.p_max = static_cast<int>(to_long("policy.p_max", cfg.get("policy.p_max", "60")));
  if (cfg.has("policy.h")) p.h = to_double("policy.h", cfg.get("policy.h"));
  p.tail_tol = to_double("policy.tail_tol", cfg.get("policy.tail_tol", "1e-15"));
  p.allow_outside = to_bool("policy.allow_outside", cfg.get("policy.allow_outside", "false"));
  p.quad_subdivisions =
      static_cast<int>(to_long("policy.quad_subdivisions", cfg.get("policy.quad_subdivisions", "16")));
  p.richardson_tol = to_double("policy.richardson_tol", cfg.get("policy.richardson_tol", "1e-8"));
  const long w = to_long("policy.workers", cfg.get("policy.workers", "0"));
  if (w < 0) throw ValidationError("policy.workers must be >= 0");
  p.workers = static_cast<unsigned>(w);
  if (p.n_max < 0 || p.j_max < 1 || p.p_max < 0 || !(p.tail_tol > 0.0)) {
    throw ValidationError("policy values must be positive");
  }
  return p;
}

CycleExpansionOptions expansion_from(const RunConfig& cfg, double tau) {
  CycleExpansionOptions o;
  o.n_max = static_cast<int>(to_long("policy.n_max", cfg.get("policy.n_max", "14")));
  o.tol = to_double("policy.tail_tol", cfg.get("policy.tail_tol", "1e-15"));
  o.workers = static_cast<unsigned>(to_long("policy.workers", cfg.get("policy.workers", "0")));
  o.tau = tau;
  return o;
}

std::vector<double> tau_grid_from(const RunConfig& cfg, const SuspensionModel& model) {
  auto grid = to_doubles("model.tau_grid", cfg.get("model.tau_grid", "0"));
  if (grid.empty()) throw ValidationError("model.tau_grid is empty");
  for (double t : grid) model.require_admitted(t);
  return grid;
}

std::vector<ComplexLengthRecord> spectrum_records_from(const RunConfig& cfg, unsigned workers) {
  const std::string source = cfg.get("spectrum.source", cfg.has("spectrum.file") ? "file" : "synthetic");
  if (source == "file") {
    std::ifstream f(cfg.get("spectrum.file"));
    if (!f) throw ValidationError("cannot open spectrum file " + cfg.get("spectrum.file"));
    return io::read_spectrum(f);
  }
  if (source == "synthetic") {
    const double h = to_double("spectrum.h", cfg.get("spectrum.h", "2"));
    const long n = to_long("spectrum.n", cfg.get("spectrum.n", "200"));
    if (n < 0) throw ValidationError("spectrum.n must be >= 0");
    const long seed = to_long("spectrum.seed", cfg.get("spectrum.seed", "7"));
    return synthetic_spectrum(h, static_cast<std::size_t>(n), static_cast<std::uint64_t>(seed));
  }
  if (source == "schottky") {
    const double ell = to_double("spectrum.ell", cfg.get("spectrum.ell", "3"));
    const long l_max = to_long("spectrum.l_max", cfg.get("spectrum.l_max", "6"));
    return schottky_spectrum(default_schottky_pair(ell), static_cast<int>(l_max), workers);
  }
  throw ValidationError("spectrum.source must be synthetic, schottky or file");
}

double spectrum_entropy(const RunConfig& cfg) {
  return to_double("spectrum.h", cfg.get("spectrum.h", "2"));
}

std::vector<IrrepLabel> parse_labels(const std::string& s) {
  std::vector<IrrepLabel> out;
  for (const auto& part : split(s, '*')) {
    if (part.rfind("nu", 0) == 0) {
      out.push_back(IrrepLabel::nu(static_cast<int>(to_long("zeta.kinds", part.substr(2)))));
    } else if (part.rfind("sigma", 0) == 0) {
      out.push_back(IrrepLabel::sigma(static_cast<int>(to_long("zeta.kinds", part.substr(5)))));
    } else {
      throw ValidationError("unknown representation label `" + part + "`");
    }
  }
  return out;
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json config_echo(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.values()) j[k] = v;
  for (const auto& [k, v] : cfg.resolved()) j[k] = v;
  return j;
}

using Command = std::function<json(const Context&, std::ostream&)>;

json cmd_orbits(const Context& c, std::ostream& out) {
  const SuspensionModel model = model_from(c.cfg);
  const TruncationPolicy pol = policy_from(c.cfg, 0, 1);
  if (pol.n_max < 1) throw ValidationError("orbits needs policy.n_max >= 1");
  const double tau = to_double("model.tau", c.cfg.get("model.tau", "0"));
  const auto orbits = primitive_orbits(model.automorphism(), pol.n_max, pol.workers);
  std::vector<double> lengths;
  for (const auto& o : orbits) lengths.push_back(orbit_length(model, o, tau));
  io::write_orbits(out, orbits, lengths);
  return json();
}

json cmd_zeta_eval(const Context& c, std::ostream& out) {
  const auto lambdas = to_complexes("zeta.lambda", c.cfg.get("zeta.lambda"));
  if (lambdas.empty()) throw ValidationError("zeta.lambda is empty");
  OrbitSpectrum spec;
  TruncationPolicy pol;
  std::string default_kinds;
  if (c.cfg.has("model.matrix")) {
    const SuspensionModel model = model_from(c.cfg);
    pol = policy_from(c.cfg, 10, 10);
    if (pol.n_max < 1) throw ValidationError("zeta-eval needs policy.n_max >= 1");
    const double tau = to_double("model.tau", c.cfg.get("model.tau", "0"));
    spec = suspension_spectrum(model, character_from(c.cfg, model.automorphism()), pol.n_max, tau, pol.workers);
    default_kinds = "ruelle,graded0,graded1,graded2";
  } else {
    pol = policy_from(c.cfg, 0, 3);
    spec = loxodromic_spectrum(spectrum_records_from(c.cfg, pol.workers), spectrum_entropy(c.cfg));
    default_kinds = "ruelle,graded0,selberg:sigma0";
  }
  if (spec.terms.empty()) c.err << "warning: empty spectrum\n";
  std::vector<ZetaValue> values;
  for (const auto& kind : split(c.cfg.get("zeta.kinds", default_kinds), ',')) {
    for (const cplx lam : lambdas) {
      if (kind == "ruelle") {
        values.push_back(ruelle_log_zeta(spec, lam, pol));
      } else if (kind.rfind("graded", 0) == 0) {
        values.push_back(graded_log_zeta(spec, static_cast<int>(to_long("zeta.kinds", kind.substr(6))), lam, pol));
      } else if (kind == "assembled") {
        const auto r = assemble_ruelle_from_graded(spec, lam, pol);
        ZetaValue v;
        v.kind = "assembled";
        v.lambda = lam;
        v.log_value = r.log_zeta;
        v.tail_bound = r.tail_bound;
        v.h = effective_entropy(spec, pol);
        v.policy = pol;
        values.push_back(v);
      } else if (kind.rfind("selberg:", 0) == 0) {
        auto v = selberg_log_zeta(spec, parse_labels(kind.substr(8)), lam, pol);
        v.kind = kind;
        values.push_back(v);
      } else {
        throw ValidationError("unknown zeta kind `" + kind + "`");
      }
    }
  }
  if (c.cfg.get("io.format", "json") == "csv") {
    io::write_zeta_csv(out, values);
    return json();
  }
  json rows = json::array();
  for (const auto& v : values) rows.push_back(io::zeta_value_json(v));
  return json{{"results", rows}};
}

json cmd_zeta_continue(const Context& c, std::ostream&) {
  const SuspensionModel model = model_from(c.cfg);
  const Character chi = character_from(c.cfg, model.automorphism());
  const double tau = to_double("model.tau", c.cfg.get("model.tau", "0"));
  const auto opt = expansion_from(c.cfg, tau);
  json rows = json::array();
  for (const cplx lam : to_complexes("zeta.lambda", c.cfg.get("zeta.lambda", "0"))) {
    json row{{"lambda_re", lam.real()}, {"lambda_im", lam.imag()}};
    cplx zeta{1.0, 0.0};
    json dets = json::array();
    bool unreliable = false;
    for (int k = 0; k <= 2; ++k) {
      const auto d = dynamical_determinant(model, chi, k, lam, opt);
      dets.push_back(json{{"k", k},
                          {"value", complex_json(d.value)},
                          {"terms", d.coefficients.size()},
                          {"converged", d.converged},
                          {"last_coefficient", d.last_coefficient},
                          {"continuation_unreliable", d.continuation_unreliable}});
      unreliable = unreliable || d.continuation_unreliable;
      if (std::abs(d.value) < 1e-9) throw ResonanceAtZero("determinant vanishes at the requested lambda");
      zeta = (k % 2 == 0) ? zeta / d.value : zeta * d.value;
    }
    row["zeta"] = complex_json(zeta);
    row["determinants"] = dets;
    row["continuation_unreliable"] = unreliable;
    rows.push_back(row);
  }
  return json{{"results", rows}};
}

json cmd_fried_check(const Context& c, std::ostream&) {
  const SuspensionModel model = model_from(c.cfg);
  const Character chi = character_from(c.cfg, model.automorphism());
  const double tol = to_double("policy.fried_tol", c.cfg.get("policy.fried_tol", "1e-6"));
  json rows = json::array();
  double worst = 0.0;
  std::ostringstream csv;
  csv << "tau,abs_zeta0,deviation\n";
  for (double tau : tau_grid_from(c.cfg, model)) {
    const FriedReport r = fried_check(model, chi, expansion_from(c.cfg, tau));
    worst = std::max(worst, r.deviation);
    rows.push_back(json{{"tau", tau},
                        {"zeta0", complex_json(r.zeta0)},
                        {"abs_zeta0", std::abs(r.zeta0)},
                        {"torsion_modulus", r.torsion.modulus},
                        {"torsion_convention", convention_name(r.torsion.convention)},
                        {"exponent", r.exponent},
                        {"deviation", r.deviation},
                        {"continuation_unreliable", r.continuation_unreliable}});
    csv << io::format_double(tau) << ',' << io::format_double(std::abs(r.zeta0)) << ','
        << io::format_double(r.deviation) << '\n';
  }
  if (c.cfg.has("io.csv")) {
    std::ofstream f(c.cfg.get("io.csv"));
    if (!f) throw ValidationError("cannot write " + c.cfg.get("io.csv"));
    f << csv.str();
  }
  return json{{"results", rows}, {"max_deviation", worst}, {"tolerance", tol}, {"deviation_exceeded", worst > tol}};
}

json cmd_selberg_factorize(const Context& c, std::ostream&) {
  TruncationPolicy pol = policy_from(c.cfg, 0, 3);
  const auto spec = loxodromic_spectrum(spectrum_records_from(c.cfg, pol.workers), spectrum_entropy(c.cfg));
  const cplx lam = to_complex("selberg.lambda", c.cfg.get("selberg.lambda", "5"));
  json rows = json::array();
  for (double kd : to_doubles("selberg.k", c.cfg.get("selberg.k", "0,1,2"))) {
    const int k = static_cast<int>(kd);
    const auto rep = factorization_check(spec, k, lam, pol);
    json curve = json::array();
    for (double pm : to_doubles("selberg.p_max_curve", c.cfg.get("selberg.p_max_curve", "5,10,20"))) {
      TruncationPolicy p2 = pol;
      p2.p_max = static_cast<int>(pm);
      const auto r2 = factorization_check(spec, k, lam, p2);
      curve.push_back(json{{"p_max", p2.p_max}, {"max_residual", r2.max_residual}});
    }
    rows.push_back(json{{"k", k},
                        {"lhs_log", complex_json(rep.lhs_log)},
                        {"rhs_log", complex_json(rep.rhs_log)},
                        {"rhs_log_product", complex_json(rep.rhs_log_product)},
                        {"max_residual", rep.max_residual},
                        {"truncation_bound", rep.truncation_bound},
                        {"residual_curve", curve}});
  }
  return json{{"results", rows}, {"orbits", spec.terms.size()}, {"ell_min", spec.min_length()}};
}

json cmd_variation(const Context& c, std::ostream&) {
  const SuspensionModel model = model_from(c.cfg);
  const Character chi = character_from(c.cfg, model.automorphism());
  const TruncationPolicy pol = policy_from(c.cfg, 10, 10);
  const cplx lam = to_complex("variation.lambda", c.cfg.get("variation.lambda", "3"));
  json rows = json::array();
  for (double tau : tau_grid_from(c.cfg, model)) {
    const auto rep = variation_rhs(model, chi, lam, tau, pol);
    const cplx direct = direct_quotient(model, chi, lam, tau, pol);
    rows.push_back(json{{"tau", tau},
                        {"ratio", complex_json(rep.ratio)},
                        {"direct_quotient", complex_json(direct)},
                        {"relative_error", std::abs(rep.ratio - direct) / std::abs(direct)},
                        {"richardson_delta", rep.richardson_delta},
                        {"subdivisions", rep.subdivisions},
                        {"max_form_residual", rep.max_form_residual},
                        {"h", rep.h}});
  }
  return json{{"results", rows}};
}

json cmd_ledger(const Context& c, std::ostream&) {
  json cases = json::object();
  for (int k = 0; k <= 2; ++k) {
    json list = json::array();
    for (const auto& cs : condition_enumerate(k, 2)) list.push_back(json{{"l", cs.l}, {"q", cs.q}, {"p", cs.p}});
    cases[std::to_string(k)] = list;
  }
  json rep{{"condition_cases", cases}};
  const int h0 = static_cast<int>(to_long("ledger.h0", c.cfg.get("ledger.h0", "0")));
  const int h1 = static_cast<int>(to_long("ledger.h1", c.cfg.get("ledger.h1", "0")));
  const auto m = resonance_multiplicity_ledger(h0, h1);
  const auto mc = ledger_from_cases(h0, h1);
  rep["multiplicities"] = m;
  rep["multiplicities_from_cases"] = mc;
  rep["consistent"] = m == mc;
  if (c.cfg.has("ledger.n")) {
    const int n = static_cast<int>(to_long("ledger.n", c.cfg.get("ledger.n")));
    const int mm = static_cast<int>(to_long("ledger.m", c.cfg.get("ledger.m", "0")));
    const double s0 = to_double("ledger.s0", c.cfg.get("ledger.s0", "0"));
    const int d = static_cast<int>(to_long("ledger.kernel_dim", c.cfg.get("ledger.kernel_dim", "0")));
    rep["selberg_order"] = selberg_order_ledger(n, mm, s0, d);
  }
  return rep;
}

json cmd_spectrum_gen(const Context& c, std::ostream& out) {
  const unsigned workers = static_cast<unsigned>(to_long("policy.workers", c.cfg.get("policy.workers", "0")));
  const auto records = spectrum_records_from(c.cfg, workers);
  io::write_spectrum(out, records);
  if (c.cfg.get("spectrum.source", "synthetic") == "synthetic" && !records.empty()) {
    const auto cc = counting_check(records, spectrum_entropy(c.cfg));
    c.err << "counting ratio range [" << cc.min_ratio << ", " << cc.max_ratio << "]"
          << (cc.within_factor_two() ? "" : " outside factor 2") << '\n';
  }
  return json();
}

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table = {
      {"orbits", cmd_orbits},
      {"zeta-eval", cmd_zeta_eval},
      {"zeta-continue", cmd_zeta_continue},
      {"fried-check", cmd_fried_check},
      {"selberg-factorize", cmd_selberg_factorize},
      {"variation", cmd_variation},
      {"ledger", cmd_ledger},
      {"spectrum-gen", cmd_spectrum_gen},
  };
  return table;
}

}  // namespace

int run_command(const std::string& command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto it = commands().find(command);
  if (it == commands().end()) {
    err << "error: unknown command `" << command << "`\n";
    return 1;
  }
  try {
    const auto start = std::chrono::steady_clock::now();
    std::ofstream file;
    std::ostream* sink = &out;
    if (config.has("io.output")) {
      file.open(config.get("io.output"));
      if (!file) throw ValidationError("cannot write " + config.get("io.output"));
      sink = &file;
    }
    std::ostringstream buffer;
    json rep = it->second(Context{config, err}, buffer);
    if (!rep.is_null()) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      rep["command"] = command;
      rep["config"] = config_echo(config);
      rep["elapsed_seconds"] = secs;
      *sink << rep.dump(2) << '\n';
    } else {
      *sink << buffer.str();
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace fried::cli

#include "fried/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "fried/errors.hpp"

namespace fried::io {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

bool next_data_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

void expect_header(std::istream& is, const std::string& prefix) {
  std::string line;
  if (!std::getline(is, line) || line.rfind(prefix, 0) != 0) {
    throw ValidationError("missing header `" + prefix + "`");
  }
}

}  // namespace

void write_orbits(std::ostream& os, const std::vector<OrbitRecord>& orbits, const std::vector<double>& lengths) {
  if (!lengths.empty() && lengths.size() != orbits.size()) throw ValidationError("one length per orbit required");
  os << "#fried-orbits v1\n";
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const auto& o = orbits[i];
    os << o.period << ' ' << o.base.num1 << ' ' << o.base.num2 << ' ' << o.base.den << ' '
       << format_double(lengths.empty() ? o.length : lengths[i]) << ' ' << o.epsilon << ' ' << o.homology.winding;
    for (auto c : o.homology.coker) os << ' ' << c;
    os << '\n';
  }
}

std::vector<OrbitRecord> read_orbits(std::istream& is, const ToralAutomorphism& a) {
  expect_header(is, "#fried-orbits v1");
  std::vector<OrbitRecord> out;
  std::string line;
  while (next_data_line(is, line)) {
    std::istringstream ls(line);
    OrbitRecord o;
    if (!(ls >> o.period >> o.base.num1 >> o.base.num2 >> o.base.den >> o.length >> o.epsilon >> o.homology.winding)) {
      throw ValidationError("malformed orbit record: " + line);
    }
    std::int64_t c;
    while (ls >> c) o.homology.coker.push_back(c);
    if (o.period < 1 || o.base.den < 1) throw ValidationError("inconsistent orbit data: " + line);
    const HomologyClass expected = homology_class(a, o.base.num1, o.base.num2, o.base.den, o.period);
    if (!(expected == o.homology)) throw ValidationError("inconsistent orbit data: class mismatch in " + line);
    if (o.epsilon != orientation_index(a, o.period)) throw ValidationError("inconsistent orbit data: epsilon");
    o.lambda_u_n = std::pow(a.lambda_u(), o.period);
    o.lambda_s_n = std::pow(a.lambda_s(), o.period);
    out.push_back(std::move(o));
  }
  return out;
}

void write_spectrum(std::ostream& os, const std::vector<ComplexLengthRecord>& records) {
  os << "#fried-spectrum v1 n0=2\n";
  for (const auto& r : records) {
    os << format_double(r.ell) << ' ' << format_double(r.theta) << ' ' << r.multiplicity;
    if (!r.label.empty()) os << ' ' << r.label;
    os << '\n';
  }
}

std::vector<ComplexLengthRecord> read_spectrum(std::istream& is) {
  expect_header(is, "#fried-spectrum v1");
  std::vector<ComplexLengthRecord> out;
  std::string line;
  while (next_data_line(is, line)) {
    std::istringstream ls(line);
    ComplexLengthRecord r;
    if (!(ls >> r.ell >> r.theta >> r.multiplicity)) throw ValidationError("malformed spectrum record: " + line);
    ls >> r.label;
    if (!(r.ell > 0.0) || r.multiplicity < 1) throw ValidationError("invalid spectrum record: " + line);
    r.theta = reduce_angle(r.theta);
    out.push_back(std::move(r));
  }
  return out;
}

BasedChainComplex chain_complex_from_json(const nlohmann::json& j) {
  try {
    const auto dims = j.at("degrees").get<std::vector<int>>();
    std::vector<Eigen::MatrixXcd> mats;
    const auto& arr = j.at("matrices");
    if (!arr.is_array() || arr.size() + 1 != dims.size()) {
      throw ValidationError("chain complex JSON needs one matrix per positive degree");
    }
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const int rows = dims[k];
      const int cols = dims[k + 1];
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
      const auto& jm = arr[k];
      if (static_cast<int>(jm.size()) != rows) throw ValidationError("matrix row count mismatch");
      for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(jm[static_cast<std::size_t>(r)].size()) != cols) {
          throw ValidationError("matrix column count mismatch");
        }
        for (int c = 0; c < cols; ++c) {
          const auto& e = jm[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
          m(r, c) = cplx{e.at(0).get<double>(), e.at(1).get<double>()};
        }
      }
      mats.push_back(std::move(m));
    }
    return BasedChainComplex(dims, std::move(mats));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed chain complex JSON: ") + e.what());
  }
}

nlohmann::json chain_complex_to_json(const BasedChainComplex& c) {
  nlohmann::json j;
  j["degrees"] = c.dims();
  j["matrices"] = nlohmann::json::array();
  for (const auto& m : c.boundaries()) {
    nlohmann::json jm = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(r, k).real(), m(r, k).imag()});
      jm.push_back(std::move(row));
    }
    j["matrices"].push_back(std::move(jm));
  }
  return j;
}

nlohmann::json policy_json(const TruncationPolicy& p) {
  nlohmann::json j;
  j["n_max"] = p.n_max;
  j["j_max"] = p.j_max;
  j["p_max"] = p.p_max;
  j["h"] = std::isnan(p.h) ? nlohmann::json(nullptr) : nlohmann::json(p.h);
  j["tail_tol"] = p.tail_tol;
  j["allow_outside"] = p.allow_outside;
  j["quad_subdivisions"] = p.quad_subdivisions;
  j["richardson_tol"] = p.richardson_tol;
  return j;
}

nlohmann::json zeta_value_json(const ZetaValue& v) {
  nlohmann::json j;
  j["zeta_kind"] = v.kind;
  j["lambda_re"] = v.lambda.real();
  j["lambda_im"] = v.lambda.imag();
  j["log_value_re"] = v.log_value.real();
  j["log_value_im"] = v.log_value.imag();
  j["tail_bound"] = std::isfinite(v.tail_bound) ? nlohmann::json(v.tail_bound) : nlohmann::json("inf");
  j["h"] = v.h;
  j["terms"] = v.terms;
  j["policy"] = policy_json(v.policy);
  return j;
}

void write_zeta_csv(std::ostream& os, const std::vector<ZetaValue>& values) {
  os << "lambda_re,lambda_im,log_zeta_re,log_zeta_im,tail\n";
  for (const auto& v : values) {
    os << format_double(v.lambda.real()) << ',' << format_double(v.lambda.imag()) << ','
       << format_double(v.log_value.real()) << ',' << format_double(v.log_value.imag()) << ','
       << format_double(v.tail_bound) << '\n';
  }
}

}  // namespace fried::io

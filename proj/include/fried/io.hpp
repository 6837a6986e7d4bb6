#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "fried/kleinian_spectrum.hpp"
#include "fried/orbit_models.hpp"
#include "fried/torsion.hpp"
#include "fried/zeta_products.hpp"

namespace fried::io {

/// `#fried-orbits v1`, then per line
/// `period base_num1 base_num2 base_den length epsilon winding coker_exps...`.
/// lengths, if given, replaces the unit-roof length of each record.
void write_orbits(std::ostream& os, const std::vector<OrbitRecord>& orbits, const std::vector<double>& lengths = {});
/// Parses an orbit dump and re-validates each record against a.
std::vector<OrbitRecord> read_orbits(std::istream& is, const ToralAutomorphism& a);

/// `#fried-spectrum v1 n0=2`, then `ell theta multiplicity [label]` per line.
void write_spectrum(std::ostream& os, const std::vector<ComplexLengthRecord>& records);
std::vector<ComplexLengthRecord> read_spectrum(std::istream& is);

/// {"degrees": [n_0, ..., n_N], "matrices": [d_1, ..., d_N]} with each
/// matrix a list of rows of [re, im] pairs.
BasedChainComplex chain_complex_from_json(const nlohmann::json& j);
nlohmann::json chain_complex_to_json(const BasedChainComplex& c);

nlohmann::json policy_json(const TruncationPolicy& p);
nlohmann::json zeta_value_json(const ZetaValue& v);

/// Header `lambda_re,lambda_im,log_zeta_re,log_zeta_im,tail`.
void write_zeta_csv(std::ostream& os, const std::vector<ZetaValue>& values);

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

}  // namespace fried::io

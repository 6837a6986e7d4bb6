#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fried/cli.hpp"
#include "fried/errors.hpp"
#include "fried/zeta_products.hpp"

using namespace fried;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& command, const std::string& config) {
  std::ostringstream out;
  std::ostringstream err;
  const auto cfg = cli::RunConfig::from_text(config);
  const int code = cli::run_command(command, cfg, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fried_cli_" + name)).string();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = cli::RunConfig::from_text("# comment\nmodel.matrix = 2,1,1,1\n\npolicy.n_max=3 # trailing\n");
  CHECK(c.get("model.matrix") == "2,1,1,1");
  CHECK(c.get("policy.n_max") == "3");
  CHECK(c.get("policy.j_max", "7") == "7");
  CHECK(c.resolved().at("policy.j_max") == "7");
  CHECK_THROWS_AS(cli::RunConfig::from_text("model.matrx = 1"), ValidationError);
  CHECK_THROWS_AS(cli::RunConfig::from_text("no equals sign"), ValidationError);
  CHECK_THROWS_AS(c.get("rep.fiber"), ValidationError);
  auto d = c;
  d.assign("policy.n_max=5");
  CHECK(d.get("policy.n_max") == "5");
  CHECK(cli::command_names().size() == 8);
}

TEST_CASE("orbits command") {
  const auto r = run("orbits", "model.matrix = 2,1,1,1\npolicy.n_max = 3\n");
  CHECK(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "#fried-orbits v1");
  int n = 0;
  while (std::getline(is, line)) ++n;
  CHECK(n == 8);
  CHECK(run("orbits", "model.matrix = 1,1,0,1\npolicy.n_max = 3\n").code == 1);
  CHECK(run("orbits", "").code == 1);
  CHECK(run("no-such-command", "").code == 1);
}

TEST_CASE("zeta-eval is a thin wrapper") {
  const auto r = run("zeta-eval", "model.matrix = 2,1,1,1\nzeta.lambda = 4,5\nzeta.kinds = ruelle\n");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j["results"].size() == 2);
  const ToralAutomorphism a(Mat2i{2, 1, 1, 1});
  const SuspensionModel model(a, TrigPolynomial(1.0));
  const auto spec = suspension_spectrum(model, Character::make(a, 0.5), 10, 0.0);
  TruncationPolicy p;
  p.n_max = 10;
  p.j_max = 10;
  p.tail_tol = 1e-15;
  for (int i = 0; i < 2; ++i) {
    const auto v = ruelle_log_zeta(spec, 4.0 + i, p);
    CHECK(j["results"][i]["log_value_re"].get<double>() == v.log_value.real());
    CHECK(j["results"][i]["log_value_im"].get<double>() == v.log_value.imag());
    CHECK(j["results"][i]["tail_bound"].get<double>() == v.tail_bound);
  }
  CHECK(j.contains("config"));
  CHECK(j.contains("elapsed_seconds"));
  CHECK(run("zeta-eval", "model.matrix = 2,1,1,1\nzeta.lambda = 0\n").code == 2);
  const auto csv = run("zeta-eval", "model.matrix = 2,1,1,1\nzeta.lambda = 4,5\nzeta.kinds = ruelle,graded1\nio.format = csv\n");
  CHECK(csv.code == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 5);
}

TEST_CASE("zeta-eval on a single-orbit spectrum file") {
  const std::string path = temp_path("single.spec");
  {
    std::ofstream f(path);
    f << "#fried-spectrum v1 n0=2\n2.0 1.0 1 g\n";
  }
  const auto r = run("zeta-eval", "spectrum.file = " + path + "\nspectrum.h = 0.1\nzeta.lambda = 3\nzeta.kinds = selberg:sigma1\npolicy.j_max = 3\n");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  double hand = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const double dets = 1 - 2 * std::exp(-2.0 * k) * std::cos(k * 1.0) + std::exp(-4.0 * k);
    hand -= (1.0 / k) * 2 * std::cos(k * 1.0) * std::exp(-6.0 * k) / dets;
  }
  CHECK(j["results"][0]["log_value_re"].get<double>() == doctest::Approx(hand).epsilon(1e-14));
  std::remove(path.c_str());
  CHECK(run("zeta-eval", "spectrum.file = /nonexistent/x\nzeta.lambda = 3\n").code == 1);
}

TEST_CASE("fried-check command") {
  const std::string csv = temp_path("fried.csv");
  const auto r = run("fried-check", "model.matrix = 2,1,1,1\nrep.u_angle = 0.5\nmodel.roof = 1; 1,0,0.05,0\n"
                                    "model.tau_grid = 0,0.05,0.1\nmodel.time_change = 0; 0,1,0.05,0\nio.csv = " + csv + "\n");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["max_deviation"].get<double>() < 1e-6);
  CHECK_FALSE(j["deviation_exceeded"].get<bool>());
  CHECK(j["results"].size() == 3);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  CHECK(header == "tau,abs_zeta0,deviation");
  std::remove(csv.c_str());
  CHECK(run("fried-check", "model.matrix = 2,1,1,1\nrep.u_angle = 0\n").code == 2);
  CHECK(run("fried-check", "model.matrix = 2,1,1,1\nmodel.tau_grid = 0,30\nmodel.time_change = 0; 1,0,0.05,0\n").code == 1);
}

TEST_CASE("variation command") {
  const auto flat = run("variation", "model.matrix = 2,1,1,1\nmodel.tau_grid = 0,0.1\n");
  REQUIRE(flat.code == 0);
  for (const auto& row : json::parse(flat.out)["results"]) CHECK(row["ratio"]["re"].get<double>() == doctest::Approx(1.0));
  const auto r = run("variation", "model.matrix = 2,1,1,1\nmodel.tau_grid = 0.1\nmodel.time_change = 0; 1,0,0.05,0\n");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["results"][0]["relative_error"].get<double>() < 1e-6);
  CHECK(run("variation", "model.matrix = 2,1,1,1\nvariation.lambda = 0.5\nmodel.tau_grid = 0.1\n").code == 2);
}

TEST_CASE("ledger command") {
  auto r = run("ledger", "ledger.h0 = 1\nledger.h1 = 3\n");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["multiplicities"][2] == 8);
  CHECK(j["consistent"].get<bool>());
  CHECK(j["condition_cases"]["1"].size() == 2);
  r = run("ledger", "ledger.n = 2\nledger.m = 2\nledger.s0 = 1\nledger.kernel_dim = 0\n");
  CHECK(json::parse(r.out)["selberg_order"] == 0);
  r = run("ledger", "");
  CHECK(json::parse(r.out)["multiplicities"] == json::array({0, 0, 0, 0, 0}));
}

TEST_CASE("spectrum-gen and selberg-factorize") {
  const auto a = run("spectrum-gen", "spectrum.source = synthetic\nspectrum.n = 30\nspectrum.seed = 5\n");
  const auto b = run("spectrum-gen", "spectrum.source = synthetic\nspectrum.n = 30\nspectrum.seed = 5\n");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("#fried-spectrum v1", 0) == 0);
  const auto s = run("spectrum-gen", "spectrum.source = schottky\nspectrum.l_max = 3\n");
  CHECK(s.code == 0);
  const auto f = run("selberg-factorize", "spectrum.n = 200\nspectrum.seed = 7\nselberg.lambda = 5\nselberg.p_max_curve = 10\n");
  REQUIRE(f.code == 0);
  for (const auto& row : json::parse(f.out)["results"]) CHECK(row["max_residual"].get<double>() < 1e-10);
  CHECK(run("spectrum-gen", "spectrum.source = magic\n").code == 1);
}

TEST_CASE("zeta-continue command") {
  const auto r = run("zeta-continue", "model.matrix = 2,1,1,1\nzeta.lambda = 0\n");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["results"][0]["zeta"]["re"].get<double>() == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(run("zeta-continue", "model.matrix = 2,1,1,1\nrep.u_angle = 0\nzeta.lambda = 0\n").code == 2);
}

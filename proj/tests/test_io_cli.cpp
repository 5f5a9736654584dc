// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ncpot/gen.hpp"
#include "ncpot/io.hpp"

using namespace ncpot;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "ncpot_cli_tests";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(NCPOT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("io_cli") {

TEST_CASE("matrix json round trip") {
  Rng rng(801);
  const CMatrix m = rng.gaussian(3);
  const CMatrix back = io::matrix_from_json(io::matrix_to_json(m));
  CHECK((back - m).norm() == 0.0);  // bit-exact through shortest round-trip

  CHECK_THROWS_AS(io::matrix_from_json(io::json{{"dim", 2}, {"entries", {1, 2}}}),
                  InputError);
  CHECK_THROWS_AS(io::matrix_from_json(io::json{{"dim", 2}}), InputError);
}

TEST_CASE("samples, laurent, poly, field json round trips") {
  Rng rng(802);
  const MatrixLaurentPolynomial f = rng.psd_laurent(2, 3, 0.1);
  const auto back = io::laurent_from_json(io::laurent_to_json(f));
  for (int n = -3; n <= 3; ++n) CHECK((back.coeff(n) - f.coeff(n)).norm() <= 1e-15);

  // The F_{-n} = F_n^* constraint is validated on load.
  io::json bad = io::laurent_to_json(f);
  bad["coeffs"]["-1"] = io::matrix_to_json(rng.gaussian(2));
  CHECK_THROWS_AS(io::laurent_from_json(bad), InputError);

  BoundarySamples s = BoundarySamples::sample(DiscSpec(Complex(0.1, -0.2), 0.7), 16,
                                              [&](Complex z) { return f.eval(z); });
  const BoundarySamples s2 = io::samples_from_json(io::samples_to_json(s));
  CHECK(s2.n() == s.n());
  for (int j = 0; j < s.n(); ++j)
    CHECK((s2.value(j) - s.value(j)).norm() == 0.0);

  const MatrixPolynomial h = rng.poly(2, 4);
  const MatrixPolynomial h2 = io::poly_from_json(io::poly_to_json(h));
  for (int n = 0; n <= 4; ++n) CHECK((h2.coeff(n) - h.coeff(n)).norm() == 0.0);

  for (const MetricField& field :
       {rng.flat_sum_field(2, 2, 3), rng.dual_field(2, 2, 2),
        MetricField::constant(rng.psd(2)),
        MetricField::direct_sum({rng.flat_sum_field(1, 2, 2), rng.dual_field(1, 2, 2)})}) {
    const MetricField f2 = io::field_from_json(io::field_to_json(field));
    const Complex z(0.21, -0.13);
    CHECK(operator_norm(f2.value(z) - field.value(z)) <= 1e-15);
  }
}

TEST_CASE("cli factor on a constant symbol writes its square root") {
  const fs::path dir = temp_dir();
  CMatrix c = CMatrix::Zero(2, 2);
  c(0, 0) = 4.0;
  c(1, 1) = 1.0;
  io::save_file((dir / "const.json").string(),
                io::laurent_to_json(MatrixLaurentPolynomial::constant(c)));
  const int rc = run_cli("factor --in " + (dir / "const.json").string() + " --out " +
                         (dir / "h.json").string());
  CHECK(rc == 0);
  const MatrixPolynomial h = io::poly_from_json(io::load_file((dir / "h.json").string()));
  CMatrix expect = CMatrix::Zero(2, 2);
  expect(0, 0) = 2.0;
  expect(1, 1) = 1.0;
  CHECK(operator_norm(h.eval(Complex(0.5, 0.5)) - expect) <= 1e-9);
}

TEST_CASE("cli certify exit codes carry the verdict") {
  const fs::path dir = temp_dir();
  Rng rng(803);
  io::save_file((dir / "flat.json").string(),
                io::field_to_json(rng.flat_sum_field(2, 2, 2)));
  CHECK(run_cli("certify --field " + (dir / "flat.json").string() +
                " --mode seminegative --samples 64") == 0);

  // DualFlatSum {1, z} fails seminegativity with a witness disc (exit 1).
  const MetricField dual = MetricField::dual_flat_sum(
      {MatrixPolynomial::constant(CMatrix::Identity(1, 1)),
       MatrixPolynomial(1, {CMatrix::Zero(1, 1), CMatrix::Identity(1, 1)})});
  io::save_file((dir / "dual.json").string(), io::field_to_json(dual));
  CHECK(run_cli("certify --field " + (dir / "dual.json").string() +
                " --mode seminegative --samples 64 --out " +
                (dir / "rep.json").string()) == 1);
  const io::json rep = io::load_file((dir / "rep.json").string());
  CHECK_FALSE(rep.at("pass").get<bool>());
  CHECK(rep.at("worst_margin").get<double>() < 0.0);
  CHECK(rep.at("witness").at("r").get<double>() > 0.0);

  // Usage and input errors map to exit 2.
  CHECK(run_cli("certify --field /nonexistent.json --mode seminegative") == 2);
  CHECK(run_cli("certify --field " + (dir / "dual.json").string() + " --mode bogus") == 2);
  CHECK(run_cli("frobnicate") == 2);
}

TEST_CASE("cli harnack emits the expected csv and is deterministic") {
  const fs::path dir = temp_dir();
  const std::string base = "harnack --z0 0.5 --kmin 1 --kmax 2 --dim 16 --out ";
  CHECK(run_cli(base + (dir / "fam1.csv").string()) == 0);
  CHECK(run_cli(base + (dir / "fam2.csv").string()) == 0);
  const std::string a = slurp(dir / "fam1.csv");
  CHECK(a == slurp(dir / "fam2.csv"));  // identical bytes

  // Row k=2: lower bound 625, P(0) scalar 25.
  std::istringstream lines(a);
  std::string line, k2;
  std::getline(lines, line);
  CHECK(line == "k,norm_pz0,lower_bound,p0_scalar");
  while (std::getline(lines, line))
    if (line.rfind("2,", 0) == 0) k2 = line;
  REQUIRE(!k2.empty());
  CHECK(k2.find(",625,") != std::string::npos);
  CHECK(k2.substr(k2.rfind(',') + 1) == "25");
}

TEST_CASE("cli dirichlet and curvature smoke") {
  const fs::path dir = temp_dir();
  // Boundary 5/4 + cos t on 64 samples.
  BoundarySamples f = BoundarySamples::sample(DiscSpec::unit(), 64, [](Complex z) {
    return CMatrix::Constant(1, 1, Complex(1.25 + z.real(), 0.0));
  });
  io::save_file((dir / "bdry.json").string(), io::samples_to_json(f));
  io::save_file((dir / "pts.json").string(),
                io::json::array({io::complex_to_json(Complex(0.6, 0.0))}));
  CHECK(run_cli("dirichlet --boundary " + (dir / "bdry.json").string() +
                " --degree 8 --out " + (dir / "flat.json").string() + " --eval " +
                (dir / "pts.json").string()) == 0);
  const FlatMetric fm =
      io::flat_metric_from_json(io::load_file((dir / "flat.json").string()));
  CHECK(std::abs(fm.value(Complex(0.6, 0.0))(0, 0).real() - 1.69) <= 1e-8);

  io::save_file((dir / "field.json").string(),
                io::field_to_json(MetricField::flat_sum({fm.h()})));
  CHECK(run_cli("curvature --field " + (dir / "field.json").string() +
                " --grid 16 --out " + (dir / "cls.json").string()) == 0);
  CHECK(io::load_file((dir / "cls.json").string()).at("classification") == "flat");
}

TEST_CASE("cli selftest passes") {
  CHECK(run_cli("selftest --seed 7") == 0);
}

TEST_CASE("emitted artifacts re-parse and re-validate") {
  const fs::path dir = temp_dir();
  Rng rng(804);
  const MatrixLaurentPolynomial f = rng.psd_laurent(2, 2, 0.15);
  io::save_file((dir / "sym.json").string(), io::laurent_to_json(f));
  CHECK(run_cli("factor --in " + (dir / "sym.json").string() + " --out " +
                (dir / "hf.json").string() + " --report " + (dir / "rep.json").string()) ==
        0);
  // Round trip through the schema validators.
  CHECK_NOTHROW(io::poly_from_json(io::load_file((dir / "hf.json").string())));
  const io::json rep = io::load_file((dir / "rep.json").string());
  CHECK(rep.at("residual").get<double>() <= 1e-8);
  CHECK(rep.at("winding").get<int>() == 0);
}

}  // TEST_SUITE

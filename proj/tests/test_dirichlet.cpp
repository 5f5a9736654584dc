// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <functional>
#include <numbers>

#include "ncpot/curvature.hpp"
#include "ncpot/dirichlet.hpp"
#include "ncpot/gen.hpp"

using namespace ncpot;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle for scalar flat metrics: zero curvature means log P is
// harmonic, so P is the exponential of the Poisson integral of log f.
double poisson_log_extension(const std::function<double(double)>& f, Complex z,
                             int n = 4096) {
  double u = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * j / n;
    const Complex e(std::cos(t), std::sin(t));
    u += std::real((e + z) / (e - z)) * std::log(f(t));
  }
  return std::exp(u / n);
}

BoundarySamples scalar_samples(int n, const std::function<double(double)>& f) {
  std::vector<CMatrix> vals;
  vals.reserve(n);
  for (int j = 0; j < n; ++j)
    vals.push_back(CMatrix::Constant(1, 1, Complex(f(2.0 * kPi * j / n), 0.0)));
  return BoundarySamples::make(DiscSpec::unit(), std::move(vals));
}

}  // namespace

TEST_SUITE("dirichlet") {

TEST_CASE("constant boundary solves to the constant metric") {
  Rng rng(401);
  const CMatrix c = rng.psd(3) + 0.3 * CMatrix::Identity(3, 3);
  BoundarySamples f = BoundarySamples::sample(DiscSpec::unit(), 64,
                                              [&](Complex) { return c; });
  const DirichletResult res = solve_dirichlet(f, 16);
  CHECK(res.truncation_error <= 1e-12 * (1.0 + operator_norm(c)));
  CHECK_FALSE(res.fejer_smoothed);
  const CMatrix h_sqrt = sqrt_psd_raw(c);
  for (Complex z : {Complex(0, 0), Complex(0.5, 0.3), Complex(-0.9, 0)}) {
    CHECK(operator_norm(res.metric.value(z) - c) <= 1e-9 * (1.0 + operator_norm(c)));
    CHECK(operator_norm(res.metric.factor_at(z) - h_sqrt) <= 1e-8);
  }
}

TEST_CASE("scalar boundary 5/4 + cos t against the Poisson oracle") {
  const auto f = [](double t) { return 1.25 + std::cos(t); };
  const DirichletResult res = solve_dirichlet(scalar_samples(256, f), 8);
  CHECK_FALSE(res.fejer_smoothed);  // band-limited data keeps raw truncation
  for (double rr : {0.0, 0.3, 0.6, 0.9}) {
    for (int a = 0; a < 8; ++a) {
      const Complex z = rr * std::polar(1.0, 2.0 * kPi * a / 8);
      const double got = res.metric.value(z)(0, 0).real();
      const double closed = std::norm(1.0 + z / 2.0);
      const double oracle = poisson_log_extension(f, z);
      CHECK(std::abs(got - closed) <= 1e-9);
      CHECK(std::abs(got - oracle) <= 1e-7);
    }
  }
  CHECK(std::abs(res.metric.value(Complex(0, 0))(0, 0).real() - 1.0) <= 1e-9);
}

TEST_CASE("worked 2x2 boundary recovers the unitriangular factor") {
  BoundarySamples f = BoundarySamples::sample(DiscSpec::unit(), 64, [](Complex w) {
    CMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = w;
    m(1, 0) = std::conj(w);
    m(1, 1) = 2.0;
    return m;
  });
  const DirichletResult res = solve_dirichlet(f, 8);
  CMatrix h0 = CMatrix::Identity(2, 2);
  CMatrix h1 = CMatrix::Zero(2, 2);
  h1(0, 1) = 1.0;
  CHECK(operator_norm(res.metric.h().coeff(0) - h0) <= 1e-8);
  CHECK(operator_norm(res.metric.h().coeff(1) - h1) <= 1e-8);
  // P(z) = [[1, z], [zbar, 1 + |z|^2]].
  const Complex z(0.4, -0.3);
  CMatrix expect(2, 2);
  expect(0, 0) = 1.0;
  expect(0, 1) = z;
  expect(1, 0) = std::conj(z);
  expect(1, 1) = 1.0 + std::norm(z);
  CHECK(operator_norm(res.metric.value(z) - expect) <= 1e-8);
}

TEST_CASE("evaluate_metric closed form and domain gate") {
  MatrixPolynomial h(1, {CMatrix::Constant(1, 1, 1.0), CMatrix::Constant(1, 1, 0.5)});
  const FlatMetric fm(h, DiscSpec::unit());
  CHECK(evaluate_metric(fm, Complex(0.6, 0.0)).mat()(0, 0).real() ==
        doctest::Approx(1.69));
  CHECK_THROWS_AS(evaluate_metric(fm, Complex(1.5, 0.0)), InputError);
}

TEST_CASE("solver boundary values match the input samples") {
  Rng rng(402);
  const MatrixLaurentPolynomial fl = rng.psd_laurent(3, 4, 0.1);
  BoundarySamples f = BoundarySamples::sample(DiscSpec::unit(), 128,
                                              [&](Complex z) { return fl.eval(z); });
  const DirichletResult res = solve_dirichlet(f, 8);
  double worst = 0.0;
  for (int j = 0; j < f.n(); ++j) {
    const CMatrix hv = res.metric.factor_at(f.point(j));
    worst = std::max(worst, operator_norm(hv.adjoint() * hv - f.value(j)));
  }
  CHECK(worst <= 1e-8 * (1.0 + f.scale()));
}

TEST_CASE("solver outputs are flat (vanishing curvature defect)") {
  Rng rng(403);
  const MatrixLaurentPolynomial fl = rng.psd_laurent(2, 3, 0.1);
  BoundarySamples f = BoundarySamples::sample(DiscSpec::unit(), 64,
                                              [&](Complex z) { return fl.eval(z); });
  const DirichletResult res = solve_dirichlet(f, 6);
  const MetricField field = MetricField::flat_sum({res.metric.h()});
  for (int p = 0; p < 50; ++p) {
    const Complex z =
        0.9 * std::sqrt(rng.uniform()) * std::polar(1.0, 2.0 * kPi * rng.uniform());
    const CurvatureSample cs = curvature_defect(field, z);
    CHECK(operator_norm(cs.defect_neg) <= 1e-8 * (1.0 + cs.scale));
  }
}

TEST_CASE("fejer fallback engages on rough data and reports its error") {
  // Data with slowly decaying Fourier tail truncated at a low degree loses
  // positivity under raw truncation; the solver must switch to Fejer.
  const auto rough = [](double t) {
    double v = 0.35;
    for (int m = 1; m <= 12; ++m) v += std::cos(m * t) / (m + 1.0);
    return std::max(v, 0.02);
  };
  const DirichletResult res = solve_dirichlet(scalar_samples(256, rough), 6, 1e-8);
  CHECK(res.fejer_smoothed);
  CHECK(res.truncation_error > 1e-3);  // reported honestly
  CHECK(res.factor_residual <= 1e-8);  // vs the truncated symbol
}

TEST_CASE("boundary accuracy improves with the truncation degree") {
  const auto rough = [](double t) {
    double v = 0.35;
    for (int m = 1; m <= 12; ++m) v += std::cos(m * t) / (m + 1.0);
    return std::max(v, 0.02);
  };
  BoundarySamples s = scalar_samples(256, rough);
  const DirichletResult coarse = solve_dirichlet(s, 6, 1e-8);
  const DirichletResult fine = solve_dirichlet(s, 24, 1e-8);
  CHECK(fine.truncation_error < 0.5 * coarse.truncation_error);
}

TEST_CASE("newton_schwarz fixed point at the identity") {
  BoundarySamples f = BoundarySamples::sample(
      DiscSpec::unit(), 32, [](Complex) { return CMatrix::Identity(2, 2); });
  const NewtonResult res = newton_schwarz_solve(f);
  CHECK(res.iterations == 0);
  CHECK(res.residual <= 1e-14);
  CHECK(operator_norm(res.metric.h().eval(Complex(0.3, 0.2)) -
                      CMatrix::Identity(2, 2)) <= 1e-12);
}

TEST_CASE("newton_schwarz agrees with solve_dirichlet on perturbative data") {
  const auto f = [](double t) { return 1.0 + 0.1 * std::cos(t); };
  BoundarySamples s = scalar_samples(64, f);
  const NewtonResult newt = newton_schwarz_solve(s, 1e-12);
  const DirichletResult direct = solve_dirichlet(s, 8, 1e-12);
  CHECK(newt.residual <= 1e-10);
  // Same flat metric up to one constant unitary.
  CHECK(unitary_gauge_distance(direct.metric.h(), newt.metric.h().trimmed(1e-9)) <= 1e-8);
}

TEST_CASE("newton_schwarz on a matrix perturbation of the identity") {
  BoundarySamples f = BoundarySamples::sample(DiscSpec::unit(), 64, [](Complex w) {
    CMatrix e = CMatrix::Zero(2, 2);
    e(0, 1) = w;
    return CMatrix(CMatrix::Identity(2, 2) + 0.1 * (e + e.adjoint()));
  });
  const NewtonResult res = newton_schwarz_solve(f, 1e-10);
  CHECK(res.residual <= 1e-10);
  CHECK(res.iterations <= 10);
}

TEST_CASE("newton_schwarz rejects data far from a constant") {
  const auto f = [](double t) { return 2.0 + 1.8 * std::cos(t); };
  CHECK_THROWS_AS(newton_schwarz_solve(scalar_samples(64, f)), ConvergenceError);
}

TEST_CASE("maximum principle: explicit pairs") {
  const auto unit_const = [](double v) {
    return FlatMetric(MatrixPolynomial::constant(CMatrix::Constant(1, 1, std::sqrt(v))),
                      DiscSpec::unit());
  };
  const auto grid = interior_grid(DiscSpec::unit());

  const CertReport trivial =
      compare_boundary_interior(unit_const(1.0), unit_const(0.5), grid);
  CHECK(trivial.pass);
  CHECK(trivial.worst_margin == doctest::Approx(0.5));

  // P = |1 + z/2|^2 dominates 1/4: the interior minimum is 1/4 at z = -1.
  MatrixPolynomial hp(1, {CMatrix::Constant(1, 1, 1.0), CMatrix::Constant(1, 1, 0.5)});
  const FlatMetric p(hp, DiscSpec::unit());
  const CertReport rep = compare_boundary_interior(p, unit_const(0.25), grid);
  CHECK(rep.pass);
  CHECK(rep.worst_margin >= -1e-12);

  // Hypothesis violation is a precondition error, not a certificate failure.
  CHECK_THROWS_AS(compare_boundary_interior(unit_const(0.5), unit_const(1.0), grid),
                  InputError);
}

TEST_CASE("maximum principle on generated flat pairs with a boundary gap") {
  Rng rng(404);
  const auto grid = interior_grid(DiscSpec::unit());
  for (int trial = 0; trial < 20; ++trial) {
    const int d = rng.uniform_int(1, 3);
    const MatrixPolynomial hp = rng.outer_poly(d, rng.uniform_int(1, 3));
    const MatrixPolynomial hq = rng.outer_poly(d, rng.uniform_int(1, 3));
    const FlatMetric p(hp, DiscSpec::unit());

    // Scale Q under P on the boundary; eigenvalue margins are the oracle.
    double ratio = 0.0;
    for (Complex z : circle_samples(DiscSpec::unit(), 64)) {
      const CMatrix pv = p.value(z);
      const CMatrix qv = hq.eval(z).adjoint() * hq.eval(z);
      ratio = std::max(ratio, lambda_max(inv_sqrt_psd(pv) * qv * inv_sqrt_psd(pv)));
    }
    const FlatMetric q(hq.scaled(std::sqrt(0.8 / ratio)), DiscSpec::unit());
    const CertReport rep = compare_boundary_interior(p, q, grid);
    CHECK(rep.pass);
    CHECK(rep.worst_margin >= -1e-9);
  }
}

TEST_CASE("unitary_gauge_distance closed forms") {
  Rng rng(405);
  MatrixPolynomial h1 = rng.poly(3, 3);
  h1.coeff(0) += 3.0 * CMatrix::Identity(3, 3);
  const CMatrix u = rng.unitary(3);
  const MatrixPolynomial h2 = h1.left_mul(u);
  CHECK(unitary_gauge_distance(h1, h2) <= 1e-12 * (1.0 + h1.coeff_scale()));

  const MatrixPolynomial h3 = h1.scaled(2.0);
  CHECK(unitary_gauge_distance(h1, h3) >= 3.0 - 1e-12);

  MatrixPolynomial sing(2, {CMatrix::Zero(2, 2), CMatrix::Identity(2, 2)});
  CHECK_THROWS_AS(unitary_gauge_distance(sing, sing), DegeneracyError);
}

TEST_CASE("boundary stability sandwich") {
  // (1 - eps) F <= F' <= (1 + eps) F on the boundary propagates inside, so
  // the metric moves by at most ~eps in relative norm (constant <= 2).
  Rng rng(406);
  const MatrixLaurentPolynomial fl = rng.psd_laurent(2, 3, 0.2);
  BoundarySamples f = BoundarySamples::sample(DiscSpec::unit(), 64,
                                              [&](Complex z) { return fl.eval(z); });
  const double eps = 0.01;
  BoundarySamples fp = BoundarySamples::sample(DiscSpec::unit(), 64, [&](Complex z) {
    return CMatrix((1.0 + eps * z.real()) * fl.eval(z));  // inside the sandwich
  });
  const DirichletResult a = solve_dirichlet(f, 8, 1e-11);
  const DirichletResult b = solve_dirichlet(fp, 9, 1e-11);
  double worst_c = 0.0;
  for (Complex z : interior_grid(DiscSpec::unit())) {
    const CMatrix pa = a.metric.value(z);
    const CMatrix pb = b.metric.value(z);
    const double rel = operator_norm(pb - pa) / (eps * (1.0 + operator_norm(pa)));
    worst_c = std::max(worst_c, rel);
  }
  CHECK(worst_c <= 2.0);
}

}  // TEST_SUITE

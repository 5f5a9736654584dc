// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <numbers>

#include "ncpot/gen.hpp"
#include "ncpot/meanvalue.hpp"

using namespace ncpot;

namespace {

constexpr double kPi = std::numbers::pi;

MatrixPolynomial scalar_const(double v) {
  return MatrixPolynomial::constant(CMatrix::Constant(1, 1, v));
}

MatrixPolynomial scalar_z() {
  return MatrixPolynomial(1, {CMatrix::Zero(1, 1), CMatrix::Identity(1, 1)});
}

// |1 + z|^2 as the flat single-term field (domain slightly enlarged so discs
// around 0 of radius up to 1 stay admissible).
MetricField abs_one_plus_z_sq() {
  return MetricField::flat_sum(
      {MatrixPolynomial(1, {CMatrix::Constant(1, 1, 1.0), CMatrix::Constant(1, 1, 1.0)})},
      DiscSpec(Complex(0, 0), 1.0));
}

double schur_closed_form(double r) { return (1.0 + r * r) - r * r / (1.0 + r * r); }

}  // namespace

TEST_SUITE("meanvalue") {

TEST_CASE("mean_block closed forms") {
  Rng rng(601);
  const CMatrix c = rng.psd(2);
  const MetricField cf = MetricField::constant(c);
  const DiscSpec disc(Complex(0.1, 0.2), 0.4);
  const MeanBlock mb = mean_block(cf, disc, 64);
  CHECK(operator_norm(mb.block.a().mat() - c) < 1e-13);
  CHECK(operator_norm(mb.block.b()) < 1e-13);
  CHECK(operator_norm(mb.block.c().mat() - 0.16 * c) < 1e-13);

  // Scalar |1+z|^2 on the circle of radius r about 0:
  // block = [[1 + r^2, i r^2], [-i r^2, r^2 (1 + r^2)]].
  for (double r : {0.3, 0.6}) {
    const MeanBlock b = mean_block(abs_one_plus_z_sq(), DiscSpec(Complex(0, 0), r), 64);
    CHECK(std::abs(b.block.a().mat()(0, 0) - Complex(1 + r * r, 0)) < 1e-13);
    CHECK(std::abs(b.block.b()(0, 0) - Complex(0, r * r)) < 1e-13);
    CHECK(std::abs(b.block.c().mat()(0, 0) - Complex(r * r * (1 + r * r), 0)) < 1e-13);
  }

  // |z|^2 is constant on circles about 0: block = [[r^2, 0], [0, r^4]].
  const MetricField zsq = MetricField::flat_sum({scalar_z()});
  const MeanBlock bz = mean_block(zsq, DiscSpec(Complex(0, 0), 0.5), 64);
  CHECK(std::abs(bz.block.a().mat()(0, 0) - 0.25) < 1e-15);
  CHECK(std::abs(bz.block.b()(0, 0)) < 1e-15);
  CHECK(std::abs(bz.block.c().mat()(0, 0) - 0.0625) < 1e-15);
}

TEST_CASE("schur_mean closed forms") {
  Rng rng(602);
  const CMatrix c = rng.psd(3) + 0.2 * CMatrix::Identity(3, 3);
  const SchurMean sc = schur_mean(MetricField::constant(c), DiscSpec(Complex(0, 0), 0.5), 64);
  CHECK(operator_norm(sc.value.mat() - c) <= 1e-10 * (1.0 + operator_norm(c)));

  for (double r : {0.2, 0.5, 0.9}) {
    const SchurMean s = schur_mean(abs_one_plus_z_sq(), DiscSpec(Complex(0, 0), r), 64);
    CHECK(s.value.mat()(0, 0).real() == doctest::Approx(schur_closed_form(r)).epsilon(1e-9));
    CHECK(s.t_diagnostic <= 1e-6);
  }

  // |z|^2 about 0: moments are (r^2, 0, 0), so the Schur mean is r^2 >= P(0) = 0.
  const MetricField zsq = MetricField::flat_sum({scalar_z()});
  const SchurMean sz = schur_mean(zsq, DiscSpec(Complex(0, 0), 0.4), 64);
  CHECK(sz.value.mat()(0, 0).real() == doctest::Approx(0.16).epsilon(1e-10));
}

TEST_CASE("certify_seminegative passes flat sums and catches dual fields") {
  Rng rng(603);
  const auto discs = default_disc_family(DiscSpec::unit(), 3);
  for (int trial = 0; trial < 10; ++trial) {
    const MetricField field = rng.flat_sum_field(rng.uniform_int(1, 3), 2, 3);
    const SemiNegReport rep = certify_seminegative(field, discs, 1e-9, 64);
    CHECK(rep.cert.pass);
    CHECK(rep.forms_agree);
  }

  const MetricField dual = MetricField::dual_flat_sum({scalar_const(1.0), scalar_z()});
  const SemiNegReport bad = certify_seminegative(dual, discs, 1e-9, 64);
  CHECK_FALSE(bad.cert.pass);
  CHECK(bad.forms_agree);
  CHECK(bad.cert.worst_margin < -1e-6);  // an honest witness, not roundoff
  CHECK(bad.cert.witness.radius > 0.0);

  // Constant fields sit exactly at the equality case.
  const MetricField cf = MetricField::constant(rng.psd(2));
  const SemiNegReport eq = certify_seminegative(cf, discs, 1e-9, 64);
  CHECK(eq.cert.pass);
  CHECK(std::abs(eq.cert.worst_margin) <= 1e-10);
}

TEST_CASE("monotonicity of the schur mean in the radius") {
  Rng rng(604);
  // Constant: equality chain.
  const MetricField cf = MetricField::constant(rng.psd(2) + CMatrix::Identity(2, 2));
  const std::vector<double> radii{0.2, 0.4, 0.6, 0.8};
  const CertReport ceq = monotonicity_check(cf, Complex(0, 0), radii, 1e-9, 64);
  CHECK(ceq.pass);
  CHECK(std::abs(ceq.worst_margin) <= 1e-10);

  // Scalar closed form increases strictly.
  const CertReport cs =
      monotonicity_check(abs_one_plus_z_sq(), Complex(0, 0), std::vector<double>{0.2, 0.4, 0.6},
                         1e-9, 64);
  CHECK(cs.pass);
  CHECK(cs.worst_margin ==
        doctest::Approx(schur_closed_form(0.4) - schur_closed_form(0.2)).epsilon(1e-6));

  // Random seminegative fields, 8 radii; recomputation at doubled quadrature
  // is the stability oracle.
  for (int trial = 0; trial < 5; ++trial) {
    const MetricField field = rng.flat_sum_field(2, 2, 3);
    std::vector<double> rr;
    for (int i = 1; i <= 8; ++i) rr.push_back(0.1 * i);
    const CertReport a = monotonicity_check(field, Complex(0.05, -0.1), rr, 1e-9, 64);
    const CertReport b = monotonicity_check(field, Complex(0.05, -0.1), rr, 1e-9, 128);
    CHECK(a.pass);
    CHECK(b.pass);
    CHECK(std::abs(a.worst_margin - b.worst_margin) <= 1e-9);
  }

  CHECK_THROWS_AS(monotonicity_check(cf, Complex(0, 0), std::vector<double>{0.4, 0.2},
                                     1e-9, 64),
                  InputError);
}

TEST_CASE("three circles convexity") {
  Rng rng(605);
  const MetricField cf = MetricField::constant(rng.psd(2) + CMatrix::Identity(2, 2));
  const std::vector<double> radii{0.2, 0.4, 0.8};
  const CertReport ceq = three_circles_convexity(cf, Complex(0, 0), radii, 1e-9, 64);
  CHECK(ceq.pass);
  CHECK(std::abs(ceq.worst_margin) <= 1e-10);

  // Scalar closed form plugged into the midpoint inequality.
  const CertReport cs =
      three_circles_convexity(abs_one_plus_z_sq(), Complex(0, 0), radii, 1e-9, 64);
  CHECK(cs.pass);
  const double expect =
      0.5 * (schur_closed_form(0.2) + schur_closed_form(0.8)) - schur_closed_form(0.4);
  CHECK(cs.worst_margin == doctest::Approx(expect).epsilon(1e-6));

  for (int trial = 0; trial < 5; ++trial) {
    const MetricField field = rng.flat_sum_field(2, 2, 3);
    std::vector<double> rr{0.1, 0.2, 0.4, 0.8};
    CHECK(three_circles_convexity(field, Complex(0, 0), rr, 1e-9, 64).pass);
  }

  CHECK_THROWS_AS(three_circles_convexity(cf, Complex(0, 0),
                                          std::vector<double>{0.1, 0.2, 0.3}, 1e-9, 64),
                  InputError);
}

TEST_CASE("gauge_mean closed forms") {
  Rng rng(606);
  // Constant field: T = C via H = C^{-1/2}.
  const CMatrix c = rng.psd(2) + 0.5 * CMatrix::Identity(2, 2);
  const GaugeMean gc = gauge_mean(MetricField::constant(c), DiscSpec(Complex(0.1, 0), 0.4));
  CHECK(operator_norm(gc.value.mat() - c) <= 1e-7 * (1.0 + operator_norm(c)));

  // Flat fields attain T = P(z0) exactly (H = G^{-1} is optimal).
  for (int trial = 0; trial < 5; ++trial) {
    const int d = rng.uniform_int(1, 3);
    const MetricField flat = MetricField::flat_sum({rng.outer_poly(d, 2)});
    const DiscSpec disc(Complex(0.15, -0.1), 0.5);
    const GaugeMean gm = gauge_mean(flat, disc);
    const CMatrix p0 = flat.value(disc.center);
    CHECK(operator_norm(gm.value.mat() - p0) <= 1e-6 * (1.0 + operator_norm(p0)));
  }
}

TEST_CASE("gauge covariance of the gauge mean") {
  Rng rng(607);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = rng.uniform_int(1, 2);
    const MetricField field = rng.flat_sum_field(d, 2, 2);
    const DiscSpec disc(Complex(0.1, 0.05), 0.45);
    MatrixPolynomial k = rng.outer_poly(d, 1);
    const GaugeMean base = gauge_mean(field, disc);
    const GaugeMean gauged = gauge_mean(field.gauged(k), disc);
    // The gauge acts in the field's own coordinates: T transforms by K(w0)
    // with w0 the disc center in the field domain's local coordinate.
    const CMatrix kz = k.eval(field.domain().to_local(disc.center));
    const CMatrix expect = kz.adjoint() * base.value.mat() * kz;
    CHECK(operator_norm(gauged.value.mat() - expect) <=
          1e-7 * (1.0 + operator_norm(expect)));
  }
}

TEST_CASE("certify_semipositive: dual fields pass, strict flat sums fail") {
  Rng rng(608);
  std::vector<DiscSpec> discs{DiscSpec(Complex(0, 0), 0.3), DiscSpec(Complex(0.2, 0.1), 0.25),
                              DiscSpec(Complex(-0.3, 0.2), 0.2)};
  for (int trial = 0; trial < 5; ++trial) {
    const MetricField dual = rng.dual_field(rng.uniform_int(1, 2), 2, 2);
    const CertReport rep = certify_semipositive(dual, discs, 1e-8);
    CHECK(rep.pass);
    // Oracle: the defect sign at the disc centers.
    for (const DiscSpec& disc : discs) {
      const CurvatureSample s = curvature_defect(dual, disc.center);
      CHECK(s.margin_pos >= -1e-9 * (1.0 + s.scale));
    }
  }

  // Strictly seminegative at 0: T exceeds P(0) on small discs.
  const MetricField flat_sum = MetricField::flat_sum({scalar_const(1.0), scalar_z()});
  const CertReport bad = certify_semipositive(
      flat_sum, std::vector<DiscSpec>{DiscSpec(Complex(0, 0), 0.2), DiscSpec(Complex(0, 0), 0.4)},
      1e-8);
  CHECK_FALSE(bad.pass);
  CHECK(bad.worst_margin < -1e-4);

  // Flat single-H fields: equality case.
  const MetricField flat = MetricField::flat_sum({rng.outer_poly(2, 2)});
  const CertReport eq = certify_semipositive(flat, discs, 1e-6);
  CHECK(eq.pass);
  CHECK(std::abs(eq.worst_margin) <= 1e-6);
}

TEST_CASE("gauge mean is the minimum over competitor gauges") {
  Rng rng(609);
  const MetricField field = rng.dual_field(2, 2, 2);
  const DiscSpec disc(Complex(0.1, -0.05), 0.35);
  const GaugeMean gm = gauge_mean(field, disc);
  for (int comp = 0; comp < 20; ++comp) {
    const MatrixPolynomial gauge = rng.outer_poly(2, rng.uniform_int(0, 2));
    const HermitianMatrix val = competitor_gauge_value(field, disc, gauge, 256);
    // No competitor beats the optimal boundary gauge.
    CHECK(lambda_min(val.mat() - gm.value.mat()) >=
          -1e-8 * (1.0 + operator_norm(val.mat())));
  }
}

TEST_CASE("oracle failure propagates to a refined certificate family") {
  // A field failing the mean inequality for some section on some disc must
  // also fail the certificate on a refinement of that disc family.
  const MetricField dual = MetricField::dual_flat_sum({scalar_const(1.0), scalar_z()});
  const VectorPolynomial phi(1, {CVector::Ones(1)});
  const DiscSpec bad_disc(Complex(0, 0), 0.5);
  const CertReport oracle =
      subharmonicity_test(dual, phi, std::vector<DiscSpec>{bad_disc}, 1e-9);
  REQUIRE_FALSE(oracle.pass);

  std::vector<DiscSpec> refined{oracle.witness};
  for (double frac : {0.5, 0.25})
    refined.emplace_back(oracle.witness.center, frac * oracle.witness.radius);
  const SemiNegReport rep = certify_seminegative(dual, refined, 1e-9, 64);
  CHECK_FALSE(rep.cert.pass);
}

TEST_CASE("certificates are stable under quadrature refinement") {
  Rng rng(610);
  const MetricField field = rng.flat_sum_field(2, 2, 3);
  const auto discs = default_disc_family(DiscSpec::unit(), 2);
  const SemiNegReport a = certify_seminegative(field, discs, 1e-9, 128);
  const SemiNegReport b = certify_seminegative(field, discs, 1e-9, 256);
  CHECK(a.cert.pass == b.cert.pass);
  CHECK(std::abs(a.cert.worst_margin - b.cert.worst_margin) <= 1e-9);
}

TEST_CASE("disc family geometry stays inside the domain") {
  for (const DiscSpec& domain :
       {DiscSpec::unit(), DiscSpec(Complex(0.3, -1.2), 2.5)}) {
    const auto discs = default_disc_family(domain);
    CHECK(discs.size() == 75);
    for (const DiscSpec& d : discs) CHECK(domain.contains_disc(d));
  }
}

}  // TEST_SUITE

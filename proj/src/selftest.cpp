// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include "ncpot/selftest.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "ncpot/gen.hpp"
#include "ncpot/harnack.hpp"
#include "ncpot/meanvalue.hpp"

namespace ncpot {

namespace {

struct Runner {
  std::ostream& out;
  bool all_ok = true;

  void run(const char* name, const std::function<bool()>& body) {
    bool ok = false;
    std::string detail;
    try {
      ok = body();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    out << (ok ? "ok   " : "FAIL ") << name;
    if (!ok && !detail.empty()) out << "  (" << detail << ")";
    out << "\n";
    all_ok = all_ok && ok;
  }
};

}  // namespace

bool run_selftest(std::uint64_t seed, std::ostream& out) {
  Runner r{out};

  r.run("linalg.schur_block_equivalence", [&] {
    Rng rng(seed + 1);
    for (int trial = 0; trial < 50; ++trial) {
      const int d = rng.uniform_int(1, 4);
      const CMatrix a = rng.hermitian(d);
      const CMatrix b = rng.gaussian(d);
      const CMatrix c = rng.psd(d);
      BlockMatrix2x2 blk(HermitianMatrix::symmetrized(a), b,
                         HermitianMatrix::symmetrized(c));
      const bool block_psd = block_psd_test(blk, 1e-9);
      bool schur_psd = true;
      for (double t : {1e-1, 1e-3, 1e-5, 1e-7, 1e-9}) {
        const auto sc = schur_complement(HermitianMatrix::symmetrized(a), b,
                                         PsdMatrix::from(HermitianMatrix::symmetrized(c)), t);
        const double scale = 1.0 + operator_norm(sc.mat());
        if (lambda_min(sc.mat()) < -1e-9 * scale) schur_psd = false;
      }
      if (block_psd != schur_psd) {
        // Dead band: margins straddling zero at roundoff size are compatible.
        const double m = block_psd_margin(blk);
        if (std::abs(m) > 1e-8) return false;
      }
    }
    return true;
  });

  r.run("circle.quadrature_band_limited_exact", [&] {
    Rng rng(seed + 2);
    const MatrixLaurentPolynomial f = rng.psd_laurent(3, 5, 0.1);
    BoundarySamples s = BoundarySamples::sample(DiscSpec::unit(), 64,
                                                [&](Complex z) { return f.eval(z); });
    const MatrixLaurentPolynomial back = fourier_coefficients(s, 5);
    for (int n = -5; n <= 5; ++n)
      if ((back.coeff(n) - f.coeff(n)).norm() > 1e-12 * (1.0 + f.coeff_scale()))
        return false;
    return true;
  });

  r.run("specfact.round_trip_both_methods", [&] {
    Rng rng(seed + 3);
    for (int trial = 0; trial < 5; ++trial) {
      const int d = rng.uniform_int(1, 3);
      const MatrixLaurentPolynomial f = rng.psd_laurent(d, rng.uniform_int(1, 4), 0.1);
      const Factorization fb = factor_bauer(f, 1e-10);
      const Factorization fw = factor_wilson(f, 1e-10);
      if (!fb.report.pass(1e-8) || !fw.report.pass(1e-8)) return false;
      if (unitary_gauge_distance(fb.h, fw.h) > 1e-6) return false;
    }
    return true;
  });

  r.run("dirichlet.scalar_closed_form", [&] {
    BoundarySamples f = BoundarySamples::sample(DiscSpec::unit(), 64, [](Complex z) {
      CMatrix m(1, 1);
      m(0, 0) = 1.25 + z.real();
      return m;
    });
    const DirichletResult res = solve_dirichlet(f, 8, 1e-10);
    for (double x : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
      const Complex z(x, 0.12);
      if (!DiscSpec::unit().contains(z)) continue;
      const double expect = std::norm(1.0 + z / 2.0);
      if (std::abs(res.metric.value(z)(0, 0).real() - expect) > 1e-8) return false;
    }
    return true;
  });

  r.run("curvature.flat_sum_seminegative", [&] {
    Rng rng(seed + 4);
    for (int trial = 0; trial < 5; ++trial) {
      const MetricField field = rng.flat_sum_field(rng.uniform_int(1, 3), 2, 3);
      for (int p = 0; p < 10; ++p) {
        const Complex z = 0.8 * rng.uniform() *
                          std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        const CurvatureSample cs = curvature_defect(field, z);
        if (cs.margin_neg < -1e-9 * (1.0 + cs.scale)) return false;
      }
    }
    return true;
  });

  r.run("meanvalue.certificates_agree", [&] {
    Rng rng(seed + 5);
    const MetricField field = rng.flat_sum_field(2, 2, 3);
    const auto discs = default_disc_family(field.domain(), 3);
    const SemiNegReport rep = certify_seminegative(field, discs, 1e-9, 64);
    if (!rep.cert.pass || !rep.forms_agree) return false;
    const MetricField dual = MetricField::dual_flat_sum(
        {MatrixPolynomial::constant(CMatrix::Identity(1, 1)),
         MatrixPolynomial(1, {CMatrix::Zero(1, 1), CMatrix::Identity(1, 1)})});
    const SemiNegReport bad = certify_seminegative(dual, discs, 1e-9, 64);
    return !bad.cert.pass;
  });

  r.run("harnack.exact_identities", [&] {
    for (int k = 1; k <= 8; ++k) {
      const ProductIdentity pi = product_identity_check(k);
      if (!pi.equal || !pi.below_2n) return false;
    }
    const Resolvent rv = resolvent_vector(2, Complex(2.0, 0.0), 8);
    return rv.norm_sq_exact && *rv.norm_sq_exact == BigRational(25);
  });

  return r.all_ok;
}

}  // namespace ncpot

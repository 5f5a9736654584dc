// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include "ncpot/meanvalue.hpp"

#include <cmath>

namespace ncpot {

namespace {

BoundarySamples sample_field(const MetricField& field, const DiscSpec& disc, int n) {
  if (!field.domain().contains_disc(disc, 1e-9))
    throw InputError("meanvalue: disc leaves the field domain");
  return BoundarySamples::sample(disc, n, [&](Complex z) { return field.value(z); });
}

// Worst eigenvalue margin of the Schur form (4.3)-style test at the default
// decreasing t grid, relative to nothing (raw lambda_min).
double schur_form_margin(const CircleMoments& mom, const CMatrix& p_center) {
  const HermitianMatrix a = HermitianMatrix::symmetrized(mom.m0);
  const PsdMatrix c = PsdMatrix::from(a, 1e-6);
  const double c_scale = 1.0 + lambda_max(c.mat());
  double worst = std::numeric_limits<double>::infinity();
  for (double t : {1e-3, 1e-5, 1e-7, 1e-9}) {
    const HermitianMatrix sc = schur_complement(a, mom.mplus, c, t * c_scale);
    worst = std::min(worst, lambda_min(sc.mat() - p_center));
  }
  return worst;
}

}  // namespace

MeanBlock mean_block(const BoundarySamples& samples) {
  const CircleMoments mom = average_moments(samples);
  const double r = samples.disc().radius;
  return {samples.disc(),
          BlockMatrix2x2(HermitianMatrix::symmetrized(mom.m0), r * mom.mplus,
                         HermitianMatrix::symmetrized(r * r * mom.m0))};
}

MeanBlock mean_block(const MetricField& field, const DiscSpec& disc, int n) {
  return mean_block(sample_field(field, disc, n));
}

SchurMean schur_mean(const BoundarySamples& samples) {
  const CircleMoments mom = average_moments(samples);
  const HermitianMatrix a = HermitianMatrix::symmetrized(mom.m0);
  const PsdMatrix c = PsdMatrix::from(a, 1e-6);
  const SchurLimit lim = schur_complement_limit(a, mom.mplus, c);
  return {samples.disc(), lim.value, lim.spread};
}

SchurMean schur_mean(const MetricField& field, const DiscSpec& disc, int n) {
  return schur_mean(sample_field(field, disc, n));
}

SemiNegReport certify_seminegative(const MetricField& field,
                                   std::span<const DiscSpec> discs, double tol,
                                   int n) {
  SemiNegReport rep;
  rep.worst_block = std::numeric_limits<double>::infinity();
  rep.worst_schur = std::numeric_limits<double>::infinity();
  rep.cert.worst_margin = std::numeric_limits<double>::infinity();

  for (const DiscSpec& disc : discs) {
    const BoundarySamples ps = sample_field(field, disc, n);
    const CMatrix p_center = field.value(disc.center);
    const int d = field.dim();

    const MeanBlock mb = mean_block(ps);
    CMatrix shifted = mb.block.assembled();
    shifted.topLeftCorner(d, d) -= p_center;
    const double block_margin = lambda_min(shifted);

    const double schur_margin = schur_form_margin(average_moments(ps), p_center);

    const double margin = std::min(block_margin, schur_margin);
    rep.cert.items.push_back({disc, margin});
    rep.worst_block = std::min(rep.worst_block, block_margin);
    rep.worst_schur = std::min(rep.worst_schur, schur_margin);
    if (margin < rep.cert.worst_margin) {
      rep.cert.worst_margin = margin;
      rep.cert.witness = disc;
      rep.cert.witness_point = disc.center;
    }
    // The two forms are equivalent tests; compare verdicts with a dead band.
    const bool block_pass = block_margin >= -tol;
    const bool schur_pass = schur_margin >= -tol;
    if (block_pass != schur_pass &&
        std::min(std::abs(block_margin), std::abs(schur_margin)) > tol)
      rep.forms_agree = false;
  }
  rep.cert.pass = rep.cert.worst_margin >= -tol;
  if (!rep.forms_agree) rep.cert.note = "block and Schur forms disagree";
  return rep;
}

CertReport monotonicity_check(const MetricField& field, Complex z0,
                              std::span<const double> radii, double tol, int n) {
  if (radii.size() < 2) throw InputError("monotonicity_check: need >= 2 radii");
  CertReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  CMatrix prev;
  double prev_r = 0.0;
  for (double r : radii) {
    if (r <= prev_r)
      throw InputError("monotonicity_check: radii must be strictly ascending");
    const DiscSpec disc(z0, r);
    const CMatrix cur = schur_mean(field, disc, n).value.mat();
    if (prev.size() != 0) {
      const double m = lambda_min(cur - prev);
      rep.items.push_back({disc, m});
      if (m < rep.worst_margin) {
        rep.worst_margin = m;
        rep.witness = disc;
        rep.witness_point = z0;
      }
    }
    prev = cur;
    prev_r = r;
  }
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

CertReport three_circles_convexity(const MetricField& field, Complex z0,
                                   std::span<const double> radii, double tol, int n) {
  if (radii.size() < 3) throw InputError("three_circles_convexity: need >= 3 radii");
  for (size_t j = 0; j + 2 < radii.size(); ++j) {
    const double mid = std::sqrt(radii[j] * radii[j + 2]);
    if (std::abs(mid - radii[j + 1]) > 1e-9 * radii[j + 1])
      throw InputError("three_circles_convexity: radii must be geometric");
  }
  std::vector<CMatrix> values;
  values.reserve(radii.size());
  for (double r : radii)
    values.push_back(schur_mean(field, DiscSpec(z0, r), n).value.mat());

  CertReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j + 2 < radii.size(); ++j) {
    const CMatrix gap = 0.5 * (values[j] + values[j + 2]) - values[j + 1];
    const double m = lambda_min(gap);
    const DiscSpec disc(z0, radii[j + 1]);
    rep.items.push_back({disc, m});
    if (m < rep.worst_margin) {
      rep.worst_margin = m;
      rep.witness = disc;
      rep.witness_point = z0;
    }
  }
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

GaugeMean gauge_mean(const BoundarySamples& samples, double tol) {
  const DualFactor df = dual_boundary_factor(samples, tol);
  if (df.residual > tol)
    throw DegeneracyError("gauge_mean: unreliable certificate, factor residual " +
                          std::to_string(df.residual));
  const CMatrix h0 = df.h.eval(Complex(0.0, 0.0));
  const CMatrix gram = h0 * h0.adjoint();
  Eigen::PartialPivLU<CMatrix> lu(gram);
  CMatrix value = lu.inverse();
  value = symmetrize(value);
  return {samples.disc(), HermitianMatrix::symmetrized(value), df.residual};
}

GaugeMean gauge_mean(const MetricField& field, const DiscSpec& disc, double tol,
                     int n) {
  return gauge_mean(sample_field(field, disc, n), tol);
}

CertReport certify_semipositive(const MetricField& field,
                                std::span<const DiscSpec> discs, double tol, int n) {
  CertReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (const DiscSpec& disc : discs) {
    const GaugeMean gm = gauge_mean(field, disc, tol, n);
    const double m = lambda_min(field.value(disc.center) - gm.value.mat());
    rep.items.push_back({disc, m});
    if (m < rep.worst_margin) {
      rep.worst_margin = m;
      rep.witness = disc;
      rep.witness_point = disc.center;
    }
  }
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

HermitianMatrix competitor_gauge_value(const MetricField& field, const DiscSpec& disc,
                                       const MatrixPolynomial& gauge, int n) {
  if (gauge.dim() != field.dim())
    throw InputError("competitor_gauge_value: gauge dimension mismatch");
  // Gauge acts in the disc's local coordinate; sample H* P H on the circle.
  BoundarySamples gs = BoundarySamples::sample(disc, n, [&](Complex z) {
    const CMatrix hv = gauge.eval(disc.to_local(z));
    return CMatrix(hv.adjoint() * field.value(z) * hv);
  });
  const CMatrix h0 = gauge.eval(Complex(0.0, 0.0));
  if (min_singular(h0) <= 1e-12 * (1.0 + operator_norm(h0)))
    throw DegeneracyError("competitor_gauge_value: gauge singular at the center");
  const CMatrix h0_inv = h0.inverse();
  const CMatrix s = schur_mean(gs).value.mat();
  return HermitianMatrix::symmetrized(h0_inv.adjoint() * s * h0_inv);
}

std::vector<DiscSpec> default_disc_family(const DiscSpec& domain, int grid,
                                          double fill) {
  std::vector<DiscSpec> discs;
  const double extent = 0.55 * fill * domain.radius;
  for (int ix = 0; ix < grid; ++ix) {
    for (int iy = 0; iy < grid; ++iy) {
      const double u = grid == 1 ? 0.0 : -1.0 + 2.0 * ix / double(grid - 1);
      const double v = grid == 1 ? 0.0 : -1.0 + 2.0 * iy / double(grid - 1);
      const Complex c = domain.center + extent * Complex(u, v);
      const double head = fill * (domain.radius - std::abs(c - domain.center));
      for (double frac : {0.3, 0.6, 1.0}) discs.emplace_back(c, frac * head);
    }
  }
  return discs;
}

}  // namespace ncpot

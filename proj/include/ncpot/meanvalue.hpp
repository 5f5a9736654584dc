// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ncpot/curvature.hpp"
#include "ncpot/report.hpp"
#include "ncpot/specfact.hpp"

namespace ncpot {

// Circle-mean block  [[ m0, r m+ ], [ r m-, r^2 m0 ]]  of a sampled metric.
struct MeanBlock {
  DiscSpec disc;
  BlockMatrix2x2 block;
};

// Schur-complement circle mean S(P, z0, r) = m0 - m+ m0^{-1} m- computed
// through the regularized t->0 limit.
struct SchurMean {
  DiscSpec disc;
  HermitianMatrix value;
  double t_diagnostic = 0.0;  // spread of the t-extrapolation
};

// Gauge-covariant mean T(P, z0, r) = H(z0)^{-*} H(z0)^{-1} for the optimal
// boundary gauge H with H* P H = Id on the circle.
struct GaugeMean {
  DiscSpec disc;
  HermitianMatrix value;
  double factor_residual = 0.0;
};

MeanBlock mean_block(const BoundarySamples& samples);
MeanBlock mean_block(const MetricField& field, const DiscSpec& disc,
                     int n = defaults::quadrature_min);

SchurMean schur_mean(const BoundarySamples& samples);
SchurMean schur_mean(const MetricField& field, const DiscSpec& disc,
                     int n = defaults::quadrature_min);

// Seminegative-curvature certificate: for every disc, both the block form
//   mean block  >=  diag(P(z0), 0)
// and the Schur form at the decreasing t grid
//   m0 - m+ (t Id + m0)^{-1} m-  >=  P(z0)
// must hold within tol.  Pass/fail of the two forms is compared with a tol
// dead band; failure is a negative certificate, not an error.
struct SemiNegReport {
  CertReport cert;          // combined verdict (worst of both forms)
  double worst_block = 0.0;
  double worst_schur = 0.0;
  bool forms_agree = true;  // identical verdicts up to the dead band
};
SemiNegReport certify_seminegative(const MetricField& field,
                                   std::span<const DiscSpec> discs, double tol = 1e-9,
                                   int n = defaults::quadrature_min);

// S(P, z0, r) is nondecreasing in r on seminegative fields.
CertReport monotonicity_check(const MetricField& field, Complex z0,
                              std::span<const double> radii_ascending,
                              double tol = 1e-9, int n = defaults::quadrature_min);

// Midpoint convexity of S(P, z0, e^t) in t over consecutive geometric triples.
CertReport three_circles_convexity(const MetricField& field, Complex z0,
                                   std::span<const double> radii_geometric,
                                   double tol = 1e-9,
                                   int n = defaults::quadrature_min);

GaugeMean gauge_mean(const MetricField& field, const DiscSpec& disc,
                     double tol = 1e-8, int n = defaults::quadrature_min);
GaugeMean gauge_mean(const BoundarySamples& samples, double tol = 1e-8);

// Semipositive-curvature certificate: T(P, z0, r) <= P(z0) for every disc.
CertReport certify_semipositive(const MetricField& field,
                                std::span<const DiscSpec> discs, double tol = 1e-8,
                                int n = defaults::quadrature_min);

// Value of one competitor gauge in the minimum defining T:
//   H(z0)^{-*} S(H* P H, z0, r) H(z0)^{-1};
// never below gauge_mean(...) - tol by optimality.
HermitianMatrix competitor_gauge_value(const MetricField& field, const DiscSpec& disc,
                                       const MatrixPolynomial& gauge,
                                       int n = defaults::quadrature_min);

// Deterministic disc family: centers on a square grid, three radii per
// center, filling `fill` of the domain.
std::vector<DiscSpec> default_disc_family(const DiscSpec& domain, int grid = 5,
                                          double fill = 0.9);

}  // namespace ncpot

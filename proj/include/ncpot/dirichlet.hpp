// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ncpot/report.hpp"
#include "ncpot/specfact.hpp"

namespace ncpot {

// Zero-curvature metric P(z) = H(w)* H(w) on a disc, w = (z - z0)/r the
// local coordinate; h is outer-normalized and invertible on the closed disc.
class FlatMetric {
 public:
  FlatMetric() = default;
  FlatMetric(MatrixPolynomial h, DiscSpec domain);

  const MatrixPolynomial& h() const { return h_; }
  const DiscSpec& domain() const { return domain_; }
  int dim() const { return h_.dim(); }

  CMatrix factor_at(Complex z) const;  // H at the local coordinate of z
  CMatrix value(Complex z) const;      // P(z), hermitian

 private:
  MatrixPolynomial h_;
  DiscSpec domain_;
};

// P(z) as a certified PSD matrix; z must lie in the closed domain disc.
PsdMatrix evaluate_metric(const FlatMetric& fm, Complex z);

struct DirichletResult {
  FlatMetric metric;
  double factor_residual = 0.0;    // vs the truncated boundary symbol
  double truncation_error = 0.0;   // || F_N - F ||_inf over the samples
  bool fejer_smoothed = false;     // Cesaro weights engaged to keep positivity
  FactorizationReport report;
};

// Flat Dirichlet solver: truncate the boundary data to a degree-N symbol,
// spectral-factor it, outer-normalize.  Raw truncation is used when it keeps
// the strict-positivity floor (exact on band-limited data); otherwise the
// Fejer truncation restores positivity and its error is reported.
DirichletResult solve_dirichlet(const BoundarySamples& f,
                                int trunc_degree = defaults::dirichlet_degree,
                                double tol = defaults::factor_tol,
                                FactorMethod method = FactorMethod::bauer);

struct NewtonResult {
  FlatMetric metric;
  double residual = 0.0;
  int iterations = 0;
};

// Perturbative solver for data near a constant: Newton iteration on
// h -> (h* + h + h* h)|boundary - (f~ - Id), each step inverted through the
// Schwarz integral; valid when the normalized data F(1)^{-1/2} F F(1)^{-1/2}
// is within `region` of Id in sup norm.
NewtonResult newton_schwarz_solve(const BoundarySamples& f,
                                  double tol = defaults::factor_tol,
                                  int max_iters = 25,
                                  double region = defaults::newton_region);

// Operator maximum principle check: boundary ordering P >= Q (verified on the
// boundary grid, a precondition) must persist at the interior grid points.
CertReport compare_boundary_interior(const FlatMetric& p, const FlatMetric& q,
                                     std::span<const Complex> interior_grid,
                                     double tol = defaults::psd_tol,
                                     int boundary_n = defaults::quadrature_min);

// max(||U*U - Id||, sup-grid ||h2 - U h1||) for U = h2(0) h1(0)^{-1}; near 0
// iff h1, h2 are the same flat factor in different unitary gauges.
double unitary_gauge_distance(const MatrixPolynomial& h1, const MatrixPolynomial& h2,
                              int grid_n = defaults::quadrature_min);

// Default interior evaluation grid for certificates on a disc.
std::vector<Complex> interior_grid(const DiscSpec& domain, int rings = 5,
                                   int spokes = 16, double fill = 0.9);

}  // namespace ncpot

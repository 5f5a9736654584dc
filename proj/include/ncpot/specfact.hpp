// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ncpot/circle.hpp"
#include "ncpot/poly.hpp"

namespace ncpot {

enum class FactorMethod { bauer, wilson };

// Diagnostics of one spectral factorization run.  A factor is accepted when
// the circle residual is within tolerance, det H has winding zero on the
// boundary (no zeros in the closed disc), and the constant term is hermitian.
struct FactorizationReport {
  double residual = 0.0;         // sup-grid ||H*H - F||_2 / (1 + ||F||)
  int winding = -1;              // argument-principle count of det H
  double h0_hermiticity = 0.0;   // ||H0 - H0*|| / (1 + ||H0||)
  FactorMethod method = FactorMethod::bauer;
  int blocks_used = 0;           // Bauer: Toeplitz section rows
  int iterations = 0;            // Wilson: Newton steps
  double trailing_mass = 0.0;    // coefficient mass beyond degree N
  double min_boundary_sigma = 0.0;
  double lift = 0.0;             // eps of any +eps*Id restart applied

  bool pass(double tol = defaults::factor_tol) const {
    return residual <= tol && winding == 0 && h0_hermiticity <= 1e-10;
  }
};

struct Factorization {
  MatrixPolynomial h;
  FactorizationReport report;
};

// Strict-positivity floor (absolute) used by the factorizers for a symbol of
// the given scale.
inline double margin_floor(double scale) {
  return defaults::margin_floor_factor * scale;
}

// min over a power-of-two circle grid of lambda_min(f(w)), and the matching
// max operator norm.
struct CircleRange {
  double margin = 0.0;
  double scale = 0.0;
};
CircleRange circle_range(const MatrixLaurentPolynomial& f, int n_grid);

// f + eps Id with eps chosen so the circle margin reaches target (no-op when
// already above it).  Returns the lift applied.
double lift_to_margin(MatrixLaurentPolynomial& f, double target, int n_grid);

// Matrix Fejer-Riesz factorization of a Laurent polynomial strictly positive
// on the unit circle: F = H*H with H a degree-N matrix polynomial invertible
// on the closed disc, outer-normalized (H(0) hermitian PSD).  Dispatches to
// the Bauer or Wilson kernel and validates the result on an 8x-Nyquist grid.
Factorization fejer_riesz_factor(const MatrixLaurentPolynomial& f,
                                 double tol = defaults::factor_tol,
                                 FactorMethod method = FactorMethod::bauer);

// Replace H by U H with U = (H(0)* H(0))^{1/2} H(0)^{-1}, making the constant
// term hermitian PSD.  U is unitary for invertible H(0).
MatrixPolynomial normalize_factor(const MatrixPolynomial& h);

// Bauer method: block Cholesky factorization of growing banded block-Toeplitz
// sections; the trailing block row converges linearly to the outer factor.
Factorization factor_bauer(const MatrixLaurentPolynomial& f,
                           double tol = defaults::factor_tol, int max_blocks = 16384);

// Wilson method: Newton iteration H <- G H with
// G = P_+[H^{-*} F H^{-1} + Id] (analytic projection, zero mode halved),
// realized on an FFT sample grid; quadratic convergence near the factor.
Factorization factor_wilson(const MatrixLaurentPolynomial& f,
                            double tol = defaults::factor_tol, int max_iters = 60);

// Holomorphic H with H* P H = Id on the sampled circle, via the identity
// (P^{-1})^T = K*K, H = K^T.  The truncation degree grows adaptively until
// the residual passes.
struct DualFactor {
  MatrixPolynomial h;
  double residual = 0.0;  // sup-grid ||H* P H - Id||_2
  int degree = 0;
};
DualFactor dual_boundary_factor(const BoundarySamples& p,
                                double tol = 1e-8);

}  // namespace ncpot

// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ncpot/linalg.hpp"
#include "ncpot/poly.hpp"
#include "ncpot/types.hpp"

namespace ncpot {

// Closed disc D_r(z0); r > 0.
struct DiscSpec {
  Complex center{0.0, 0.0};
  double radius = 1.0;

  DiscSpec() = default;
  DiscSpec(Complex z0, double r);

  static DiscSpec unit() { return DiscSpec(Complex(0, 0), 1.0); }

  // |z - center| <= radius * (1 + slack)
  bool contains(Complex z, double slack = 1e-12) const;
  // The closed disc other lies inside this one (with relative slack).
  bool contains_disc(const DiscSpec& other, double slack = 1e-12) const;
  // Local coordinate w = (z - center) / radius and its inverse.
  Complex to_local(Complex z) const { return (z - center) / radius; }
  Complex from_local(Complex w) const { return center + radius * w; }
};

// Hermitian matrix samples at z_j = z0 + r e^{2 pi i j / n}; n a power of two.
class BoundarySamples {
 public:
  BoundarySamples() = default;
  // Validates n >= 4 power of two and hermitian values (canonicalized).
  static BoundarySamples make(const DiscSpec& disc, std::vector<CMatrix> values);
  // Sample a matrix-valued function of z on the disc circle.
  static BoundarySamples sample(const DiscSpec& disc, int n,
                                const std::function<CMatrix(Complex)>& f);

  const DiscSpec& disc() const { return disc_; }
  int n() const { return static_cast<int>(values_.size()); }
  int dim() const { return dim_; }
  const std::vector<CMatrix>& values() const { return values_; }
  const CMatrix& value(int j) const { return values_.at(j); }
  Complex point(int j) const;        // z_j in global coordinates
  Complex local_point(int j) const;  // w_j = e^{2 pi i j / n}

  // min over samples of lambda_min, and max of the operator norm.
  double psd_margin() const;
  double scale() const;

 private:
  DiscSpec disc_;
  int dim_ = 0;
  std::vector<CMatrix> values_;
};

// The three normalized circle averages of a sampled metric.
struct CircleMoments {
  CMatrix m0;      // (1/2 pi r) Int P |dz|
  CMatrix mplus;   // (1/2 pi r) Int P dz
  CMatrix mminus;  // (1/2 pi r) Int P dz-bar  ( = mplus^* for hermitian data)
};

std::vector<Complex> circle_samples(const DiscSpec& disc, int n);

// Equal-weight (trapezoidal) quadrature of the three averages; spectrally
// accurate for band-limited data.
CircleMoments average_moments(const BoundarySamples& samples);

// Laurent coefficients F_n = (1/n) sum_j P_j e^{-i n t_j} in the local
// coordinate w = (z - z0)/r; exact for band-limited data. Requires 2N+1 <= n.
MatrixLaurentPolynomial fourier_coefficients(const BoundarySamples& samples,
                                             int max_degree);

struct FejerResult {
  MatrixLaurentPolynomial poly;
  double margin = 0.0;  // min eigenvalue of the truncation on a validation grid
};

// Cesaro (Fejer) truncation: coefficient n scaled by 1 - |n|/(N+1).  PSD
// samples yield a PSD truncation; the margin is measured on a >= 4N-point
// grid and must stay above margin_floor (absolute).
FejerResult fejer_truncate(const BoundarySamples& samples, int max_degree,
                           double margin_floor = -1e-10);

// Raw (Dirichlet) truncation to degree N: exact on band-limited data, no
// positivity guarantee.  Returns the truncation together with the sup-norm
// discrepancy against the samples.
struct TruncationResult {
  MatrixLaurentPolynomial poly;
  double error = 0.0;  // max_j || poly(w_j) - P_j ||_2
};
TruncationResult fourier_truncate(const BoundarySamples& samples, int max_degree);

// Taylor coefficients of s(z) = (1/4 pi) Int (e^{it}+z)/(e^{it}-z) f(e^{it}) dt
// for hermitian boundary data f in the local coordinate: s_0 = f_0 / 2,
// s_n = f_n for n >= 1.  Satisfies s + s^* = f on the circle up to band-limit
// error.
MatrixPolynomial schwarz_integral(const BoundarySamples& samples, int max_degree = -1);

// Argument-principle winding count of a nonvanishing sample loop.  Phase
// steps >= pi/2 raise ResolutionError (caller refines the sampling).
int winding_number(std::span<const Complex> values);

// ---- internal-grade DFT helpers (exposed for the factorization module) -----

// Entrywise forward DFT of a matrix sample sequence (length must be a power
// of two): returns hat[k] = (1/n) sum_j vals[j] e^{-2 pi i jk/n}, k = 0..n-1.
std::vector<CMatrix> dft_matrix_sequence(const std::vector<CMatrix>& vals);
// Inverse: vals[j] = sum_k hat[k] e^{+2 pi i jk/n}.
std::vector<CMatrix> idft_matrix_sequence(const std::vector<CMatrix>& hats);

}  // namespace ncpot

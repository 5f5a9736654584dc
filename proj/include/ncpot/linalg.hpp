// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "ncpot/errors.hpp"
#include "ncpot/types.hpp"

namespace ncpot {

// Dense hermitian matrix, stored canonically as (M + M*)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  // Validating constructor: rejects non-square, non-finite, or matrices
  // whose hermitian defect exceeds tol * (1 + ||M||_F).
  static HermitianMatrix from(const CMatrix& m, double tol = defaults::herm_tol);

  // Canonicalize without the defect gate (still checks shape/finiteness).
  static HermitianMatrix symmetrized(const CMatrix& m);

  const CMatrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  explicit HermitianMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

// Hermitian matrix certified positive semidefinite within a relative
// tolerance; carries the certified smallest eigenvalue.
class PsdMatrix {
 public:
  PsdMatrix() = default;
  static PsdMatrix from(const HermitianMatrix& h, double tol = defaults::psd_tol);
  static PsdMatrix from(const CMatrix& m, double tol = defaults::psd_tol) {
    return from(HermitianMatrix::from(m), tol);
  }

  const CMatrix& mat() const { return hermitian().mat(); }
  const HermitianMatrix& hermitian() const { return h_; }
  double margin() const { return margin_; }
  Eigen::Index dim() const { return h_.dim(); }

 private:
  PsdMatrix(HermitianMatrix h, double margin) : h_(std::move(h)), margin_(margin) {}
  HermitianMatrix h_;
  double margin_ = 0.0;
};

// 2x2 block hermitian matrix  [[a, b], [b*, c]]  with d x d blocks.
class BlockMatrix2x2 {
 public:
  BlockMatrix2x2(HermitianMatrix a, CMatrix b, HermitianMatrix c);

  const HermitianMatrix& a() const { return a_; }
  const CMatrix& b() const { return b_; }
  const HermitianMatrix& c() const { return c_; }

  // The assembled 2d x 2d hermitian matrix.
  CMatrix assembled() const;
  Eigen::Index block_dim() const { return a_.dim(); }

 private:
  HermitianMatrix a_, c_;
  CMatrix b_;
};

// Hermitian part (M + M*)/2, safe to assign back onto its own argument.
inline CMatrix symmetrize(const CMatrix& m) {
  CMatrix out = m.adjoint();
  out += m;
  out *= 0.5;
  return out;
}

// ---- eigenvalue / singular value kernels -----------------------------------

// Smallest eigenvalue of a hermitian matrix.
double lambda_min(const CMatrix& hermitian);
double lambda_max(const CMatrix& hermitian);

// Largest / smallest singular value (relative accuracy at machine level).
double operator_norm(const CMatrix& m);
double min_singular(const CMatrix& m);

struct PsdCheck {
  bool psd = false;
  double margin = 0.0;  // lambda_min
};

// True iff lambda_min(m) >= -tol * (1 + ||m||_2); margin is lambda_min.
PsdCheck is_psd(const HermitianMatrix& m, double tol = defaults::psd_tol);

// Principal square root of a PSD matrix via eigendecomposition; negative
// roundoff eigenvalues are clamped to zero.
PsdMatrix sqrt_psd(const PsdMatrix& m);

// Raw helpers on hermitian data (used throughout the library).
CMatrix sqrt_psd_raw(const CMatrix& hermitian);
// Inverse square root; eigenvalues below floor_rel * lambda_max trigger a
// DegeneracyError.
CMatrix inv_sqrt_psd(const CMatrix& hermitian, double floor_rel = 1e-14);

// ---- Schur complements ------------------------------------------------------

// a - b (c + t Id)^{-1} b*  for t > 0.
HermitianMatrix schur_complement(const HermitianMatrix& a, const CMatrix& b,
                                 const PsdMatrix& c, double t);

struct SchurLimit {
  HermitianMatrix value;   // a - D,  D = lim_{t->0} b (c + t Id)^{-1} b*
  double spread = 0.0;     // extrapolation residual from the two smallest t
};

// Extrapolated t->0 Schur complement over a decreasing t grid.  The default
// grid is {1e-3, 1e-5, 1e-7, 1e-9} * (1 + ||c||_2); the limit is accepted
// when the two smallest-t evaluations differ by <= spread_tol * (1 + ||a||_2).
// Divergent or non-monotone D(t) raises DegeneracyError.
SchurLimit schur_complement_limit(const HermitianMatrix& a, const CMatrix& b,
                                  const PsdMatrix& c,
                                  std::span<const double> t_grid = {},
                                  double spread_tol = defaults::limit_spread_tol);

// PSD test of the assembled 2d x 2d block.
bool block_psd_test(const BlockMatrix2x2& block, double tol = defaults::psd_tol);
double block_psd_margin(const BlockMatrix2x2& block);

struct InvertibilityCert {
  bool invertible = false;
  double min_sigma = 0.0;  // min over members of the smallest singular value
};

// Uniform invertibility certificate for a family: true iff every member has
// smallest singular value >= tol (equivalently sup ||m_k^{-1}|| <= 1/tol).
InvertibilityCert invertibility_certificate(std::span<const CMatrix> ms, double tol);

}  // namespace ncpot

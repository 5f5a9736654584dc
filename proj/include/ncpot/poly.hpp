// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "ncpot/errors.hpp"
#include "ncpot/types.hpp"

namespace ncpot {

// H(z) = sum_{n=0}^{N} H_n z^n with d x d matrix coefficients.
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  MatrixPolynomial(int dim, std::vector<CMatrix> coeffs);

  static MatrixPolynomial constant(const CMatrix& c0);
  static MatrixPolynomial zero(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const CMatrix& coeff(int n) const { return coeffs_.at(n); }
  CMatrix& coeff(int n) { return coeffs_.at(n); }
  const std::vector<CMatrix>& coeffs() const { return coeffs_; }

  CMatrix eval(Complex z) const;  // Horner
  MatrixPolynomial derivative() const;

  // Coefficientwise entry transpose (no conjugation): H_n -> H_n^T.
  MatrixPolynomial transpose_coeffs() const;

  MatrixPolynomial left_mul(const CMatrix& u) const;   // z -> u H(z)
  MatrixPolynomial right_mul(const CMatrix& u) const;  // z -> H(z) u
  MatrixPolynomial operator*(const MatrixPolynomial& rhs) const;
  MatrixPolynomial operator+(const MatrixPolynomial& rhs) const;
  MatrixPolynomial scaled(Complex s) const;           // z -> s H(z)
  MatrixPolynomial scaled_argument(Complex s) const;  // z -> H(s z)

  // Drop trailing coefficients with norm <= rel_tol * coeff_scale().
  MatrixPolynomial trimmed(double rel_tol = 1e-14) const;

  double coeff_scale() const;  // max_n ||H_n||_F

 private:
  int dim_ = 0;
  std::vector<CMatrix> coeffs_;
};

// F(z) = sum_{n=-N}^{N} F_n z^n with F_{-n} = F_n^*, hermitian-valued on the
// unit circle.
class MatrixLaurentPolynomial {
 public:
  MatrixLaurentPolynomial() = default;
  // coeffs has 2N+1 entries, index 0 <-> F_{-N}.
  MatrixLaurentPolynomial(int dim, int band, std::vector<CMatrix> coeffs);

  static MatrixLaurentPolynomial constant(const CMatrix& f0);
  // Boundary symbol of g: coefficients of g(z)^* g(z) on |z| = 1.
  static MatrixLaurentPolynomial gram(const MatrixPolynomial& g);

  int dim() const { return dim_; }
  int band() const { return band_; }
  const CMatrix& coeff(int n) const { return coeffs_.at(n + band_); }
  CMatrix& coeff(int n) { return coeffs_.at(n + band_); }

  CMatrix eval(Complex w) const;  // sum F_n w^n, w != 0

  // max_n || F_{-n} - F_n^* ||_F
  double herm_defect() const;
  // F_n <- (F_n + F_{-n}^*) / 2
  void enforce_symmetry();

  MatrixLaurentPolynomial trimmed(double rel_tol = 1e-14) const;
  MatrixLaurentPolynomial lifted(double eps) const;  // F + eps Id

  double coeff_scale() const;

 private:
  int dim_ = 0;
  int band_ = 0;
  std::vector<CMatrix> coeffs_;
};

// phi(z) = sum_n c_n z^n with vector coefficients (holomorphic section).
class VectorPolynomial {
 public:
  VectorPolynomial() = default;
  VectorPolynomial(int dim, std::vector<CVector> coeffs);

  int dim() const { return dim_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<CVector>& coeffs() const { return coeffs_; }
  CVector eval(Complex z) const;

 private:
  int dim_ = 0;
  std::vector<CVector> coeffs_;
};

}  // namespace ncpot

// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include "ncpot/poly.hpp"

#include <algorithm>

namespace ncpot {

MatrixPolynomial::MatrixPolynomial(int dim, std::vector<CMatrix> coeffs)
    : dim_(dim), coeffs_(std::move(coeffs)) {
  if (dim <= 0) throw InputError("MatrixPolynomial: dimension must be positive");
  if (coeffs_.empty()) coeffs_.push_back(CMatrix::Zero(dim, dim));
  for (const CMatrix& c : coeffs_) {
    if (c.rows() != dim || c.cols() != dim)
      throw InputError("MatrixPolynomial: coefficient dimension mismatch");
    if (!is_finite(c)) throw InputError("MatrixPolynomial: non-finite coefficient");
  }
}

MatrixPolynomial MatrixPolynomial::constant(const CMatrix& c0) {
  return MatrixPolynomial(static_cast<int>(c0.rows()), {c0});
}

MatrixPolynomial MatrixPolynomial::zero(int dim, int degree) {
  return MatrixPolynomial(dim, std::vector<CMatrix>(degree + 1, CMatrix::Zero(dim, dim)));
}

CMatrix MatrixPolynomial::eval(Complex z) const {
  CMatrix acc = coeffs_.back();
  for (int n = degree() - 1; n >= 0; --n) acc = acc * z + coeffs_[n];
  return acc;
}

MatrixPolynomial MatrixPolynomial::derivative() const {
  if (degree() == 0) return zero(dim_, 0);
  std::vector<CMatrix> d;
  d.reserve(coeffs_.size() - 1);
  for (int n = 1; n <= degree(); ++n) d.push_back(double(n) * coeffs_[n]);
  return MatrixPolynomial(dim_, std::move(d));
}

MatrixPolynomial MatrixPolynomial::transpose_coeffs() const {
  std::vector<CMatrix> t;
  t.reserve(coeffs_.size());
  for (const CMatrix& c : coeffs_) t.push_back(c.transpose());
  return MatrixPolynomial(dim_, std::move(t));
}

MatrixPolynomial MatrixPolynomial::left_mul(const CMatrix& u) const {
  std::vector<CMatrix> t;
  t.reserve(coeffs_.size());
  for (const CMatrix& c : coeffs_) t.push_back(u * c);
  return MatrixPolynomial(dim_, std::move(t));
}

MatrixPolynomial MatrixPolynomial::right_mul(const CMatrix& u) const {
  std::vector<CMatrix> t;
  t.reserve(coeffs_.size());
  for (const CMatrix& c : coeffs_) t.push_back(c * u);
  return MatrixPolynomial(dim_, std::move(t));
}

MatrixPolynomial MatrixPolynomial::operator*(const MatrixPolynomial& rhs) const {
  if (dim_ != rhs.dim_) throw InputError("MatrixPolynomial: dimension mismatch in product");
  std::vector<CMatrix> out(coeffs_.size() + rhs.coeffs_.size() - 1,
                           CMatrix::Zero(dim_, dim_));
  for (size_t a = 0; a < coeffs_.size(); ++a)
    for (size_t b = 0; b < rhs.coeffs_.size(); ++b) out[a + b] += coeffs_[a] * rhs.coeffs_[b];
  return MatrixPolynomial(dim_, std::move(out));
}

MatrixPolynomial MatrixPolynomial::operator+(const MatrixPolynomial& rhs) const {
  if (dim_ != rhs.dim_) throw InputError("MatrixPolynomial: dimension mismatch in sum");
  std::vector<CMatrix> out(std::max(coeffs_.size(), rhs.coeffs_.size()),
                           CMatrix::Zero(dim_, dim_));
  for (size_t a = 0; a < coeffs_.size(); ++a) out[a] += coeffs_[a];
  for (size_t b = 0; b < rhs.coeffs_.size(); ++b) out[b] += rhs.coeffs_[b];
  return MatrixPolynomial(dim_, std::move(out));
}

MatrixPolynomial MatrixPolynomial::scaled(Complex s) const {
  std::vector<CMatrix> t;
  t.reserve(coeffs_.size());
  for (const CMatrix& c : coeffs_) t.push_back(s * c);
  return MatrixPolynomial(dim_, std::move(t));
}

MatrixPolynomial MatrixPolynomial::scaled_argument(Complex s) const {
  std::vector<CMatrix> t;
  t.reserve(coeffs_.size());
  Complex p = 1.0;
  for (const CMatrix& c : coeffs_) {
    t.push_back(p * c);
    p *= s;
  }
  return MatrixPolynomial(dim_, std::move(t));
}

MatrixPolynomial MatrixPolynomial::trimmed(double rel_tol) const {
  const double floor = rel_tol * (1.0 + coeff_scale());
  int last = degree();
  while (last > 0 && coeffs_[last].norm() <= floor) --last;
  std::vector<CMatrix> t(coeffs_.begin(), coeffs_.begin() + last + 1);
  return MatrixPolynomial(dim_, std::move(t));
}

double MatrixPolynomial::coeff_scale() const {
  double s = 0.0;
  for (const CMatrix& c : coeffs_) s = std::max(s, c.norm());
  return s;
}

MatrixLaurentPolynomial::MatrixLaurentPolynomial(int dim, int band,
                                                 std::vector<CMatrix> coeffs)
    : dim_(dim), band_(band), coeffs_(std::move(coeffs)) {
  if (dim <= 0) throw InputError("MatrixLaurentPolynomial: dimension must be positive");
  if (band < 0) throw InputError("MatrixLaurentPolynomial: band must be nonnegative");
  if (static_cast<int>(coeffs_.size()) != 2 * band + 1)
    throw InputError("MatrixLaurentPolynomial: expected 2N+1 coefficients");
  for (const CMatrix& c : coeffs_) {
    if (c.rows() != dim || c.cols() != dim)
      throw InputError("MatrixLaurentPolynomial: coefficient dimension mismatch");
    if (!is_finite(c)) throw InputError("MatrixLaurentPolynomial: non-finite coefficient");
  }
}

MatrixLaurentPolynomial MatrixLaurentPolynomial::constant(const CMatrix& f0) {
  return MatrixLaurentPolynomial(static_cast<int>(f0.rows()), 0, {f0});
}

MatrixLaurentPolynomial MatrixLaurentPolynomial::gram(const MatrixPolynomial& g) {
  const int d = g.dim();
  const int deg = g.degree();
  std::vector<CMatrix> coeffs(2 * deg + 1, CMatrix::Zero(d, d));
  // (g^* g)_m = sum_a g_a^* g_{a+m} on |z| = 1.
  for (int m = -deg; m <= deg; ++m) {
    CMatrix acc = CMatrix::Zero(d, d);
    for (int a = std::max(0, -m); a + std::max(0, m) <= deg; ++a)
      acc += g.coeff(a).adjoint() * g.coeff(a + m);
    coeffs[m + deg] = std::move(acc);
  }
  return MatrixLaurentPolynomial(d, deg, std::move(coeffs));
}

CMatrix MatrixLaurentPolynomial::eval(Complex w) const {
  if (w == Complex(0.0, 0.0))
    throw InputError("MatrixLaurentPolynomial: evaluation at 0");
  CMatrix acc = CMatrix::Zero(dim_, dim_);
  Complex p = std::pow(w, -band_);
  for (int n = -band_; n <= band_; ++n) {
    acc += coeff(n) * p;
    p *= w;
  }
  return acc;
}

double MatrixLaurentPolynomial::herm_defect() const {
  double worst = 0.0;
  for (int n = 0; n <= band_; ++n)
    worst = std::max(worst, (coeff(-n) - coeff(n).adjoint()).norm());
  return worst;
}

void MatrixLaurentPolynomial::enforce_symmetry() {
  for (int n = 0; n <= band_; ++n) {
    CMatrix avg = 0.5 * (coeff(n) + coeff(-n).adjoint());
    coeff(n) = avg;
    coeff(-n) = avg.adjoint();
  }
}

MatrixLaurentPolynomial MatrixLaurentPolynomial::trimmed(double rel_tol) const {
  const double floor = rel_tol * (1.0 + coeff_scale());
  int nb = band_;
  while (nb > 0 && coeff(nb).norm() <= floor && coeff(-nb).norm() <= floor) --nb;
  std::vector<CMatrix> t;
  t.reserve(2 * nb + 1);
  for (int n = -nb; n <= nb; ++n) t.push_back(coeff(n));
  return MatrixLaurentPolynomial(dim_, nb, std::move(t));
}

MatrixLaurentPolynomial MatrixLaurentPolynomial::lifted(double eps) const {
  MatrixLaurentPolynomial out = *this;
  out.coeff(0) += eps * CMatrix::Identity(dim_, dim_);
  return out;
}

double MatrixLaurentPolynomial::coeff_scale() const {
  double s = 0.0;
  for (const CMatrix& c : coeffs_) s = std::max(s, c.norm());
  return s;
}

VectorPolynomial::VectorPolynomial(int dim, std::vector<CVector> coeffs)
    : dim_(dim), coeffs_(std::move(coeffs)) {
  if (dim <= 0) throw InputError("VectorPolynomial: dimension must be positive");
  if (coeffs_.empty()) coeffs_.push_back(CVector::Zero(dim));
  for (const CVector& c : coeffs_)
    if (c.size() != dim) throw InputError("VectorPolynomial: coefficient dimension mismatch");
}

CVector VectorPolynomial::eval(Complex z) const {
  CVector acc = coeffs_.back();
  for (int n = static_cast<int>(coeffs_.size()) - 2; n >= 0; --n) acc = acc * z + coeffs_[n];
  return acc;
}

}  // namespace ncpot

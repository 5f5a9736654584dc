// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include "ncpot/gen.hpp"

#include <cmath>

#include "ncpot/specfact.hpp"

namespace ncpot {

double Rng::uniform() {
  return double(eng_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) {
  return a + (b - a) * uniform();
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

Complex Rng::cnormal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

int Rng::uniform_int(int lo, int hi) {
  return lo + int(eng_() % std::uint64_t(hi - lo + 1));
}

CMatrix Rng::gaussian(int d, double scale) {
  CMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = scale * cnormal();
  return m;
}

CMatrix Rng::hermitian(int d, double scale) {
  const CMatrix g = gaussian(d, scale);
  return symmetrize(g);
}

CMatrix Rng::psd(int d, double scale) {
  const CMatrix g = gaussian(d, scale);
  return g.adjoint() * g;
}

CMatrix Rng::unitary(int d) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian(d));
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rj = r(j, j);
    q.col(j) *= rj == Complex(0.0, 0.0) ? 1.0 : rj / std::abs(rj);
  }
  return q;
}

MatrixPolynomial Rng::poly(int d, int degree, double scale) {
  std::vector<CMatrix> coeffs;
  coeffs.reserve(degree + 1);
  for (int n = 0; n <= degree; ++n) coeffs.push_back(gaussian(d, scale));
  return MatrixPolynomial(d, std::move(coeffs));
}

VectorPolynomial Rng::vpoly(int d, int degree, double scale) {
  std::vector<CVector> coeffs;
  coeffs.reserve(degree + 1);
  for (int n = 0; n <= degree; ++n) {
    CVector v(d);
    for (int i = 0; i < d; ++i) v(i) = scale * cnormal();
    coeffs.push_back(std::move(v));
  }
  return VectorPolynomial(d, std::move(coeffs));
}

MatrixPolynomial Rng::outer_poly(int d, int degree, double rho) {
  MatrixPolynomial h = MatrixPolynomial::constant(
      (CMatrix::Identity(d, d) + 0.2 * hermitian(d)).eval());
  for (int n = 0; n < degree; ++n) {
    CMatrix b = gaussian(d);
    const double norm = operator_norm(b);
    if (norm > 0.0) b *= rho * uniform(0.3, 1.0) / norm;
    std::vector<CMatrix> lin{CMatrix::Identity(d, d), -b};
    h = h * MatrixPolynomial(d, std::move(lin));
  }
  return h;
}

MatrixLaurentPolynomial Rng::psd_laurent(int d, int degree, double min_margin) {
  MatrixLaurentPolynomial f = MatrixLaurentPolynomial::gram(poly(d, degree));
  const int n = next_pow2(std::max(64, 8 * (2 * degree + 1)));
  const CircleRange range = circle_range(f, n);
  if (range.margin < min_margin) f = f.lifted(min_margin - range.margin);
  return f;
}

MetricField Rng::flat_sum_field(int d, int terms, int degree) {
  std::vector<MatrixPolynomial> hs;
  hs.reserve(terms);
  // One invertible term keeps P strictly positive on the closed disc.
  hs.push_back(outer_poly(d, std::min(degree, 2)));
  for (int i = 1; i < terms; ++i) hs.push_back(poly(d, uniform_int(1, degree), 0.7));
  return MetricField::flat_sum(std::move(hs));
}

MetricField Rng::dual_field(int d, int terms, int degree) {
  std::vector<MatrixPolynomial> hs;
  hs.reserve(terms);
  hs.push_back(outer_poly(d, std::min(degree, 2)));
  for (int i = 1; i < terms; ++i) hs.push_back(poly(d, uniform_int(1, degree), 0.7));
  return MetricField::dual_flat_sum(std::move(hs));
}

}  // namespace ncpot

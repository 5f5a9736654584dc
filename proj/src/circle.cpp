// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include "ncpot/circle.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace ncpot {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

// Entrywise complex FFT across the sample index.
void fft_entrywise(const std::vector<CMatrix>& in, std::vector<CMatrix>& out,
                   bool forward) {
  const int n = static_cast<int>(in.size());
  const int d = static_cast<int>(in.front().rows());
  out.assign(n, CMatrix::Zero(d, d));
  Eigen::FFT<double> fft;
  std::vector<Complex> buf(n), res(n);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      for (int j = 0; j < n; ++j) buf[j] = in[j](r, c);
      if (forward)
        fft.fwd(res, buf);
      else
        fft.inv(res, buf);
      for (int j = 0; j < n; ++j) out[j](r, c) = res[j];
    }
  }
}

}  // namespace

DiscSpec::DiscSpec(Complex z0, double r) : center(z0), radius(r) {
  if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(z0.real()) ||
      !std::isfinite(z0.imag()))
    throw InputError("DiscSpec: radius must be positive and finite");
}

bool DiscSpec::contains(Complex z, double slack) const {
  return std::abs(z - center) <= radius * (1.0 + slack);
}

bool DiscSpec::contains_disc(const DiscSpec& other, double slack) const {
  return std::abs(other.center - center) + other.radius <= radius * (1.0 + slack);
}

BoundarySamples BoundarySamples::make(const DiscSpec& disc, std::vector<CMatrix> values) {
  BoundarySamples s;
  const int n = static_cast<int>(values.size());
  if (n < 4 || !is_pow2(n))
    throw InputError("BoundarySamples: sample count must be a power of two >= 4");
  s.disc_ = disc;
  s.dim_ = static_cast<int>(values.front().rows());
  for (CMatrix& v : values) {
    if (v.rows() != s.dim_ || v.cols() != s.dim_)
      throw InputError("BoundarySamples: value dimension mismatch");
    if (!is_finite(v)) throw InputError("BoundarySamples: non-finite value");
    v = symmetrize(v);
  }
  s.values_ = std::move(values);
  return s;
}

BoundarySamples BoundarySamples::sample(const DiscSpec& disc, int n,
                                        const std::function<CMatrix(Complex)>& f) {
  std::vector<CMatrix> vals;
  vals.reserve(n);
  for (Complex z : circle_samples(disc, n)) vals.push_back(f(z));
  return make(disc, std::move(vals));
}

Complex BoundarySamples::point(int j) const {
  return disc_.from_local(local_point(j));
}

Complex BoundarySamples::local_point(int j) const {
  const double t = 2.0 * kPi * j / n();
  return Complex(std::cos(t), std::sin(t));
}

double BoundarySamples::psd_margin() const {
  double worst = std::numeric_limits<double>::infinity();
  for (const CMatrix& v : values_) worst = std::min(worst, lambda_min(v));
  return worst;
}

double BoundarySamples::scale() const {
  double s = 0.0;
  for (const CMatrix& v : values_) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(v, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    s = std::max(s, std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))));
  }
  return s;
}

std::vector<Complex> circle_samples(const DiscSpec& disc, int n) {
  if (!is_pow2(n) || n < 4)
    throw InputError("circle_samples: n must be a power of two >= 4");
  std::vector<Complex> pts;
  pts.reserve(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * j / n;
    pts.push_back(disc.center + disc.radius * Complex(std::cos(t), std::sin(t)));
  }
  return pts;
}

CircleMoments average_moments(const BoundarySamples& samples) {
  const int n = samples.n();
  const int d = samples.dim();
  CMatrix m0 = CMatrix::Zero(d, d);
  CMatrix mplus = CMatrix::Zero(d, d);
  const Complex i_unit(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    const Complex w = samples.local_point(j);
    m0 += samples.value(j);
    mplus += samples.value(j) * (i_unit * w);
  }
  m0 /= double(n);
  mplus /= double(n);
  const CMatrix m0h = symmetrize(m0);
  // dz-bar average is the adjoint of the dz average for hermitian samples.
  return {m0h, mplus, mplus.adjoint()};
}

MatrixLaurentPolynomial fourier_coefficients(const BoundarySamples& samples,
                                             int max_degree) {
  const int n = samples.n();
  if (max_degree < 0 || 2 * max_degree + 1 > n)
    throw InputError("fourier_coefficients: band 2N+1 exceeds sample count");
  std::vector<CMatrix> hat = dft_matrix_sequence(samples.values());
  const int d = samples.dim();
  std::vector<CMatrix> coeffs(2 * max_degree + 1, CMatrix::Zero(d, d));
  for (int m = -max_degree; m <= max_degree; ++m)
    coeffs[m + max_degree] = hat[(m + n) % n];
  MatrixLaurentPolynomial f(d, max_degree, std::move(coeffs));
  f.enforce_symmetry();
  return f;
}

FejerResult fejer_truncate(const BoundarySamples& samples, int max_degree,
                           double margin_floor) {
  MatrixLaurentPolynomial f = fourier_coefficients(samples, max_degree);
  for (int m = -max_degree; m <= max_degree; ++m)
    f.coeff(m) *= 1.0 - double(std::abs(m)) / double(max_degree + 1);

  const int n_val = next_pow2(std::max(64, 4 * (max_degree + 1)));
  double margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n_val; ++j) {
    const double t = 2.0 * kPi * j / n_val;
    const CMatrix v = f.eval(Complex(std::cos(t), std::sin(t)));
    margin = std::min(margin, lambda_min(symmetrize(v)));
  }
  if (margin < margin_floor)
    throw DegeneracyError(
        "fejer_truncate: post-truncation margin " + std::to_string(margin) +
        " below floor; increase the degree or lift the data by eps*Id");
  return {std::move(f), margin};
}

TruncationResult fourier_truncate(const BoundarySamples& samples, int max_degree) {
  MatrixLaurentPolynomial f = fourier_coefficients(samples, max_degree);
  double err = 0.0;
  for (int j = 0; j < samples.n(); ++j) {
    const CMatrix diff = f.eval(samples.local_point(j)) - samples.value(j);
    err = std::max(err, operator_norm(diff));
  }
  return {std::move(f), err};
}

MatrixPolynomial schwarz_integral(const BoundarySamples& samples, int max_degree) {
  const int n = samples.n();
  if (max_degree < 0) max_degree = n / 2 - 1;
  if (max_degree >= n / 2)
    throw InputError("schwarz_integral: degree exceeds the sample band limit");
  std::vector<CMatrix> hat = dft_matrix_sequence(samples.values());
  std::vector<CMatrix> coeffs;
  coeffs.reserve(max_degree + 1);
  coeffs.push_back(0.5 * hat[0]);
  for (int k = 1; k <= max_degree; ++k) coeffs.push_back(hat[k]);
  return MatrixPolynomial(samples.dim(), std::move(coeffs));
}

int winding_number(std::span<const Complex> values) {
  if (values.size() < 4) throw InputError("winding_number: need at least 4 samples");
  double total = 0.0;
  const size_t n = values.size();
  for (size_t j = 0; j < n; ++j) {
    const Complex a = values[j];
    const Complex b = values[(j + 1) % n];
    if (a == Complex(0.0, 0.0) || b == Complex(0.0, 0.0))
      throw InputError("winding_number: zero value in loop");
    const double step = std::arg(b / a);
    if (!(std::abs(step) < kPi / 2.0))
      throw ResolutionError("winding_number: phase step >= pi/2; refine sampling");
    total += step;
  }
  const double w = total / (2.0 * kPi);
  const long r = std::lround(w);
  if (std::abs(w - double(r)) > 0.25)
    throw ResolutionError("winding_number: accumulated phase not near an integer");
  return static_cast<int>(r);
}

std::vector<CMatrix> dft_matrix_sequence(const std::vector<CMatrix>& vals) {
  if (vals.empty() || !is_pow2(static_cast<int>(vals.size())))
    throw InputError("dft_matrix_sequence: length must be a power of two");
  std::vector<CMatrix> out;
  fft_entrywise(vals, out, true);
  for (CMatrix& m : out) m /= double(vals.size());
  return out;
}

std::vector<CMatrix> idft_matrix_sequence(const std::vector<CMatrix>& hats) {
  if (hats.empty() || !is_pow2(static_cast<int>(hats.size())))
    throw InputError("idft_matrix_sequence: length must be a power of two");
  std::vector<CMatrix> out;
  // Eigen's inverse transform scales by 1/n; our coefficients already carry it.
  fft_entrywise(hats, out, false);
  for (CMatrix& m : out) m *= double(hats.size());
  return out;
}

}  // namespace ncpot

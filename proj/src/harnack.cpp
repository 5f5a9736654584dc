// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include "ncpot/harnack.hpp"

#include <cmath>
#include <numbers>

namespace ncpot {

namespace {

constexpr double kPi = std::numbers::pi;

// Weight of the subdiagonal entry (n+1, n), 1-based n = 1..d-1; zero when
// 2^k | n.
double weight(std::uint64_t n, std::optional<int> k) {
  if (k && (n % (std::uint64_t(1) << *k)) == 0) return 0.0;
  return 1.0 / double(beta(n));
}

// y = (Id - zeta A) x  with A the weighted shift (O(d)).
CVector apply_h(const CVector& x, Complex zeta, std::optional<int> k) {
  const int d = static_cast<int>(x.size());
  CVector y = x;
  for (int n = 1; n < d; ++n) y(n) -= zeta * weight(n, k) * x(n - 1);
  return y;
}

// y = (Id - zeta A)^* x (O(d)).
CVector apply_h_adj(const CVector& x, Complex zeta, std::optional<int> k) {
  const int d = static_cast<int>(x.size());
  CVector y = x;
  for (int n = 1; n < d; ++n) y(n - 1) -= std::conj(zeta) * weight(n, k) * x(n);
  return y;
}

// Solve (Id - zeta A) y = x by forward substitution (O(d)).
CVector solve_h(const CVector& x, Complex zeta, std::optional<int> k) {
  const int d = static_cast<int>(x.size());
  CVector y(d);
  y(0) = x(0);
  for (int n = 1; n < d; ++n) y(n) = x(n) + zeta * weight(n, k) * y(n - 1);
  return y;
}

// Solve (Id - zeta A)^* y = x by back substitution (O(d)).
CVector solve_h_adj(const CVector& x, Complex zeta, std::optional<int> k) {
  const int d = static_cast<int>(x.size());
  CVector y(d);
  y(d - 1) = x(d - 1);
  for (int n = d - 2; n >= 0; --n)
    y(n) = x(n) + std::conj(zeta) * weight(std::uint64_t(n) + 1, k) * y(n + 1);
  return y;
}

// Largest eigenvalue of a hermitian PSD operator given by matrix-free
// application, by power iteration with a deterministic start.
template <typename Op>
double power_norm(int d, const Op& op, int iters = 300, double rel_stop = 1e-13) {
  CVector v = CVector::Constant(d, Complex(1.0 / std::sqrt(double(d)), 0.0));
  for (int j = 0; j < d; ++j)
    v(j) *= Complex(std::cos(0.7 * j + 0.3), std::sin(1.3 * j + 0.1));
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    CVector w = op(v);
    const double nw = w.norm();
    if (!(nw > 0.0) || !std::isfinite(nw)) return nw;
    w /= nw;
    const double next = nw;
    if (it > 4 && std::abs(next - lambda) <= rel_stop * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
    v = std::move(w);
  }
  return lambda;
}

// ||(Id - zeta A_k)^{-1}||_2 via power iteration on S S^*.
double resolvent_norm(Complex zeta, std::optional<int> k, int d) {
  const double lam = power_norm(d, [&](const CVector& v) {
    return solve_h(solve_h_adj(v, zeta, k), zeta, k);
  });
  return std::sqrt(lam);
}

bool is_integral_real(Complex z) {
  return z.imag() == 0.0 && std::floor(z.real()) == z.real() &&
         std::abs(z.real()) < 9.0e15;
}

}  // namespace

std::uint64_t beta(std::uint64_t n) {
  if (n == 0) throw InputError("beta: argument must be >= 1");
  return n & (~n + 1);  // lowest set bit
}

CMatrix shift_matrix(const ShiftSpec& spec) {
  if (spec.dim < 2) throw InputError("shift_matrix: dimension must be >= 2");
  CMatrix a = CMatrix::Zero(spec.dim, spec.dim);
  for (int n = 1; n < spec.dim; ++n) a(n, n - 1) = weight(n, spec.k);
  return a;
}

Eigen::VectorXd shift_weights(const ShiftSpec& spec) {
  if (spec.dim < 2) throw InputError("shift_weights: dimension must be >= 2");
  Eigen::VectorXd w(spec.dim - 1);
  for (int n = 1; n < spec.dim; ++n) w(n - 1) = weight(n, spec.k);
  return w;
}

Resolvent resolvent_vector(std::optional<int> k, Complex zeta, int d) {
  if (d < 2) throw InputError("resolvent_vector: dimension must be >= 2");
  Resolvent out;
  out.x = CVector::Zero(d);
  out.x(0) = 1.0;
  for (int n = 1; n < d; ++n) out.x(n) = zeta * weight(n, k) * out.x(n - 1);

  if (is_integral_real(zeta)) {
    out.exact.assign(d, BigRational(0));
    out.exact[0] = 1;
    const BigRational zi(static_cast<long long>(zeta.real()));
    for (int n = 1; n < d; ++n) {
      if (k && (std::uint64_t(n) % (std::uint64_t(1) << *k)) == 0)
        out.exact[n] = 0;
      else
        out.exact[n] = out.exact[n - 1] * zi / BigRational(BigInt(beta(n)));
    }
    BigRational s(0);
    for (const BigRational& e : out.exact) s += e * e;
    out.norm_sq_exact = s;
  }
  return out;
}

ProductIdentity product_identity_check(int k) {
  if (k < 1 || k > 24) throw InputError("product_identity_check: k out of range");
  ProductIdentity out;
  out.k = k;
  const std::uint64_t n = std::uint64_t(1) << k;
  out.product = 1;
  for (std::uint64_t m = 1; m < n; ++m) out.product *= BigInt(beta(m));
  std::uint64_t exponent = 0;
  for (int j = 0; j < k; ++j) exponent += std::uint64_t(j) << (k - j - 1);
  out.exponent = exponent;
  out.formula = BigInt(1) << exponent;
  out.equal = (out.product == out.formula);
  out.below_2n = (out.product < (BigInt(1) << n));
  return out;
}

MetricField::Jet harnack_jet(std::optional<int> k, Complex z0, int d, Complex z) {
  const double eps = 1.0 / (1.0 + 2.0 / std::abs(z0));
  const Complex c = 2.0 / z0;
  const Complex zeta = c * z;

  // H = L^{-1} = eps^{-1} S,  S = (Id - zeta A)^{-1},  H' = (c/eps) S A S.
  // Columns of the jet matrices assembled by solves against unit vectors.
  const auto shift = [&](const CVector& v) {
    CVector y = CVector::Zero(d);
    for (int n = 1; n < d; ++n) y(n) = weight(n, k) * v(n - 1);
    return y;
  };
  CMatrix s(d, d), sas(d, d);
  for (int j = 0; j < d; ++j) {
    CVector e = CVector::Zero(d);
    e(j) = 1.0;
    s.col(j) = solve_h(e, zeta, k);
    sas.col(j) = solve_h(shift(CVector(s.col(j))), zeta, k);
  }
  const double e2 = 1.0 / (eps * eps);
  MetricField::Jet jet;
  jet.p = e2 * (s.adjoint() * s);
  jet.pz = (e2 * c) * (s.adjoint() * sas);
  jet.pzb = jet.pz.adjoint();
  jet.pzzb = (e2 * std::norm(c)) * (sas.adjoint() * sas);
  jet.p = symmetrize(jet.p);
  jet.pzzb = symmetrize(jet.pzzb);
  return jet;
}

double harnack_flat_margin(std::optional<int> k, Complex z0, int d, Complex z) {
  const double eps = 1.0 / (1.0 + 2.0 / std::abs(z0));
  const Complex c = 2.0 / z0;
  const Complex zeta = c * z;
  const double e2 = 1.0 / (eps * eps);

  const auto shift = [&](const CVector& v) {
    CVector y = CVector::Zero(d);
    for (int n = 1; n < d; ++n) y(n) = weight(n, k) * v(n - 1);
    return y;
  };
  const auto shift_adj = [&](const CVector& v) {
    CVector y = CVector::Zero(d);
    for (int n = 1; n < d; ++n) y(n - 1) = weight(n, k) * v(n);
    return y;
  };
  const auto S = [&](const CVector& v) { return solve_h(v, zeta, k); };
  const auto Sa = [&](const CVector& v) { return solve_h_adj(v, zeta, k); };

  const auto pz = [&](const CVector& v) {
    return CVector((e2 * c) * Sa(S(shift(S(v)))));
  };
  const auto pzb = [&](const CVector& v) {
    return CVector((e2 * std::conj(c)) * Sa(shift_adj(Sa(S(v)))));
  };
  const auto pzzb = [&](const CVector& v) {
    return CVector((e2 * std::norm(c)) * Sa(shift_adj(Sa(S(shift(S(v)))))));
  };
  // P^{-1} in closed form: eps^2 (Id - zeta A)(Id - zeta A)^*.
  const auto pinv = [&](const CVector& v) {
    return CVector((eps * eps) * apply_h(apply_h_adj(v, zeta, k), zeta, k));
  };

  const double defect_norm = power_norm(d, [&](const CVector& v) {
    return CVector(pzzb(v) - pzb(pinv(pz(v))));
  });
  const double scale = power_norm(d, pzzb);
  return defect_norm / (1.0 + scale);
}

HarnackFamily harnack_family(Complex z0, int k_min, int k_max, int d,
                             const HarnackOptions& opts) {
  const double az = std::abs(z0);
  if (!(az > 0.0) || !(az < 1.0))
    throw InputError("harnack_family: z0 must lie in the punctured open disc");
  if (k_min < 1 || k_max < k_min) throw InputError("harnack_family: bad k range");
  if (d < 4) throw InputError("harnack_family: dimension too small");

  HarnackFamily fam;
  fam.z0 = z0;
  fam.dim = d;
  const double scale_inv = 1.0 + 2.0 / az;  // 1/eps
  fam.epsilon = 1.0 / scale_inv;
  const Complex c = 2.0 / z0;

  for (int k = k_min; k <= k_max; ++k) {
    HarnackEntry e;
    e.k = k;

    // ||P_k(z0)|| = eps^{-2} ||H_k(2)^{-1}||^2; the e1 column is the lower bound.
    const double hn = resolvent_norm(Complex(2.0, 0.0), k, d);
    e.norm_at_z0 = scale_inv * scale_inv * hn * hn;
    const Resolvent rv = resolvent_vector(k, Complex(2.0, 0.0), d);
    e.lower_bound = scale_inv * scale_inv * rv.x.squaredNorm();

    // P_k(0) = eps^{-2} Id exactly: the solve at zeta = 0 is the identity.
    const CVector probe = solve_h(CVector::Ones(d), Complex(0.0, 0.0), k);
    e.p_zero_scalar = scale_inv * scale_inv * probe(0).real();
    e.p_zero_offdiag = (probe - CVector::Ones(d)).norm();

    // min over the boundary grid of lambda_min(P_k - Id): P_k >= Id there iff
    // ||L_k|| <= 1, i.e. sigma_max(Id - zeta A_k) <= 1/eps.
    e.boundary_margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < opts.boundary_grid; ++j) {
      const double t = 2.0 * kPi * j / opts.boundary_grid;
      const Complex zb(std::cos(t), std::sin(t));
      const Complex zeta = c * zb;
      const double smax = std::sqrt(power_norm(d, [&](const CVector& v) {
        return apply_h(apply_h_adj(v, zeta, k), zeta, k);
      }));
      const double l_norm = fam.epsilon * smax;
      e.boundary_margin = std::min(e.boundary_margin, 1.0 / (l_norm * l_norm) - 1.0);
    }

    if (opts.check_flatness) {
      // Probe points with |2z/z0| < 1 keep the resolvent chain well
      // conditioned; curvature vanishes identically for the family.
      e.flat_margin = 0.0;
      for (int j = 0; j < opts.flat_probes; ++j) {
        const double t = 2.0 * kPi * j / opts.flat_probes + 0.37;
        const Complex z = 0.4 * az * Complex(std::cos(t), std::sin(t));
        e.flat_margin = std::max(e.flat_margin, harnack_flat_margin(k, z0, d, z));
      }
    }
    fam.entries.push_back(e);
  }
  return fam;
}

LimitWitness noninvertible_limit_witness(int d, Complex zeta) {
  if (d < 8) throw InputError("noninvertible_limit_witness: dimension must be >= 8");
  LimitWitness out;
  out.zeta = zeta;
  for (int dim = 8; dim <= d; dim *= 2) {
    out.dims.push_back(dim);
    const double rn = resolvent_norm(zeta, std::nullopt, dim);
    out.sigma_min.push_back(1.0 / rn);
    out.resolvent_norm_sq.push_back(
        resolvent_vector(std::nullopt, zeta, dim).x.squaredNorm());
  }
  const Resolvent rv = resolvent_vector(std::nullopt, zeta, d);
  for (int j = 0; (1 << j) <= d; ++j) {
    const int n = 1 << j;  // 1-based index n = 2^j; component x_n
    out.big_components.push_back(std::abs(rv.x(n - 1)) > 0.5);
  }
  return out;
}

}  // namespace ncpot

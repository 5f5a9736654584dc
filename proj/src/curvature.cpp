// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#include "ncpot/curvature.hpp"

#include <cmath>

#include <Eigen/LU>

namespace ncpot {

namespace {

int common_dim(const std::vector<MatrixPolynomial>& terms) {
  if (terms.empty()) throw InputError("MetricField: empty term list");
  const int d = terms.front().dim();
  for (const auto& t : terms)
    if (t.dim() != d) throw InputError("MetricField: term dimension mismatch");
  return d;
}

// Exact jet of S(z) = sum_i H_i(z)* H_i(z).
MetricField::Jet flat_sum_jet(const std::vector<MatrixPolynomial>& terms, Complex z) {
  const int d = terms.front().dim();
  MetricField::Jet jet{CMatrix::Zero(d, d), CMatrix::Zero(d, d), CMatrix::Zero(d, d),
                       CMatrix::Zero(d, d)};
  for (const auto& h : terms) {
    const CMatrix hv = h.eval(z);
    const CMatrix hd = h.derivative().eval(z);
    jet.p += hv.adjoint() * hv;
    jet.pz += hv.adjoint() * hd;
    jet.pzzb += hd.adjoint() * hd;
  }
  jet.pzb = jet.pz.adjoint();
  jet.p = symmetrize(jet.p);
  jet.pzzb = symmetrize(jet.pzzb);
  return jet;
}

}  // namespace

MetricField MetricField::flat_sum(std::vector<MatrixPolynomial> terms, DiscSpec domain) {
  MetricField f;
  f.dim_ = common_dim(terms);
  f.domain_ = domain;
  f.data_ = FlatSum{std::move(terms)};
  return f;
}

MetricField MetricField::dual_flat_sum(std::vector<MatrixPolynomial> terms,
                                       DiscSpec domain) {
  MetricField f;
  f.dim_ = common_dim(terms);
  f.domain_ = domain;
  f.data_ = DualFlatSum{std::move(terms)};
  return f;
}

MetricField MetricField::constant(const CMatrix& value, DiscSpec domain) {
  MetricField f;
  f.dim_ = static_cast<int>(value.rows());
  if (value.rows() != value.cols() || f.dim_ == 0)
    throw InputError("MetricField: constant must be square");
  f.domain_ = domain;
  f.data_ = Constant{symmetrize(value)};
  return f;
}

MetricField MetricField::direct_sum(std::vector<MetricField> parts) {
  if (parts.empty()) throw InputError("MetricField: empty direct sum");
  MetricField f;
  f.domain_ = parts.front().domain();
  f.dim_ = 0;
  for (const MetricField& p : parts) {
    if (std::abs(p.domain().center - f.domain_.center) > 1e-12 ||
        std::abs(p.domain().radius - f.domain_.radius) > 1e-12)
      throw InputError("MetricField: direct-sum parts must share the domain");
    f.dim_ += p.dim();
  }
  f.data_ = BlockDiag{std::move(parts)};
  return f;
}

CMatrix MetricField::value(Complex z) const {
  return derivatives(z).p;
}

MetricField::Jet MetricField::derivatives(Complex z) const {
  if (!domain_.contains(z, 1e-9))
    throw InputError("MetricField: evaluation point outside the domain");
  const Complex w = domain_.to_local(z);
  const double rinv = 1.0 / domain_.radius;

  if (const auto* c = std::get_if<Constant>(&data_)) {
    const int d = dim_;
    return {c->value, CMatrix::Zero(d, d), CMatrix::Zero(d, d), CMatrix::Zero(d, d)};
  }

  if (const auto* bd = std::get_if<BlockDiag>(&data_)) {
    MetricField::Jet jet{CMatrix::Zero(dim_, dim_), CMatrix::Zero(dim_, dim_),
                         CMatrix::Zero(dim_, dim_), CMatrix::Zero(dim_, dim_)};
    int off = 0;
    for (const MetricField& part : bd->parts) {
      const MetricField::Jet pj = part.derivatives(z);
      const int pd = part.dim();
      jet.p.block(off, off, pd, pd) = pj.p;
      jet.pz.block(off, off, pd, pd) = pj.pz;
      jet.pzb.block(off, off, pd, pd) = pj.pzb;
      jet.pzzb.block(off, off, pd, pd) = pj.pzzb;
      off += pd;
    }
    return jet;
  }

  // The terms live in the local coordinate; chain rule brings in 1/r per
  // holomorphic (or antiholomorphic) derivative.
  if (const auto* fs = std::get_if<FlatSum>(&data_)) {
    MetricField::Jet jet = flat_sum_jet(fs->terms, w);
    jet.pz *= rinv;
    jet.pzb *= rinv;
    jet.pzzb *= rinv * rinv;
    return jet;
  }

  const auto& ds = std::get<DualFlatSum>(data_);
  MetricField::Jet inner = flat_sum_jet(ds.terms, w);
  inner.pz *= rinv;
  inner.pzb *= rinv;
  inner.pzzb *= rinv * rinv;

  // Q = (S^T)^{-1}:  Q_z = -Q (S_z)^T Q,  Q_zb = -Q (S_zb)^T Q,
  // Q_zzb = Q (S_zb)^T Q (S_z)^T Q + Q (S_z)^T Q (S_zb)^T Q - Q (S_zzb)^T Q.
  const CMatrix st = inner.p.transpose();
  Eigen::PartialPivLU<CMatrix> lu(st);
  const double cond_floor = 1e-14 * (1.0 + operator_norm(st));
  if (min_singular(st) <= cond_floor)
    throw DegeneracyError("MetricField: dual inner sum singular at evaluation point");
  const CMatrix q = lu.inverse();
  const CMatrix szt = inner.pz.transpose();
  const CMatrix szbt = inner.pzb.transpose();
  const CMatrix szzbt = inner.pzzb.transpose();

  MetricField::Jet jet;
  jet.p = symmetrize(q);
  jet.pz = -q * szt * q;
  jet.pzb = -q * szbt * q;
  jet.pzzb = q * szbt * q * szt * q + q * szt * q * szbt * q - q * szzbt * q;
  jet.pzzb = symmetrize(jet.pzzb);
  return jet;
}

MetricField MetricField::gauged(const MatrixPolynomial& k) const {
  const auto* fs = std::get_if<FlatSum>(&data_);
  if (fs == nullptr)
    throw InputError("MetricField: gauge transform implemented for FlatSum fields");
  std::vector<MatrixPolynomial> terms;
  terms.reserve(fs->terms.size());
  for (const auto& h : fs->terms) terms.push_back(h * k);
  return flat_sum(std::move(terms), domain_);
}

MetricField::Jet derivatives_exact(const MetricField& field, Complex z) {
  return field.derivatives(z);
}

CurvatureSample defect_from_jet(const MetricField::Jet& jet, Complex z) {
  const double p_norm = operator_norm(jet.p);
  if (min_singular(jet.p) <= 1e-14 * (1.0 + p_norm))
    throw DegeneracyError("curvature_defect: P singular at evaluation point");
  Eigen::PartialPivLU<CMatrix> lu(jet.p);
  const CMatrix cross = jet.pzb * lu.solve(jet.pz);

  CurvatureSample s;
  s.z = z;
  s.defect_neg = jet.pzzb - cross;
  s.defect_neg = symmetrize(s.defect_neg);
  s.defect_pos = -s.defect_neg;
  s.margin_neg = lambda_min(s.defect_neg);
  s.margin_pos = -lambda_max(s.defect_neg);
  s.scale = operator_norm(jet.pzzb) + operator_norm(cross);
  return s;
}

CurvatureSample curvature_defect(const MetricField& field, Complex z) {
  return defect_from_jet(field.derivatives(z), z);
}

CurvatureSample curvature_fd(const MetricField& field, Complex z, double step) {
  const DiscSpec dom = field.domain();
  const double dist = dom.radius - std::abs(z - dom.center);
  if (step <= 0.0) {
    step = std::pow(std::numeric_limits<double>::epsilon(), 0.25) * (1.0 + std::abs(z));
    step = std::min(step, 0.25 * dist);
  }
  if (!(dist >= 2.0 * step))
    throw InputError("curvature_fd: step too large for the distance to the boundary");

  const CMatrix pc = field.value(z);
  const CMatrix pxp = field.value(z + step);
  const CMatrix pxm = field.value(z - step);
  const CMatrix pyp = field.value(z + Complex(0.0, step));
  const CMatrix pym = field.value(z - Complex(0.0, step));

  const Complex i_unit(0.0, 1.0);
  MetricField::Jet jet;
  jet.p = pc;
  const CMatrix px = (pxp - pxm) / (2.0 * step);
  const CMatrix py = (pyp - pym) / (2.0 * step);
  jet.pz = 0.5 * (px - i_unit * py);
  jet.pzb = 0.5 * (px + i_unit * py);
  jet.pzzb = (pxp + pxm + pyp + pym - 4.0 * pc) / (4.0 * step * step);
  return defect_from_jet(jet, z);
}

Classification classify_field(const MetricField& field, std::span<const Complex> grid,
                              double tol) {
  Classification out;
  out.worst_neg = std::numeric_limits<double>::infinity();
  out.worst_pos = std::numeric_limits<double>::infinity();
  for (Complex z : grid) {
    const CurvatureSample s = curvature_defect(field, z);
    const double rel = 1.0 + s.scale;
    if (s.margin_neg / rel < out.worst_neg) {
      out.worst_neg = s.margin_neg / rel;
      out.witness_neg = z;
    }
    if (s.margin_pos / rel < out.worst_pos) {
      out.worst_pos = s.margin_pos / rel;
      out.witness_pos = z;
    }
  }
  const bool neg = out.worst_neg >= -tol;
  const bool pos = out.worst_pos >= -tol;
  out.cls = neg && pos ? CurvatureClass::flat
            : neg      ? CurvatureClass::seminegative
            : pos      ? CurvatureClass::semipositive
                       : CurvatureClass::indefinite;
  return out;
}

double subharmonic_margin(const BoundarySamples& p_samples, const CMatrix& p_center,
                          const VectorPolynomial& phi) {
  double avg = 0.0;
  for (int j = 0; j < p_samples.n(); ++j) {
    const CVector ph = phi.eval(p_samples.local_point(j));
    avg += std::real(Complex(ph.adjoint() * p_samples.value(j) * ph));
  }
  avg /= double(p_samples.n());
  const CVector ph0 = phi.eval(Complex(0.0, 0.0));
  const double center = std::real(Complex(ph0.adjoint() * p_center * ph0));
  return avg - center;
}

CertReport subharmonicity_test(const MetricField& field, const VectorPolynomial& phi,
                               std::span<const DiscSpec> discs, double tol,
                               int quadrature_n) {
  if (phi.dim() != field.dim())
    throw InputError("subharmonicity_test: section dimension mismatch");
  CertReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (const DiscSpec& disc : discs) {
    if (!field.domain().contains_disc(disc))
      throw InputError("subharmonicity_test: disc leaves the domain");
    // phi is evaluated in the disc's local coordinate, so this checks all
    // holomorphic sections of the stated degree on that disc.
    BoundarySamples ps = BoundarySamples::sample(
        disc, quadrature_n, [&](Complex z) { return field.value(z); });
    const double m = subharmonic_margin(ps, field.value(disc.center), phi);
    rep.items.push_back({disc, m});
    if (m < rep.worst_margin) {
      rep.worst_margin = m;
      rep.witness = disc;
      rep.witness_point = disc.center;
    }
  }
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

CertReport log_norm_psh_test(const FlatMetric& p, const FlatMetric& q,
                             const MatrixPolynomial& a, std::span<const DiscSpec> discs,
                             double tol, int quadrature_n) {
  const auto log_norm = [&](Complex z) {
    const CMatrix qs = sqrt_psd_raw(q.value(z));
    const CMatrix pis = inv_sqrt_psd(p.value(z));
    const double nv = operator_norm(qs * a.eval(p.domain().to_local(z)) * pis);
    if (!(nv > 0.0))
      throw DegeneracyError("log_norm_psh_test: homomorphism vanishes on the disc");
    return std::log(nv);
  };

  CertReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (const DiscSpec& disc : discs) {
    if (!p.domain().contains_disc(disc))
      throw InputError("log_norm_psh_test: disc leaves the domain");
    double avg = 0.0;
    for (Complex z : circle_samples(disc, quadrature_n)) avg += log_norm(z);
    avg /= double(quadrature_n);
    const double m = avg - log_norm(disc.center);
    rep.items.push_back({disc, m});
    if (m < rep.worst_margin) {
      rep.worst_margin = m;
      rep.witness = disc;
      rep.witness_point = disc.center;
    }
  }
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

}  // namespace ncpot

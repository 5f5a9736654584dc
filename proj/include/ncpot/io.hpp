// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "ncpot/dirichlet.hpp"
#include "ncpot/meanvalue.hpp"

namespace ncpot::io {

using json = nlohmann::json;

// Matrix schema used repo-wide:
//   {"dim": d, "entries": [[[re,im], ...], ...]}   (row-major)
// hermitian/PSD wrappers add {"kind": "hermitian" | "psd"}.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);
json hermitian_to_json(const HermitianMatrix& m);
HermitianMatrix hermitian_from_json(const json& j);
json psd_to_json(const PsdMatrix& m);
PsdMatrix psd_from_json(const json& j);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json disc_to_json(const DiscSpec& d);
DiscSpec disc_from_json(const json& j);

// {"z0": [re,im], "r": r, "n": n, "values": [matrix, ...]}
json samples_to_json(const BoundarySamples& s);
BoundarySamples samples_from_json(const json& j);

// {"dim": d, "N": N, "coeffs": {"-N": matrix, ..., "N": matrix}}; the
// F_{-n} = F_n^* constraint is validated on load.
json laurent_to_json(const MatrixLaurentPolynomial& f);
MatrixLaurentPolynomial laurent_from_json(const json& j);

// {"dim": d, "N": N, "coeffs": [matrix, ...]}  (degree-ascending)
json poly_to_json(const MatrixPolynomial& h);
MatrixPolynomial poly_from_json(const json& j);

// {"domain": disc, "H": matrix-polynomial}
json flat_metric_to_json(const FlatMetric& fm);
FlatMetric flat_metric_from_json(const json& j);

// {"variant": "flat_sum"|"dual_flat_sum"|"constant",
//  "terms": [poly,...] | "value": matrix, "domain": disc}
json field_to_json(const MetricField& f);
MetricField field_from_json(const json& j);

json cert_report_to_json(const CertReport& r);
json factorization_report_to_json(const FactorizationReport& r);

std::vector<Complex> points_from_json(const json& j);
std::vector<DiscSpec> discs_from_json(const json& j);

json load_file(const std::string& path);
void save_file(const std::string& path, const json& j);

}  // namespace ncpot::io

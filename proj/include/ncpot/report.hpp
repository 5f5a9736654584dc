// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ncpot/circle.hpp"

namespace ncpot {

// Outcome of a curvature-sign or ordering certificate: verdict, worst
// eigenvalue margin, and the witness disc / point realizing it.
struct CertReport {
  bool pass = false;
  double worst_margin = 0.0;
  DiscSpec witness;
  Complex witness_point{0.0, 0.0};
  std::string note;

  struct Item {
    DiscSpec disc;
    double margin = 0.0;
  };
  std::vector<Item> items;
};

}  // namespace ncpot

// Copyright 2026 the ncpot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <ostream>

namespace ncpot {

// Built-in invariant battery for the CLI selftest subcommand: prints one
// "ok"/"FAIL" line per suite, returns true when everything passes.
bool run_selftest(std::uint64_t seed, std::ostream& out);

}  // namespace ncpot

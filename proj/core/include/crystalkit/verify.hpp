#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "crystalkit/report.hpp"

namespace crystalkit {

struct VerifyOptions {
  std::uint64_t seed = 7;
  // Directory of Cayley-table JSON files replacing the built-in catalog of
  // finite scaled inverse semigroups. Missing or empty: error report.
  std::optional<std::string> catalog_dir;
};

// Runs every certificate and property suite, deterministically for the given
// seed, in a fixed order:
//
//   catalog  validation, crystal re-validation, boundary double computation,
//            groupoid restriction certificate, and transversality for every
//            catalog entry;
//   hull     bounded crystal certificates for the three built-in families;
//   kms      equilibrium-condition residuals against truncation allowances;
//   snf      U*A*V = D, unimodularity, divisibility chain, and the
//            2x2 cokernel-order cross-check on random integer matrices;
//   circle   the dimension criterion for module quotients by t and 1-t on
//            pinned and random presentations;
//   dynam    stabilization of the shift-model cokernels in the truncation.
//
// The first failed certificate produces a violation report whose witness
// names the failing object; unreadable or empty catalogs produce an error
// report.
Report verify_suite(const VerifyOptions& options = {});

}  // namespace crystalkit

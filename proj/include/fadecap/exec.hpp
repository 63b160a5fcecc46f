#pragma once

namespace fadecap {

/// Execution policy for the batch layers (sweeps, grids, randomized
/// suites). Parallel runs partition work so that each output element is
/// produced wholly by one thread; both policies therefore yield identical
/// bytes, and Serial is kept as the reference the tests compare against.
enum class Exec {
  Serial,
  Parallel,
};

}  // namespace fadecap

#pragma once

// Execution policy for the trial loops. Parallel kernels use OpenMP over
// independent trials with per-trial RNG streams and reduce in index order, so
// both policies return bit-identical results; Serial is the reference.

namespace symdom {

enum class Exec { Serial, Parallel };

int max_threads();

}  // namespace symdom

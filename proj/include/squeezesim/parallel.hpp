#pragma once

// Execution policy for the data-parallel kernels (sweeps, Wigner grids).
// Serial is the reference path; OpenMP results must match it bit for bit,
// since every output slot is computed independently.

namespace squeezesim {

enum class Execution { Serial, OpenMP };

/// Sets the OpenMP worker count; n <= 0 leaves the runtime default.
void set_thread_count(int n);
int max_threads();

}  // namespace squeezesim

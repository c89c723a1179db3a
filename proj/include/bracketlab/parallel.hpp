#pragma once

namespace blab {

/// Serial is the reference path; Parallel runs the same per-item kernel
/// under OpenMP and must produce identical results.
enum class Exec { Serial, Parallel };

/// Threads OpenMP will use for Exec::Parallel (1 when built without OpenMP).
int parallel_threads();

}  // namespace blab

#pragma once

namespace enkcf {

/// Selects between the OpenMP kernel and its serial reference loop.
/// Both paths run the same per-index body; results agree bit-for-bit
/// except where a kernel reduces across indices.
enum class Execution { serial, parallel };

/// Runs body(i) for i in [0, count). The body must not throw.
template <typename Body>
void for_each_index(Execution exec, int count, Body&& body) {
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) body(i);
  } else {
    for (int i = 0; i < count; ++i) body(i);
  }
}

}  // namespace enkcf

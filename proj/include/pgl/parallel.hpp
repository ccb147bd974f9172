#pragma once

namespace pgl {

// Execution policy for the interpretation-space kernels. `serial` is the
// reference implementation; `parallel` uses OpenMP when compiled in and
// must produce bit-identical results (all reductions are exact minima).
enum class Exec { serial, parallel };

}  // namespace pgl

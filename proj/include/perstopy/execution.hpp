#pragma once

namespace perstopy {

/// Serial runs are the reference; parallel runs must produce identical results.
enum class Execution { Serial, Parallel };

}  // namespace perstopy

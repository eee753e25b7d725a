#pragma once

#include <cstddef>
#include <functional>

namespace tensoreq {

/// Upper bound on worker threads used by per-slice and per-tube loops.
/// Defaults to the hardware concurrency. Values < 1 are clamped to 1.
void set_num_threads(std::size_t n) noexcept;
std::size_t num_threads() noexcept;

/// Calls body(i) for i in [0, count). Iterations must be independent; each
/// writes only its own output so results do not depend on scheduling.
/// Runs inline when `work` (a rough flop estimate) is too small to pay for
/// thread start-up.
void parallel_for(std::size_t count, std::size_t work, const std::function<void(std::size_t)>& body);

}  // namespace tensoreq

#pragma once

#include <functional>

namespace bergsense::detail {

// Number of worker threads for data-parallel sections. Honors the
// BERGMAN_SENSE_THREADS environment variable (values < 1 mean serial).
int verification_threads();

// Runs fn(i) for i in [0, n). Each index is independent; callers store
// results by index and reduce sequentially afterwards, so the outcome does
// not depend on the thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace bergsense::detail

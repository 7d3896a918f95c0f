#pragma once

namespace navrl {

/// Keeps the allocator from returning large training buffers to the OS between
/// steps. Training allocates and frees the same few hundred KB every update;
/// without this each one is a fresh mmap and page-fault storm. No-op off glibc.
void tune_heap_for_training();

}  // namespace navrl

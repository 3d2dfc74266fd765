#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace ulcert {

// Worker cap for all parallel loops. 0 restores the hardware default.
void set_thread_cap(unsigned n);
unsigned thread_cap();

// Number of chunks [lo, hi) is split into. Depends only on the range length,
// never on the thread cap, so per-chunk results can be merged in chunk order
// and every reduction is reproducible across --threads values.
std::size_t chunk_count(std::uint64_t n);

// Runs body(chunk_index, chunk_lo, chunk_hi) over the fixed chunk grid on up
// to thread_cap() workers. body must only touch its own chunk's slot.
void run_chunks(std::uint64_t lo, std::uint64_t hi,
                const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& body);

}  // namespace ulcert

#include "ulcert/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace ulcert {

namespace {
std::atomic<unsigned> g_cap{0};
}

void set_thread_cap(unsigned n) { g_cap.store(n); }

unsigned thread_cap() {
  unsigned c = g_cap.load();
  if (c != 0) return c;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::size_t chunk_count(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t by_size = (n + 1023) / 1024;  // at least 1024 items per chunk
  return static_cast<std::size_t>(std::min<std::uint64_t>(64, by_size));
}

void run_chunks(std::uint64_t lo, std::uint64_t hi,
                const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& body) {
  if (hi <= lo) return;
  std::uint64_t n = hi - lo;
  std::size_t nc = chunk_count(n);
  std::uint64_t base = n / nc, rem = n % nc;  // first rem chunks get one extra
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges(nc);
  std::uint64_t cur = lo;
  for (std::size_t i = 0; i < nc; ++i) {
    std::uint64_t len = base + (i < rem ? 1 : 0);
    ranges[i] = {cur, cur + len};
    cur += len;
  }
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), nc));
  if (workers <= 1) {
    for (std::size_t i = 0; i < nc; ++i) body(i, ranges[i].first, ranges[i].second);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= nc) break;
      body(i, ranges[i].first, ranges[i].second);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 0; t + 1 < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

}  // namespace ulcert

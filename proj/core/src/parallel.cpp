#include "kinetic/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace kinetic {

int max_threads() {
  static int n = [] {
    if (const char* env = std::getenv("KINETIC_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
  }();
  return n;
}

int chunk_count(std::size_t n) {
  if (n == 0) return 0;
  std::size_t c = 64;
  if (n < c) c = n;
  return static_cast<int>(c);
}

void parallel_for_chunked(std::size_t n,
                          const std::function<void(int, std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const int chunks = chunk_count(n);
  auto span = [&](int c, std::size_t& b, std::size_t& e) {
    b = n * static_cast<std::size_t>(c) / chunks;
    e = n * static_cast<std::size_t>(c + 1) / chunks;
  };

  int threads = max_threads();
  if (threads <= 1 || n < 128) {
    for (int c = 0; c < chunks; ++c) {
      std::size_t b, e;
      span(c, b, e);
      if (b < e) body(c, b, e);
    }
    return;
  }

  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int c = next.fetch_add(1);
      if (c >= chunks) return;
      std::size_t b, e;
      span(c, b, e);
      if (b < e) body(c, b, e);
    }
  };
  std::vector<std::thread> pool;
  int spawn = threads < chunks ? threads : chunks;
  pool.reserve(static_cast<std::size_t>(spawn - 1));
  for (int i = 1; i < spawn; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  parallel_for_chunked(n, [&body](int, std::size_t b, std::size_t e) { body(b, e); });
}

}  // namespace kinetic

#include "speq/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace speq {

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  const char* env = std::getenv("SPERNER_EQ_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || v < 0) return hw;
  if (v == 0) return hw;
  return static_cast<int>(std::min<long>(v, 1024));
}

void parallel_chunks(std::int64_t count,
                     const std::function<void(std::int64_t, std::int64_t)>& fn) {
  if (count <= 0) return;
  int workers = worker_count();
  std::int64_t chunk = std::max<std::int64_t>(1, (count + workers - 1) / workers);
  if (workers <= 1 || count <= chunk) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> threads;
  for (std::int64_t begin = 0; begin < count; begin += chunk) {
    std::int64_t end = std::min(count, begin + chunk);
    threads.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace speq

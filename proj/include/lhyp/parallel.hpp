#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace lhyp {

// 0 means "as many as the machine has". LHYP_THREADS, when set, caps the result.
unsigned resolve_workers(unsigned requested);

// Runs body(task, worker) for task in [0, tasks), handing tasks out dynamically.
template <class Body>
void parallel_tasks(std::size_t tasks, unsigned workers, Body&& body) {
  if (workers <= 1 || tasks <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) body(t, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t t; (t = next.fetch_add(1)) < tasks;) body(t, w);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace lhyp

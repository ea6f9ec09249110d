#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace corefkit {

/// 0 means "use the hardware thread count".
inline unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Applies `work` to every item drawn from `produce` on a pool of workers and
/// hands results to `consume` in production order. Output is byte-identical
/// to the single-threaded run for any thread count; in-flight results are
/// bounded, so memory stays constant on arbitrarily long streams.
///
/// produce: () -> std::optional<Item>, called serially.
/// work:    (Item&&, std::size_t seq) -> Result, called concurrently.
/// consume: (Result&&) -> void, called serially in seq order.
template <typename Item, typename Result, typename Produce, typename Work, typename Consume>
void ordered_parallel_map(Produce produce, Work work, Consume consume, unsigned threads) {
  threads = resolve_thread_count(threads);
  if (threads == 1) {
    std::size_t seq = 0;
    while (std::optional<Item> item = produce()) consume(work(std::move(*item), seq++));
    return;
  }

  const std::size_t window = static_cast<std::size_t>(threads) * 4;
  std::mutex in_mutex;
  std::mutex out_mutex;
  std::condition_variable out_cv;
  std::size_t next_seq = 0;
  std::size_t emit_seq = 0;
  std::map<std::size_t, Result> pending;
  std::exception_ptr failure;
  bool failed = false;

  auto fail = [&](std::exception_ptr e) {
    std::lock_guard<std::mutex> lock(out_mutex);
    if (!failed) {
      failed = true;
      failure = e;
    }
    out_cv.notify_all();
  };

  auto worker = [&] {
    for (;;) {
      std::size_t seq;
      Item item;
      {
        std::lock_guard<std::mutex> lock(in_mutex);
        if (failed) return;
        std::optional<Item> next;
        try {
          next = produce();
        } catch (...) {
          fail(std::current_exception());
          return;
        }
        if (!next) return;
        seq = next_seq++;
        item = std::move(*next);
      }
      Result result;
      try {
        result = work(std::move(item), seq);
      } catch (...) {
        fail(std::current_exception());
        return;
      }
      std::unique_lock<std::mutex> lock(out_mutex);
      out_cv.wait(lock, [&] { return failed || seq < emit_seq + window; });
      if (failed) return;
      pending.emplace(seq, std::move(result));
      while (!pending.empty() && pending.begin()->first == emit_seq) {
        Result ready = std::move(pending.begin()->second);
        pending.erase(pending.begin());
        try {
          consume(std::move(ready));
        } catch (...) {
          failed = true;
          failure = std::current_exception();
          out_cv.notify_all();
          return;
        }
        ++emit_seq;
      }
      out_cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

} // namespace corefkit

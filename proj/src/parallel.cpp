#include "mxm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mxm {

namespace {

// Persistent workers; the calling thread participates in every batch.
class Pool {
 public:
  ~Pool() { resize(1); }

  void resize(int threads) {
    threads = std::max(1, threads);
    if (threads == size()) return;
    {
      std::lock_guard lock(mutex_);
      stop_ = true;
    }
    wake_.notify_all();
    for (auto& w : workers_) w.join();
    workers_.clear();
    stop_ = false;
    for (int i = 1; i < threads; ++i) workers_.emplace_back([this] { work(); });
  }

  int size() const { return static_cast<int>(workers_.size()) + 1; }

  void run(std::size_t count, const std::function<void(std::size_t)>& task) {
    if (count == 0) return;
    if (workers_.empty() || count == 1) {
      for (std::size_t i = 0; i < count; ++i) task(i);
      return;
    }
    std::unique_lock batch_lock(batch_mutex_);
    {
      std::lock_guard lock(mutex_);
      task_ = &task;
      count_ = count;
      next_.store(0);
      pending_ = count;
      error_ = nullptr;
      ++generation_;
    }
    wake_.notify_all();
    drain();
    std::unique_lock lock(mutex_);
    done_.wait(lock, [this] { return pending_ == 0 && active_ == 0; });
    task_ = nullptr;
    if (error_) std::rethrow_exception(error_);
  }

 private:
  void drain() {
    for (;;) {
      const std::size_t i = next_.fetch_add(1);
      if (i >= count_.load()) return;
      const auto* task = task_.load();
      try {
        (*task)(i);
      } catch (...) {
        std::lock_guard lock(mutex_);
        if (!error_) error_ = std::current_exception();
      }
      std::lock_guard lock(mutex_);
      if (--pending_ == 0) done_.notify_all();
    }
  }

  void work() {
    std::uint64_t seen = 0;
    for (;;) {
      {
        std::unique_lock lock(mutex_);
        wake_.wait(lock, [&] { return stop_ || (generation_ != seen && task_ != nullptr); });
        if (stop_) return;
        seen = generation_;
        ++active_;
      }
      drain();
      std::lock_guard lock(mutex_);
      if (--active_ == 0) done_.notify_all();
    }
  }

  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::mutex batch_mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  std::atomic<const std::function<void(std::size_t)>*> task_{nullptr};
  std::atomic<std::size_t> count_{0};
  std::atomic<std::size_t> next_{0};
  std::size_t pending_ = 0;
  int active_ = 0;
  std::uint64_t generation_ = 0;
  std::exception_ptr error_;
  bool stop_ = false;
};

Pool& pool() {
  static Pool p;
  return p;
}

thread_local bool in_task = false;

}  // namespace

void set_thread_count(int threads) { pool().resize(threads); }

int thread_count() { return pool().size(); }

void parallel_tasks(std::size_t count, const std::function<void(std::size_t)>& task) {
  // Nested calls run inline on the current worker.
  if (in_task) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  pool().run(count, [&](std::size_t i) {
    in_task = true;
    try {
      task(i);
    } catch (...) {
      in_task = false;
      throw;
    }
    in_task = false;
  });
}

void parallel_range(std::size_t n, std::size_t grain,
                    const std::function<void(std::size_t, std::size_t)>& body) {
  grain = std::max<std::size_t>(grain, 1);
  const std::size_t chunks = (n + grain - 1) / grain;
  parallel_tasks(chunks, [&](std::size_t c) {
    const std::size_t begin = c * grain;
    body(begin, std::min(n, begin + grain));
  });
}

double reduce_sum(std::size_t n, std::size_t grain,
                  const std::function<double(std::size_t, std::size_t)>& body) {
  grain = std::max<std::size_t>(grain, 1);
  const std::size_t chunks = (n + grain - 1) / grain;
  std::vector<double> partial(chunks, 0.0);
  parallel_tasks(chunks, [&](std::size_t c) {
    const std::size_t begin = c * grain;
    partial[c] = body(begin, std::min(n, begin + grain));
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace mxm

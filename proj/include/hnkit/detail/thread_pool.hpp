#pragma once

#include <condition_variable>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hnkit::detail {

/// Worker count: HNKIT_THREADS caps internal parallelism; unset or 0 means
/// one worker per hardware thread.
inline int default_thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("HNKIT_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && cap < hw) hw = static_cast<int>(cap);
  }
  return hw;
}

/// Minimal batch-synchronous pool.  parallel_for(n, f) runs f(0..n-1) and
/// blocks until all are done; the caller is responsible for making results
/// order-independent (workers write to preassigned slots).
class ThreadPool {
 public:
  static ThreadPool& global() {
    static ThreadPool pool(default_thread_count());
    return pool;
  }

  explicit ThreadPool(int threads) {
    for (int i = 1; i < threads; ++i) {
      workers_.emplace_back([this] { worker(); });
    }
  }

  ~ThreadPool() {
    {
      std::lock_guard<std::mutex> lk(m_);
      stop_ = true;
    }
    cv_.notify_all();
    for (std::thread& t : workers_) t.join();
  }

  int size() const { return static_cast<int>(workers_.size()) + 1; }

  void parallel_for(int n, const std::function<void(int)>& f) {
    if (workers_.empty() || n <= 1) {
      for (int i = 0; i < n; ++i) f(i);
      return;
    }
    std::unique_lock<std::mutex> lk(m_);
    job_ = &f;
    count_ = n;
    next_ = 0;
    remaining_ = n;
    ++generation_;
    cv_.notify_all();
    // The calling thread joins the work.
    drain(lk);
    done_cv_.wait(lk, [&] { return remaining_ == 0; });
    job_ = nullptr;
  }

 private:
  void drain(std::unique_lock<std::mutex>& lk) {
    while (next_ < count_) {
      const int i = next_++;
      lk.unlock();
      (*job_)(i);
      lk.lock();
      --remaining_;
    }
    if (remaining_ == 0) done_cv_.notify_all();
  }

  void worker() {
    std::unique_lock<std::mutex> lk(m_);
    std::uint64_t seen = 0;
    for (;;) {
      cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      if (job_ != nullptr) drain(lk);
    }
  }

  std::vector<std::thread> workers_;
  std::mutex m_;
  std::condition_variable cv_, done_cv_;
  const std::function<void(int)>* job_ = nullptr;
  int count_ = 0;
  int next_ = 0;
  int remaining_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

}  // namespace hnkit::detail

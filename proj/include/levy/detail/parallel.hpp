#pragma once

// Helpers for OpenMP loops: exceptions must not escape a parallel region.

#include <exception>
#include <mutex>

namespace levy::detail {

class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!first_) first_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::mutex         mutex_;
  std::exception_ptr first_;
};

inline long as_loop_bound(std::size_t n) { return static_cast<long>(n); }

}  // namespace levy::detail

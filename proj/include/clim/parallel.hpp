#ifndef CLIM_PARALLEL_HPP
#define CLIM_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace clim
{

/// Worker count from CLIM_THREADS, else the hardware concurrency.
int thread_count();

/// Runs f(i) for i in [0, n) on thread_count() workers. Callers write results
/// into slot i, so output order never depends on scheduling. The exception of
/// the lowest failing index is rethrown.
template <class F>
void parallel_for(std::size_t n, F &&f)
{
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  std::vector<std::exception_ptr> errors(n);
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < n; ++i)
      try
      {
        f(i);
      }
      catch (...)
      {
        errors[i] = std::current_exception();
      }
  }
  else
  {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++)
          try
          {
            f(i);
          }
          catch (...)
          {
            errors[i] = std::current_exception();
          }
      });
    for (auto &t : pool)
      t.join();
  }
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace clim

#endif

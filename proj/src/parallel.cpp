#include "leja/parallel.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace leja
{

namespace
{
std::size_t default_threads()
{
  if (const char* env = std::getenv("LEJA_THREADS"))
  {
    try
    {
      const long n = std::stol(env);
      if (n > 0)
        return static_cast<std::size_t>(n);
    }
    catch (const std::exception&)
    {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<std::size_t>& threads_setting()
{
  static std::atomic<std::size_t> n{default_threads()};
  return n;
}
} // namespace
//-----------------------------------------------------------------------------
std::size_t thread_count() { return threads_setting().load(); }
//-----------------------------------------------------------------------------
void set_thread_count(std::size_t n) { threads_setting().store(std::max<std::size_t>(1, n)); }
//-----------------------------------------------------------------------------
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body)
{
  const std::size_t workers = std::min(thread_count(), count);
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w)
  {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back(
        [&, begin, end]
        {
          try
          {
            for (std::size_t i = begin; i < end; ++i)
              body(i);
          }
          catch (...)
          {
            std::lock_guard lock(failure_mutex);
            if (!failure)
              failure = std::current_exception();
          }
        });
  }
  pool.clear();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace leja

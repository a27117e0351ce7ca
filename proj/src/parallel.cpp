#include "clim/parallel.hpp"

#include <cstdlib>
#include <string>

namespace clim
{

int thread_count()
{
  if (const char *env = std::getenv("CLIM_THREADS"))
  {
    try
    {
      const int n = std::stoi(env);
      if (n >= 1)
        return n;
    }
    catch (const std::exception &)
    {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace clim

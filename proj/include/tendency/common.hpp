#ifndef TENDENCY_COMMON_HPP
#define TENDENCY_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace tendency {

/// Raised for malformed inputs: bad files, out-of-range values, contract
/// violations on user-supplied data. The CLI maps it to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

enum class LogLevel { error = 0, info = 1, debug = 2 };

/// Current level, from TENDENCY_LOG={error|info|debug} (default error).
LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

/// Caps the number of worker threads used by parallel loops.
/// 0 restores the default (hardware concurrency). Results never depend
/// on the cap; only wall time does.
void set_thread_cap(unsigned cap);
unsigned thread_cap();

/// Runs fn(begin, end) over fixed-size chunks of [0, n). Chunk boundaries
/// are a function of n alone, so floating-point work partitioned per chunk
/// is reproducible at any thread count. Chunks must write disjoint state.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                  std::size_t chunk = 1024);

}  // namespace tendency

#endif

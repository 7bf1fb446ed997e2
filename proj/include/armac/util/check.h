#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace armac {

// Raised when an exact solver would have to enumerate more histories than
// the configured cap allows.
class EnumerationCapError : public std::runtime_error {
 public:
  explicit EnumerationCapError(const std::string& what)
      : std::runtime_error(what) {}
};

// Raised on malformed configs, unparseable files and other user-facing
// input errors.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

namespace internal {
[[noreturn]] inline void check_failed(const char* expr, const char* file,
                                      int line, const std::string& msg) {
  std::ostringstream os;
  os << "check failed: " << expr << " at " << file << ":" << line;
  if (!msg.empty()) os << " (" << msg << ")";
  throw std::logic_error(os.str());
}
}  // namespace internal

// Contract checks stay enabled in release builds; they guard API misuse,
// not hot inner loops.
#define ARMAC_CHECK(expr)                                              \
  do {                                                                 \
    if (!(expr))                                                       \
      ::armac::internal::check_failed(#expr, __FILE__, __LINE__, ""); \
  } while (0)

#define ARMAC_CHECK_MSG(expr, msg)                                       \
  do {                                                                   \
    if (!(expr))                                                         \
      ::armac::internal::check_failed(#expr, __FILE__, __LINE__, (msg)); \
  } while (0)

}  // namespace armac

#pragma once

#include <stdexcept>
#include <string>

namespace tiltlab {

// Malformed input that never reaches the math: unparsable rationals, bad
// JSON shape.  CLI maps these to exit code 1.
struct usage_error : std::runtime_error {
  explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

// Precondition/domain violations: bad user input, out-of-range parameters.
// CLI maps these to exit code 2.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal contracts (oracle disagreement, certification failure).
// CLI maps these to exit code 3.
struct internal_error : std::runtime_error {
  explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw domain_error(what);
}

inline void invariant(bool cond, const std::string& what) {
  if (!cond) throw internal_error(what);
}

}  // namespace tiltlab

#pragma once

#include <stdexcept>
#include <string>

namespace kdescent {

/* Invalid input data (bad dimensions, non-commuting faces, schema errors).
 * `location` pins the offending degree / vertex / edge for diagnostics. */
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string location, const std::string& message)
      : std::runtime_error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

}  // namespace kdescent

#pragma once

#include <stdexcept>
#include <string>

namespace synthpara {

// Runtime failure: bad input data, I/O, capacity exhaustion.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration value outside its documented domain. Thrown by the
// validate() helpers before any work starts.
class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace synthpara

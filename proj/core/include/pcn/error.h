#pragma once

#include <stdexcept>
#include <string>

namespace pcn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid graph construction or lookup of an unknown vertex/arc.
class GraphError : public Error {
 public:
  using Error::Error;
};

// Malformed snapshot, fee table, or CSV input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A fee lookup that a tabulated fee map does not define.
class FeeLookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcn

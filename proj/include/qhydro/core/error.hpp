#pragma once

#include <stdexcept>
#include <string>

namespace qhydro {

/// Bad input: violated precondition, malformed field, unsupported boundary.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical run that cannot continue (NaN, norm drift, singular system).
class NumericAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace detail
}  // namespace qhydro

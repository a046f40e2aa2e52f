#ifndef PROXYSHAP_ERRORS_HPP
#define PROXYSHAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace proxyshap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A brute-force routine was asked to enumerate more than its configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation contract (overlapping sets, bad index
// parameters, budget larger than the coalition space, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A table-backed game was queried on a coalition it never recorded.
class MissingCoalitionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace proxyshap

#endif  // PROXYSHAP_ERRORS_HPP

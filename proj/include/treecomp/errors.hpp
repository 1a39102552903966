#ifndef TREECOMP_ERRORS_HPP_
#define TREECOMP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace treecomp {

// Malformed instance, bad arguments, or a violated operation precondition.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size cap (vertices, support, grid points, sets) was exceeded.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A zero-error or validity certificate could not be issued.
class CertificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace treecomp

#endif  // TREECOMP_ERRORS_HPP_
